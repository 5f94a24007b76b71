// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "temporalex/agent.hpp"

namespace temporalex {

/// Length of the longest common subsequence of two code-point sequences.
std::size_t lcs_length(std::u32string_view a, std::u32string_view b);

/// Character-level ROUGE-L F1 over code points, computed as
/// 2*LCS / (|pred| + |gold|); 0 when either side is empty.
double rouge_l_char(std::string_view pred, std::string_view gold);

enum class ScoreMode { Train, Eval };

/// Train: 1 iff ROUGE-L >= threshold. Eval: the raw ROUGE-L.
double score_lar(std::string_view pred, std::string_view gold, ScoreMode mode,
                 double threshold = 0.95);

/// Splits an answer on , ; 、 ， ； into trimmed, non-empty labels.
std::vector<std::string> split_labels(std::string_view answer);

/// Case-folds and strips the longest matching suffix.
std::string normalize_charge(std::string_view label, const std::vector<std::string>& suffixes);

/// 1 iff the suffix-normalized label sets are equal.
int score_ccp(std::string_view pred, std::string_view gold,
              const std::vector<std::string>& suffixes);

/// 1 iff trimmed, case-folded strings match. When the gold answer is a run
/// of option letters (e.g. "ABCD") the letters are compared as sets.
int score_exact(std::string_view pred, std::string_view gold);

/// Unit aliases, e.g. {"个月", "months"}; matched longest first.
using UnitTable = std::vector<std::pair<std::string, std::string>>;
UnitTable default_unit_table();

/// "12个月" and "12 Months" both become "12 months".
std::string normalize_term(std::string_view text, const UnitTable& units);
int score_ptp(std::string_view pred, std::string_view gold, const UnitTable& units);

struct JudgeScores {
  double answer = 0.0;
  double basis = 0.0;
};

class Judge {
 public:
  virtual ~Judge() = default;
  /// Both scores in [0, 1]. Throws on backend failure.
  virtual JudgeScores judge(const BenchmarkItem& item, std::string_view answer) const = 0;
};

/// Offline judge: each score is the fraction of the item's answer_phrases
/// (basis_phrases) contained in the normalized answer. With no phrases
/// configured the gold answer itself is the single phrase.
class PhraseJudge final : public Judge {
 public:
  JudgeScores judge(const BenchmarkItem& item, std::string_view answer) const override;
};

/// Returns the same scores for every item.
class FixedJudge final : public Judge {
 public:
  explicit FixedJudge(JudgeScores scores) : scores_(scores) {}
  JudgeScores judge(const BenchmarkItem&, std::string_view) const override { return scores_; }

 private:
  JudgeScores scores_;
};

/// Train: 1 iff both scores reach `cut`. Eval: mean of the two.
double score_lcs(const JudgeScores& scores, ScoreMode mode, double cut = 0.5);

struct ScoringConfig {
  double lar_threshold = 0.95;
  double judge_cut = 0.5;
  std::vector<std::string> ccp_suffixes = {"罪"};
  UnitTable units = default_unit_table();
};

struct ItemScore {
  std::string id;
  TaskKind task = TaskKind::KQA;
  bool format_valid = false;
  /// Binary training reward.
  double reward = 0.0;
  /// Evaluation metric in [0, 1]; nullopt when the item could not be scored.
  std::optional<double> metric;
  std::string diagnostic;
};

/// Scores one trajectory. Format-invalid trajectories get reward 0 and
/// metric 0. A failing judge leaves the item unscored.
ItemScore score_item(const Trajectory& trajectory, const BenchmarkItem& item,
                     const Judge& judge, const ScoringConfig& config = {});

/// The binary reward: 0 unless the format is valid, then the task score.
double reward(const Trajectory& trajectory, const BenchmarkItem& item, const Judge& judge,
              const ScoringConfig& config = {});

struct TaskAggregate {
  std::size_t count = 0;
  std::size_t scored = 0;
  double reward_mean = 0.0;
  double metric_mean = 0.0;
};

struct ScoreReport {
  std::vector<ItemScore> items;
  std::map<TaskKind, TaskAggregate> tasks;
  /// Unweighted mean of per-task metric means; nullopt for an empty run.
  std::optional<double> average;
};

/// Pairs trajectories with items by id. Throws std::invalid_argument on a
/// missing, duplicate or unknown id.
ScoreReport evaluate_run(const std::vector<Trajectory>& trajectories,
                         const std::vector<BenchmarkItem>& items, const Judge& judge,
                         const ScoringConfig& config = {});

/// Columns LAR LCS KQA LAP CCP PTP LCA (OOD_MC when present) and Avg, in
/// percent with two decimals; "-" for tasks absent from the run.
std::string format_report_table(const ScoreReport& report);
nlohmann::json to_json(const ScoreReport& report);

}  // namespace temporalex
