// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include "temporalex/scoring.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "temporalex/text.hpp"

namespace temporalex {

std::size_t lcs_length(std::u32string_view a, std::u32string_view b) {
  if (a.empty() || b.empty()) return 0;
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (char32_t ca : a) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = ca == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

double rouge_l_char(std::string_view pred, std::string_view gold) {
  const auto p = decode_utf8(pred);
  const auto g = decode_utf8(gold);
  if (p.empty() || g.empty()) return 0.0;
  const std::size_t lcs = lcs_length(p, g);
  if (lcs == 0) return 0.0;
  // 2PR/(P+R) with P = lcs/|p| and R = lcs/|g| simplifies to this; the
  // single division keeps threshold comparisons exact.
  return 2.0 * static_cast<double>(lcs) / static_cast<double>(p.size() + g.size());
}

double score_lar(std::string_view pred, std::string_view gold, ScoreMode mode,
                 double threshold) {
  const double r = rouge_l_char(pred, gold);
  if (mode == ScoreMode::Eval) return r;
  return r >= threshold ? 1.0 : 0.0;
}

std::vector<std::string> split_labels(std::string_view answer) {
  static const std::set<char32_t> kDelims = {U',', U';', U'、', U'，', U'；'};
  std::vector<std::string> out;
  std::u32string current;
  auto flush = [&] {
    auto label = trim(encode_utf8(current));
    if (!label.empty()) out.push_back(std::move(label));
    current.clear();
  };
  for (char32_t cp : decode_utf8(answer)) {
    if (kDelims.count(cp)) {
      flush();
    } else {
      current.push_back(cp);
    }
  }
  flush();
  return out;
}

std::string normalize_charge(std::string_view label, const std::vector<std::string>& suffixes) {
  std::string s = normalize_text(label);
  std::size_t best = 0;
  for (const auto& suffix : suffixes) {
    const std::string suf = normalize_text(suffix);
    if (!suf.empty() && suf.size() < s.size() && s.ends_with(suf) && suf.size() > best) {
      best = suf.size();
    }
  }
  return trim(s.substr(0, s.size() - best));
}

int score_ccp(std::string_view pred, std::string_view gold,
              const std::vector<std::string>& suffixes) {
  std::set<std::string> p, g;
  for (const auto& l : split_labels(pred)) p.insert(normalize_charge(l, suffixes));
  for (const auto& l : split_labels(gold)) g.insert(normalize_charge(l, suffixes));
  return p == g ? 1 : 0;
}

namespace {

bool is_option_letters(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

}  // namespace

int score_exact(std::string_view pred, std::string_view gold) {
  const std::string g = trim(gold);
  if (is_option_letters(g)) {
    std::string letters;
    for (char c : trim(pred)) {
      if (c == ' ' || c == ',' || c == ';') continue;
      letters.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    if (!is_option_letters(letters)) return 0;
    return std::set<char>(letters.begin(), letters.end()) == std::set<char>(g.begin(), g.end())
               ? 1
               : 0;
  }
  return fold_case(trim(pred)) == fold_case(g) ? 1 : 0;
}

UnitTable default_unit_table() {
  return {
      {"个月", "months"}, {"months", "months"}, {"month", "months"}, {"月", "months"},
      {"年", "years"},    {"years", "years"},   {"year", "years"},   {"天", "days"},
      {"日", "days"},     {"days", "days"},     {"day", "days"},
  };
}

std::string normalize_term(std::string_view text, const UnitTable& units) {
  auto sorted = units;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.first.size() > b.first.size();
  });
  const std::string s = fold_case(trim(text));
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    bool replaced = false;
    for (const auto& [alias, canonical] : sorted) {
      const std::string a = fold_case(alias);
      if (!a.empty() && s.compare(i, a.size(), a) == 0) {
        out += " " + canonical + " ";
        i += a.size();
        replaced = true;
        break;
      }
    }
    if (!replaced) out.push_back(s[i++]);
  }
  return normalize_text(out);
}

int score_ptp(std::string_view pred, std::string_view gold, const UnitTable& units) {
  return normalize_term(pred, units) == normalize_term(gold, units) ? 1 : 0;
}

JudgeScores PhraseJudge::judge(const BenchmarkItem& item, std::string_view answer) const {
  const std::string a = normalize_text(answer);
  auto fraction = [&](const std::vector<std::string>& phrases) {
    const std::vector<std::string> use = phrases.empty() ? std::vector{item.gold} : phrases;
    std::size_t hit = 0;
    for (const auto& p : use) {
      const std::string n = normalize_text(p);
      if (!n.empty() && a.find(n) != std::string::npos) ++hit;
    }
    return static_cast<double>(hit) / static_cast<double>(use.size());
  };
  return {fraction(item.answer_phrases), fraction(item.basis_phrases)};
}

double score_lcs(const JudgeScores& scores, ScoreMode mode, double cut) {
  if (mode == ScoreMode::Eval) return (scores.answer + scores.basis) / 2.0;
  return scores.answer >= cut && scores.basis >= cut ? 1.0 : 0.0;
}

ItemScore score_item(const Trajectory& trajectory, const BenchmarkItem& item,
                     const Judge& judge, const ScoringConfig& config) {
  ItemScore s;
  s.id = item.id;
  s.task = item.task;
  s.format_valid = validate_format(trajectory);
  if (!s.format_valid) {
    s.metric = 0.0;
    s.diagnostic = trajectory.diagnosis
                       ? std::string(format_error_name(trajectory.diagnosis->error))
                       : std::string("format invalid (") +
                             std::string(termination_name(trajectory.termination)) + ")";
    return s;
  }
  const std::string answer = extract_answer(trajectory).value_or("");
  switch (item.task) {
    case TaskKind::LAR:
      s.reward = score_lar(answer, item.gold, ScoreMode::Train, config.lar_threshold);
      s.metric = score_lar(answer, item.gold, ScoreMode::Eval);
      break;
    case TaskKind::CCP:
      s.reward = score_ccp(answer, item.gold, config.ccp_suffixes);
      s.metric = s.reward;
      break;
    case TaskKind::PTP:
      s.reward = score_ptp(answer, item.gold, config.units);
      s.metric = s.reward;
      break;
    case TaskKind::LCS:
      try {
        const auto j = judge.judge(item, answer);
        if (!(j.answer >= 0.0 && j.answer <= 1.0 && j.basis >= 0.0 && j.basis <= 1.0)) {
          throw std::out_of_range("judge scores outside [0, 1]");
        }
        s.reward = score_lcs(j, ScoreMode::Train, config.judge_cut);
        s.metric = score_lcs(j, ScoreMode::Eval, config.judge_cut);
      } catch (const std::exception& e) {
        s.reward = 0.0;
        s.metric.reset();
        s.diagnostic = std::string("unscored: judge failed: ") + e.what();
      }
      break;
    default:
      s.reward = score_exact(answer, item.gold);
      s.metric = s.reward;
      break;
  }
  return s;
}

double reward(const Trajectory& trajectory, const BenchmarkItem& item, const Judge& judge,
              const ScoringConfig& config) {
  return score_item(trajectory, item, judge, config).reward;
}

ScoreReport evaluate_run(const std::vector<Trajectory>& trajectories,
                         const std::vector<BenchmarkItem>& items, const Judge& judge,
                         const ScoringConfig& config) {
  std::map<std::string, const Trajectory*> by_id;
  for (const auto& t : trajectories) {
    if (!by_id.emplace(t.id, &t).second) {
      throw std::invalid_argument("duplicate trajectory id '" + t.id + "'");
    }
  }
  std::set<std::string> item_ids;
  for (const auto& item : items) {
    if (!item_ids.insert(item.id).second) {
      throw std::invalid_argument("duplicate item id '" + item.id + "'");
    }
    if (!by_id.count(item.id)) {
      throw std::invalid_argument("no trajectory for item '" + item.id + "'");
    }
  }
  for (const auto& [id, t] : by_id) {
    if (!item_ids.count(id)) throw std::invalid_argument("trajectory '" + id + "' has no item");
  }

  ScoreReport report;
  std::map<TaskKind, std::pair<double, double>> sums;
  for (const auto& item : items) {
    auto s = score_item(*by_id[item.id], item, judge, config);
    auto& agg = report.tasks[item.task];
    ++agg.count;
    auto& [reward_sum, metric_sum] = sums[item.task];
    reward_sum += s.reward;
    if (s.metric) {
      ++agg.scored;
      metric_sum += *s.metric;
    }
    report.items.push_back(std::move(s));
  }
  double total = 0.0;
  for (auto& [task, agg] : report.tasks) {
    agg.reward_mean = sums[task].first / static_cast<double>(agg.count);
    agg.metric_mean = agg.scored ? sums[task].second / static_cast<double>(agg.scored) : 0.0;
    total += agg.metric_mean;
  }
  if (!report.tasks.empty()) total /= static_cast<double>(report.tasks.size());
  if (!report.tasks.empty()) report.average = total;
  return report;
}

std::string format_report_table(const ScoreReport& report) {
  std::vector<TaskKind> columns = {TaskKind::LAR, TaskKind::LCS, TaskKind::KQA, TaskKind::LAP,
                                   TaskKind::CCP, TaskKind::PTP, TaskKind::LCA};
  if (report.tasks.count(TaskKind::OOD_MC)) columns.push_back(TaskKind::OOD_MC);

  auto cell = [](std::optional<double> v) {
    if (!v) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *v * 100.0);
    return std::string(buf);
  };
  std::ostringstream header, row;
  for (auto t : columns) {
    header << std::string(task_name(t)) << "\t";
    auto it = report.tasks.find(t);
    row << cell(it == report.tasks.end() ? std::nullopt
                                         : std::optional<double>(it->second.metric_mean))
        << "\t";
  }
  header << "Avg";
  row << cell(report.average);
  return header.str() + "\n" + row.str() + "\n";
}

nlohmann::json to_json(const ScoreReport& report) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& s : report.items) {
    items.push_back({{"id", s.id},
                     {"task", task_name(s.task)},
                     {"format_valid", s.format_valid},
                     {"reward", s.reward},
                     {"metric", s.metric ? nlohmann::json(*s.metric) : nlohmann::json()},
                     {"diagnostic", s.diagnostic}});
  }
  nlohmann::json tasks = nlohmann::json::object();
  for (const auto& [t, agg] : report.tasks) {
    tasks[std::string(task_name(t))] = {{"count", agg.count},
                                        {"scored", agg.scored},
                                        {"reward_mean", agg.reward_mean},
                                        {"metric_mean", agg.metric_mean}};
  }
  return {{"items", std::move(items)},
          {"tasks", std::move(tasks)},
          {"average", report.average ? nlohmann::json(*report.average) : nlohmann::json()}};
}

}  // namespace temporalex
