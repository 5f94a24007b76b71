// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "temporalex/date.hpp"
#include "temporalex/tools.hpp"

namespace temporalex {

enum class TaskKind { LAR, LCS, KQA, LAP, CCP, PTP, LCA, OOD_MC };

std::string_view task_name(TaskKind kind);
/// Case-insensitive; nullopt for unknown names.
std::optional<TaskKind> parse_task(std::string_view name);

struct BenchmarkItem {
  std::string id;
  TaskKind task = TaskKind::KQA;
  std::string question;
  /// Year or date the legal events happened in, e.g. "2010".
  std::optional<std::string> temporal_context;
  std::string gold;
  /// Multiple-choice options keyed by letter.
  std::map<std::string, std::string> options;
  /// Phrases the stub judge looks for (LCS only).
  std::vector<std::string> answer_phrases;
  std::vector<std::string> basis_phrases;

  friend bool operator==(const BenchmarkItem&, const BenchmarkItem&) = default;
};

struct PlanAction {
  std::string text;
  friend bool operator==(const PlanAction&, const PlanAction&) = default;
};
struct ToolCallAction {
  ToolRequest request;
  friend bool operator==(const ToolCallAction&, const ToolCallAction&) = default;
};
struct AnswerAction {
  std::string text;
  friend bool operator==(const AnswerAction&, const AnswerAction&) = default;
};

using Action = std::variant<PlanAction, ToolCallAction, AnswerAction>;

enum class ActionKind { Plan, ToolCall, Answer };
ActionKind kind_of(const Action& action);
std::string_view action_name(ActionKind kind);

/// One agent round. When the round carries a plan next to a tool call or
/// answer, the plan text lives in `plan`; a plan-only round stores it in
/// `action`.
struct Step {
  std::string think;
  std::optional<std::string> plan;
  Action action;
  std::optional<std::string> tool_response;

  friend bool operator==(const Step&, const Step&) = default;
};

enum class FormatError {
  MissingThink,
  EmptyThink,
  UnbalancedTags,
  NestedTags,
  TextOutsideTags,
  MissingFirstRoundPlan,
  MissingAction,
  UnexpectedTag,
  MalformedToolRequest,
  ResponseTooLong,
};

std::string_view format_error_name(FormatError e);

struct FormatDiagnosis {
  FormatError error;
  std::string detail;

  friend bool operator==(const FormatDiagnosis&, const FormatDiagnosis&) = default;
};

using ParseResult = std::variant<Step, FormatDiagnosis>;

/// Grammar (whitespace only between blocks):
///   round 0:  think plan [tool_call]
///   later:    think [plan] (tool_call | answer)  |  think plan
/// Checks run in order: tag balance, nesting, stray text, then grammar;
/// the first failing check is reported.
ParseResult parse_agent_output(std::string_view text, std::size_t round_index);

/// Inverse of parse_agent_output for well-formed steps. The tool response
/// is not part of the agent's output and is not serialized.
std::string serialize_step(const Step& step);

enum class Termination { InProgress, Answered, MaxTurns, MalformedOutput };
std::string_view termination_name(Termination t);

struct Trajectory {
  std::string id;
  std::string system_prompt;
  std::string query;
  std::optional<std::string> temporal_context;
  std::vector<Step> steps;
  std::optional<double> reward;
  Termination termination = Termination::InProgress;
  /// The rejected policy output when termination is MalformedOutput.
  std::optional<std::string> malformed_output;
  std::optional<FormatDiagnosis> diagnosis;
};

struct RolloutLimits {
  std::size_t max_turns = 15;
  /// Measured in code points.
  std::size_t max_context_length = 32767;
  std::size_t max_response_length = 28671;

  /// Throws std::invalid_argument when a limit is zero.
  void validate() const;
};

inline constexpr std::string_view kTruncationMarker = "[earlier tool response truncated]";

/// System prompt, question (with options and temporal context) and every
/// step with its tag wrappers. Above max_context_length, tool responses
/// are replaced by kTruncationMarker oldest first.
std::string render_state(const Trajectory& prefix, const RolloutLimits& limits);

/// The question block as the agent sees it.
std::string render_question(const BenchmarkItem& item);

/// True iff every step parses under its round's grammar, round 0 has a
/// plan, and a single Answer ends the trajectory.
bool validate_format(const Trajectory& trajectory);

/// Trimmed text of the terminal answer, if any.
std::optional<std::string> extract_answer(const Trajectory& trajectory);

struct PolicyContext {
  const BenchmarkItem& item;
  const Trajectory& trajectory;
  const std::string& state;
  std::size_t round;
};

class Policy {
 public:
  virtual ~Policy() = default;
  /// One agent output for the rendered state. Throws on backend failure.
  virtual std::string generate(const PolicyContext& context) const = 0;
};

class RolloutError : public std::runtime_error {
 public:
  RolloutError(const std::string& message, Trajectory partial);
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// Prompt with a "{current_date}" placeholder.
std::string default_system_prompt_template();
std::string make_system_prompt(std::string_view prompt_template, Date today);

struct RolloutOptions {
  RolloutLimits limits;
  std::string system_prompt = make_system_prompt(default_system_prompt_template(),
                                                 *Date::from_ymd(2025, 1, 1));
};

/// render_state -> policy -> parse -> dispatch until an answer, a malformed
/// output, or max_turns. Tool errors become tool_response text.
Trajectory run_rollout(const BenchmarkItem& item, const Policy& policy,
                       const ToolRegistry& tools, const RolloutOptions& options);

struct ToolQueryCount {
  std::size_t total = 0;
  std::size_t temporal = 0;

  friend bool operator==(const ToolQueryCount&, const ToolQueryCount&) = default;
};

struct TemporalQueryCounts {
  ToolQueryCount web_search;
  ToolQueryCount rag_retrieve;

  friend bool operator==(const TemporalQueryCounts&, const TemporalQueryCounts&) = default;
};

/// A four-digit year in 1900-2099 or a full date (YYYY-MM-DD and the
/// '/', '.' and 年月日 variants).
bool is_temporal_query(std::string_view query);

TemporalQueryCounts count_temporal_queries(const std::vector<Trajectory>& trajectories);

nlohmann::json to_json(const Step& step);
nlohmann::json to_json(const Trajectory& trajectory);
Trajectory trajectory_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BenchmarkItem& item);
BenchmarkItem item_from_json(const nlohmann::json& j);

/// One item object per line; blank lines skipped.
std::vector<BenchmarkItem> read_items(std::istream& in);
std::vector<BenchmarkItem> read_items_file(const std::filesystem::path& path);

std::vector<Trajectory> read_trajectories_file(const std::filesystem::path& path);
void write_trajectories_file(const std::filesystem::path& path,
                             const std::vector<Trajectory>& trajectories);

}  // namespace temporalex
