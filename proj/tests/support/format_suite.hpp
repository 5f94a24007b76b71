// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "temporalex/agent.hpp"
#include "temporalex/policies.hpp"

namespace temporalex::testing {

/// A scripted policy run and its hand-assigned format label. Every case that
/// reaches an answer gives the correct one, so only the format decides the
/// reward.
struct FormatCase {
  std::string name;
  std::vector<std::string> outputs;
  bool valid;
};

inline BenchmarkItem format_suite_item() {
  BenchmarkItem item;
  item.id = "format-suite";
  item.task = TaskKind::KQA;
  item.question = "Which option states the 2010 probation rule?";
  item.options = {{"A", "no reporting"}, {"B", "monthly fines"}, {"C", "report to the authority"}};
  item.temporal_context = "2010";
  item.gold = "C";
  return item;
}

inline std::vector<FormatCase> format_suite() {
  const std::string think = "<think>The rule depends on the 2010 version.</think>";
  const std::string plan = "<plan>Retrieve Article 74 as in force in 2010, then answer.</plan>";
  const std::string call =
      R"(<tool_call>{"name": "rag_retrieve", "arguments": {"query": ["2010 Article 74 probation"]}}</tool_call>)";
  const std::string answer = "<answer>C</answer>";
  return {
      {"canonical_plan_call_answer", {think + plan, think + call, think + answer}, true},
      {"plan_and_call_in_first_round", {think + "\n" + plan + "\n" + call, think + answer}, true},
      {"plan_then_direct_answer", {think + plan, think + answer}, true},
      {"revised_plan_before_answer", {think + plan, think + call, think + plan + answer}, true},
      {"first_round_tool_call_without_plan", {think + call, think + answer}, false},
      {"first_round_think_only", {think, think + answer}, false},
      {"unclosed_think", {think + plan, "<think>The rule is clear. " + answer}, false},
      {"stray_closing_tag", {think + plan + "</tool_call>", think + answer}, false},
      {"truncated_at_max_turns", {think + plan, think + call}, false},
      {"answer_in_first_round", {think + plan + answer}, false},
      {"text_outside_tags", {think + plan, "The answer is C. " + think + answer}, false},
      {"nested_tags", {think + plan, "<think>outer <plan>inner</plan></think>" + answer}, false},
  };
}

inline Trajectory run_format_case(const FormatCase& c, const ToolRegistry& tools) {
  ScriptedPolicy policy(c.outputs);
  RolloutOptions options;
  return run_rollout(format_suite_item(), policy, tools, options);
}

}  // namespace temporalex::testing
