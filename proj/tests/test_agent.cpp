// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "support/format_suite.hpp"
#include "support/generators.hpp"
#include "support/temporal_queries.hpp"
#include "temporalex/agent.hpp"
#include "temporalex/policies.hpp"
#include "temporalex/scoring.hpp"
#include "temporalex/text.hpp"

namespace temporalex {
namespace {

using json = nlohmann::json;

std::optional<FormatError> error_of(const ParseResult& r) {
  if (const auto* d = std::get_if<FormatDiagnosis>(&r)) return d->error;
  return std::nullopt;
}

TEST(ParseAgentOutputTest, FirstRoundPlan) {
  const auto r = parse_agent_output("<think>reason</think>\n<plan>steps</plan>", 0);
  ASSERT_TRUE(std::holds_alternative<Step>(r));
  const auto& s = std::get<Step>(r);
  EXPECT_EQ(s.think, "reason");
  EXPECT_EQ(std::get<PlanAction>(s.action).text, "steps");
  EXPECT_FALSE(s.plan);
}

TEST(ParseAgentOutputTest, FirstRoundPlanWithToolCall) {
  const auto r = parse_agent_output(
      R"(<think>t</think><plan>p</plan><tool_call>{"name":"rag_retrieve","arguments":{"query":["q"]}}</tool_call>)",
      0);
  ASSERT_TRUE(std::holds_alternative<Step>(r));
  const auto& s = std::get<Step>(r);
  EXPECT_EQ(s.plan, "p");
  EXPECT_EQ(std::get<ToolCallAction>(s.action).request.name, "rag_retrieve");
}

TEST(ParseAgentOutputTest, Diagnoses) {
  const std::string call = R"(<tool_call>{"name":"web_search","arguments":{"query":["q"]}}</tool_call>)";
  EXPECT_EQ(error_of(parse_agent_output("<think>t</think>" + call, 0)),
            FormatError::MissingFirstRoundPlan);
  EXPECT_EQ(error_of(parse_agent_output("<think>t<answer>a</answer>", 1)),
            FormatError::UnbalancedTags);
  EXPECT_EQ(error_of(parse_agent_output("<think>t</think></plan>", 1)),
            FormatError::UnbalancedTags);
  EXPECT_EQ(error_of(parse_agent_output("<think>a<plan>b</plan></think>", 1)),
            FormatError::NestedTags);
  EXPECT_EQ(error_of(parse_agent_output("<think>a<plan>b</think></plan>", 1)),
            FormatError::NestedTags);
  EXPECT_EQ(error_of(parse_agent_output("hi <think>t</think><answer>a</answer>", 1)),
            FormatError::TextOutsideTags);
  EXPECT_EQ(error_of(parse_agent_output("<think>t</think><answer>a</answer> bye", 1)),
            FormatError::TextOutsideTags);
  EXPECT_EQ(error_of(parse_agent_output("no tags", 1)), FormatError::TextOutsideTags);
  EXPECT_EQ(error_of(parse_agent_output("", 1)), FormatError::MissingThink);
  EXPECT_EQ(error_of(parse_agent_output("<plan>p</plan>", 0)), FormatError::MissingThink);
  EXPECT_EQ(error_of(parse_agent_output("<think> </think><plan>p</plan>", 0)),
            FormatError::EmptyThink);
  EXPECT_EQ(error_of(parse_agent_output("<think>t</think>", 1)), FormatError::MissingAction);
  EXPECT_EQ(error_of(parse_agent_output("<think>t</think><plan>p</plan><answer>a</answer>", 0)),
            FormatError::UnexpectedTag);
  EXPECT_EQ(error_of(parse_agent_output("<think>t</think><answer>a</answer><plan>p</plan>", 1)),
            FormatError::UnexpectedTag);
  EXPECT_EQ(error_of(parse_agent_output("<think>t</think><tool_response>x</tool_response>", 1)),
            FormatError::UnexpectedTag);
  EXPECT_EQ(error_of(parse_agent_output("<think>t</think><tool_call>{oops</tool_call>", 1)),
            FormatError::MalformedToolRequest);
}

TEST(ParseAgentOutputTest, LaterRoundForms) {
  EXPECT_TRUE(std::holds_alternative<Step>(parse_agent_output("<think>t</think><answer>a</answer>", 3)));
  EXPECT_TRUE(std::holds_alternative<Step>(parse_agent_output("<think>t</think><plan>p</plan>", 3)));
  const auto r = parse_agent_output("<think>t</think><plan>p2</plan><answer>a</answer>", 2);
  ASSERT_TRUE(std::holds_alternative<Step>(r));
  EXPECT_EQ(std::get<Step>(r).plan, "p2");
  EXPECT_EQ(std::get<AnswerAction>(std::get<Step>(r).action).text, "a");
}

TEST(ParseAgentOutputTest, SerializeRoundTripsRandomSteps) {
  testing::Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const std::size_t round = static_cast<std::size_t>(rng.uniform(0, 4));
    Step s{testing::random_text(rng, 1, 6), std::nullopt, PlanAction{}, std::nullopt};
    const int kind = round == 0 ? rng.uniform(0, 1) : rng.uniform(0, 2);
    if (kind == 0) {
      s.action = PlanAction{testing::random_text(rng, 1, 6)};
    } else {
      if (round == 0 || rng.coin()) s.plan = testing::random_text(rng, 1, 4);
      if (kind == 1) {
        s.action = ToolCallAction{{"rag_retrieve", json{{"query", {testing::random_text(rng, 1, 3)}}}}};
      } else {
        s.action = AnswerAction{testing::random_text(rng, 1, 5)};
      }
    }
    const auto r = parse_agent_output(serialize_step(s), round);
    ASSERT_TRUE(std::holds_alternative<Step>(r)) << serialize_step(s);
    EXPECT_EQ(std::get<Step>(r), s);
  }
}

Trajectory prefix_with(std::vector<Step> steps) {
  Trajectory t;
  t.system_prompt = "SYS";
  t.query = "Question: q\n";
  t.steps = std::move(steps);
  return t;
}

TEST(RenderStateTest, EmptyPrefix) {
  EXPECT_EQ(render_state(prefix_with({}), RolloutLimits{}), "SYS\n\nQuestion: q\n");
}

TEST(RenderStateTest, EndsWithSerializedPlan) {
  const Step plan{"t", std::nullopt, PlanAction{"p"}, std::nullopt};
  EXPECT_EQ(render_state(prefix_with({plan}), RolloutLimits{}),
            "SYS\n\nQuestion: q\n\n<think>t</think>\n<plan>p</plan>");
}

TEST(RenderStateTest, TruncatesOldestToolResponseFirst) {
  auto call = [](std::string response) {
    return Step{"t", std::nullopt, ToolCallAction{{"rag_retrieve", json{{"query", {"q"}}}}},
                std::move(response)};
  };
  const auto t = prefix_with({Step{"t", std::nullopt, PlanAction{"p"}, std::nullopt},
                              call(std::string(300, 'a')), call(std::string(300, 'b'))});
  RolloutLimits limits;
  const auto full = render_state(t, limits);
  limits.max_context_length = codepoint_count(full) - 10;
  const auto cut = render_state(t, limits);
  EXPECT_EQ(cut.find(std::string(300, 'a')), std::string::npos);
  EXPECT_NE(cut.find(std::string(300, 'b')), std::string::npos);
  EXPECT_NE(cut.find(std::string(kTruncationMarker)), std::string::npos);
  EXPECT_LE(codepoint_count(cut), limits.max_context_length);
}

TEST(RenderQuestionTest, IncludesOptionsAndContext) {
  const auto item = testing::format_suite_item();
  EXPECT_EQ(render_question(item),
            "Question: Which option states the 2010 probation rule?\nOptions:\nA: no reporting\n"
            "B: monthly fines\nC: report to the authority\nTemporal context: 2010\n");
}

TEST(FormatSuiteTest, LabelsMatchAndInvalidNeverRewarded) {
  const ToolRegistry tools;
  const auto item = testing::format_suite_item();
  for (const auto& c : testing::format_suite()) {
    const auto t = testing::run_format_case(c, tools);
    EXPECT_EQ(validate_format(t), c.valid) << c.name;
    const double r = reward(t, item, PhraseJudge{});
    EXPECT_EQ(r, c.valid ? 1.0 : 0.0) << c.name;
  }
}

TEST(RolloutTest, TruncatesAtMaxTurns) {
  const ToolRegistry tools;
  const auto cases = testing::format_suite();
  const auto& never = *std::find_if(cases.begin(), cases.end(),
                                    [](const auto& c) { return c.name == "truncated_at_max_turns"; });
  const auto t = testing::run_format_case(never, tools);
  EXPECT_EQ(t.steps.size(), 15u);
  EXPECT_EQ(t.termination, Termination::MaxTurns);
  EXPECT_FALSE(extract_answer(t));
}

TEST(RolloutTest, MalformedOutputStopsRollout) {
  const ToolRegistry tools;
  ScriptedPolicy policy({"<think>t</think><plan>p</plan>", "<think>oops"});
  const auto t = run_rollout(testing::format_suite_item(), policy, tools, RolloutOptions{});
  EXPECT_EQ(t.termination, Termination::MalformedOutput);
  EXPECT_EQ(t.steps.size(), 1u);
  ASSERT_TRUE(t.diagnosis);
  EXPECT_EQ(t.diagnosis->error, FormatError::UnbalancedTags);
  EXPECT_EQ(t.malformed_output, "<think>oops");
}

TEST(RolloutTest, OverlongResponseIsMalformed) {
  const ToolRegistry tools;
  RolloutOptions options;
  options.limits.max_response_length = 20;
  ScriptedPolicy policy({"<think>" + std::string(40, 'x') + "</think><plan>p</plan>"});
  const auto t = run_rollout(testing::format_suite_item(), policy, tools, options);
  ASSERT_TRUE(t.diagnosis);
  EXPECT_EQ(t.diagnosis->error, FormatError::ResponseTooLong);
}

TEST(RolloutTest, UnknownToolKeepsGoing) {
  const ToolRegistry tools;
  ScriptedPolicy policy({"<think>t</think><plan>p</plan>",
                         R"(<think>t</think><tool_call>{"name":"lookup","arguments":{}}</tool_call>)",
                         "<think>t</think><answer>C</answer>"});
  const auto t = run_rollout(testing::format_suite_item(), policy, tools, RolloutOptions{});
  ASSERT_EQ(t.steps.size(), 3u);
  EXPECT_NE(t.steps[1].tool_response->find("error: unknown tool 'lookup'"), std::string::npos);
  EXPECT_TRUE(validate_format(t));
}

TEST(RolloutTest, PolicyFailureCarriesPartialTrajectory) {
  const ToolRegistry tools;
  FunctionPolicy policy([](const PolicyContext& c) -> std::string {
    if (c.round == 1) throw std::runtime_error("backend down");
    return "<think>t</think><plan>p</plan>";
  });
  try {
    run_rollout(testing::format_suite_item(), policy, tools, RolloutOptions{});
    FAIL();
  } catch (const RolloutError& e) {
    EXPECT_EQ(e.partial().steps.size(), 1u);
  }
}

TEST(RolloutTest, StateSeenByPolicyGrows) {
  const ToolRegistry tools;
  std::vector<std::string> states;
  FunctionPolicy policy([&](const PolicyContext& c) -> std::string {
    states.push_back(c.state);
    return c.round == 0 ? "<think>t</think><plan>p</plan>" : "<think>t</think><answer>C</answer>";
  });
  RolloutOptions options;
  options.system_prompt = make_system_prompt("Today is {current_date}.", *Date::parse("2025-01-01"));
  run_rollout(testing::format_suite_item(), policy, tools, options);
  ASSERT_EQ(states.size(), 2u);
  EXPECT_EQ(states[0].rfind("Today is 2025-01-01.\n\nQuestion:", 0), 0u);
  EXPECT_EQ(states[1], states[0] + "\n<think>t</think>\n<plan>p</plan>");
}

TEST(TemporalQueryTest, Examples) {
  EXPECT_TRUE(is_temporal_query("Article 3 of the 2014 Administrative Penalty Law"));
  EXPECT_FALSE(is_temporal_query("intentional homicide"));
}

TEST(TemporalQueryTest, HandLabeledFixture) {
  for (const auto& q : testing::labeled_queries()) {
    EXPECT_EQ(is_temporal_query(q.query), q.temporal) << q.query;
  }
  const auto counts = count_temporal_queries(testing::labeled_query_trajectories());
  EXPECT_EQ(counts.web_search, (ToolQueryCount{10, 6}));
  EXPECT_EQ(counts.rag_retrieve, (ToolQueryCount{10, 4}));
}

TEST(SerializationTest, TrajectoryRoundTrip) {
  const ToolRegistry tools;
  for (const auto& c : testing::format_suite()) {
    const auto t = testing::run_format_case(c, tools);
    const auto back = trajectory_from_json(to_json(t));
    EXPECT_EQ(to_json(back), to_json(t)) << c.name;
    EXPECT_EQ(validate_format(back), validate_format(t));
  }
}

TEST(SerializationTest, ItemsFromJsonLines) {
  std::istringstream in(
      R"({"id":"a","task":"lar","question":"q","gold":"g","temporal_context":2010})" "\n\n"
      R"({"id":"b","task":"KQA","question":"q","gold":"B","options":{"A":"x","B":"y"}})" "\n");
  const auto items = read_items(in);
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0].task, TaskKind::LAR);
  EXPECT_EQ(items[0].temporal_context, "2010");
  EXPECT_EQ(items[1].options.at("B"), "y");
  EXPECT_EQ(item_from_json(to_json(items[1])), items[1]);

  std::istringstream bad(R"({"id":"a","task":"essay","question":"q","gold":"g"})");
  EXPECT_THROW(read_items(bad), std::invalid_argument);
}

TEST(SerializationTest, BundledItemsLoad) {
  const auto items = read_items_file(testing::kDataDir + "/items.jsonl");
  EXPECT_EQ(items.size(), 6u);
}

}  // namespace
}  // namespace temporalex
