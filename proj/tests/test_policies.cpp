// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "support/generators.hpp"
#include "temporalex/config.hpp"
#include "temporalex/policies.hpp"
#include "temporalex/runtime.hpp"
#include "temporalex/scoring.hpp"

namespace temporalex {
namespace {

using json = nlohmann::json;

RunConfig bundled_config(std::map<std::string, std::string> overrides = {}) {
  return load_run_config(std::filesystem::path(testing::kDataDir) / "fixture.conf", overrides,
                         [](const std::string&) { return std::nullopt; });
}

TEST(ScriptedPolicyTest, RepeatsLastOutput) {
  ScriptedPolicy p({"a", "b"});
  BenchmarkItem item;
  Trajectory t;
  const std::string state;
  EXPECT_EQ(p.generate({item, t, state, 0}), "a");
  EXPECT_EQ(p.generate({item, t, state, 1}), "b");
  EXPECT_EQ(p.generate({item, t, state, 7}), "b");
  EXPECT_THROW(ScriptedPolicy({}), std::invalid_argument);
}

TEST(GroundedPolicyTest, AnswerFromResponse) {
  BenchmarkItem lar;
  lar.question = "Recite";
  const std::string response =
      "[1] s | Article 1 | version 1 | in force 2000-01-01 onward\nText: first text\n"
      "[2] s | Article 2 | version 1 | in force 2000-01-01 onward\nText: second text\n";
  EXPECT_EQ(GroundedPolicy::answer_from(lar, response), "first text");
  EXPECT_EQ(GroundedPolicy::answer_from(lar, "No results."), "");

  BenchmarkItem mc = lar;
  mc.options = {{"A", "second"}, {"B", "first"}, {"C", "first text"}};
  EXPECT_EQ(GroundedPolicy::answer_from(mc, response), "C");
  mc.temporal_context = "2010";
  EXPECT_EQ(GroundedPolicy::retrieval_query(mc), "2010 Recite");
}

TEST(GroundedPolicyTest, BundledItemsScoreFullyOffline) {
  const auto config = bundled_config();
  const auto core = ServiceCore::from_config(config);
  NetworkGuard guard(false);
  const auto tools = make_tool_runtime(config, *core, guard);
  const auto items = read_items_file(config.items);
  const auto batch =
      run_batch(items, GroundedPolicy{}, tools->registry, rollout_options(config), config.workers);
  EXPECT_TRUE(batch.failures.empty());
  ASSERT_EQ(batch.trajectories.size(), items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    EXPECT_EQ(batch.trajectories[i].id, items[i].id);
    EXPECT_EQ(reward(batch.trajectories[i], items[i], PhraseJudge{}), 1.0) << items[i].id;
  }
  EXPECT_EQ(guard.attempts(), 0u);
}

TEST(RunBatchTest, FailuresAreReportedPerItem) {
  const ToolRegistry tools;
  std::vector<BenchmarkItem> items(5);
  for (std::size_t i = 0; i < items.size(); ++i) {
    items[i].id = "item-" + std::to_string(i);
    items[i].question = "q";
    items[i].gold = "A";
  }
  FunctionPolicy policy([](const PolicyContext& c) -> std::string {
    if (c.item.id == "item-3" && c.round == 1) throw std::runtime_error("boom");
    return c.round == 0 ? "<think>t</think><plan>p</plan>" : "<think>t</think><answer>A</answer>";
  });
  const auto batch = run_batch(items, policy, tools, RolloutOptions{}, 3);
  ASSERT_EQ(batch.failures.size(), 1u);
  EXPECT_EQ(batch.failures[0].item_id, "item-3");
  EXPECT_NE(batch.failures[0].message.find("boom"), std::string::npos);
  ASSERT_EQ(batch.trajectories.size(), 5u);
  EXPECT_EQ(batch.trajectories[3].steps.size(), 1u);
  EXPECT_EQ(batch.trajectories[4].termination, Termination::Answered);
}

TEST(HttpPolicyTest, GuardBlocksWhenDisabled) {
  NetworkGuard guard(false);
  HttpPolicy policy(HttpPolicyOptions{}, guard);
  BenchmarkItem item;
  Trajectory t;
  const std::string state = "s";
  EXPECT_THROW(policy.generate({item, t, state, 0}), NetworkDenied);
  EXPECT_EQ(guard.attempts(), 1u);
}

TEST(HttpPolicyTest, ReadsFirstChoice) {
  httplib::Server server;
  json seen;
  server.Post("/v1/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen = json::parse(req.body);
    res.set_content(R"({"choices": [{"text": "<think>x</think>"}]})", "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  NetworkGuard guard(true);
  HttpPolicyOptions options;
  options.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/completions";
  HttpPolicy policy(options, guard);
  BenchmarkItem item;
  Trajectory t;
  const std::string state = "rendered state";
  EXPECT_EQ(policy.generate({item, t, state, 0}), "<think>x</think>");
  EXPECT_EQ(seen["prompt"], "rendered state");
  EXPECT_EQ(seen["temperature"], 0);
  server.stop();
  th.join();
}

TEST(RuntimeTest, LiveModeWithoutNetworkIsBlocked) {
  auto config = bundled_config({{"tool_mode", "live"}});
  const auto core = ServiceCore::from_config(bundled_config());
  NetworkGuard guard(false);
  const auto tools = make_tool_runtime(config, *core, guard);
  ToolSession session;
  const auto out = tools->registry.dispatch(
      ToolRequest{"browse_webpage", json{{"url_list", {"https://example.org/x"}}}}, session);
  EXPECT_NE(out.find("url not in prior results"), std::string::npos);
  EXPECT_EQ(guard.attempts(), 0u);
}

TEST(RuntimeTest, RolloutOptionsUseReferenceDate) {
  const auto options = rollout_options(bundled_config({{"max_turns", "4"}}));
  EXPECT_EQ(options.limits.max_turns, 4u);
  EXPECT_NE(options.system_prompt.find("2025-01-01"), std::string::npos);
}

}  // namespace
}  // namespace temporalex
