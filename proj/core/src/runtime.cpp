// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include "temporalex/runtime.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

namespace temporalex {

std::unique_ptr<ToolRuntime> make_tool_runtime(const RunConfig& config, const ServiceCore& core,
                                               NetworkGuard& guard) {
  auto rt = std::make_unique<ToolRuntime>();
  if (config.tool_mode == ToolMode::Fixture) {
    rt->search = std::make_unique<FixtureSearchClient>(
        FixtureSearchClient::from_file(config.search_fixture));
    rt->pages =
        std::make_unique<FixturePageSource>(FixturePageSource::from_file(config.page_fixture));
  } else {
    HttpSearchOptions options;
    options.endpoint = config.search_endpoint;
    rt->search = std::make_unique<HttpSearchClient>(options, guard);
    rt->pages = std::make_unique<HttpPageSource>(guard);
  }
  rt->reader = std::make_unique<VerbatimReader>();

  rt->registry.search_client = rt->search.get();
  rt->registry.page_source = rt->pages.get();
  rt->registry.reader = rt->reader.get();
  rt->registry.engine = &core.engine();
  rt->registry.retrieval_config = config.retrieval;
  rt->registry.web_top_k = config.web_top_k;
  rt->registry.page_cap = config.page_cap;
  return rt;
}

RolloutOptions rollout_options(const RunConfig& config) {
  RolloutOptions options;
  options.limits = config.limits;
  if (config.reference_date) {
    options.system_prompt =
        make_system_prompt(default_system_prompt_template(), *config.reference_date);
  }
  return options;
}

BatchResult run_batch(const std::vector<BenchmarkItem>& items, const Policy& policy,
                      const ToolRegistry& tools, const RolloutOptions& options,
                      std::size_t workers) {
  BatchResult result;
  result.trajectories.resize(items.size());
  std::vector<std::optional<std::string>> errors(items.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        result.trajectories[i] = run_rollout(items[i], policy, tools, options);
      } catch (const RolloutError& e) {
        result.trajectories[i] = e.partial();
        errors[i] = e.what();
      } catch (const std::exception& e) {
        result.trajectories[i].id = items[i].id;
        result.trajectories[i].query = items[i].question;
        errors[i] = e.what();
      }
    }
  };

  const std::size_t n = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(items.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < items.size(); ++i) {
    if (errors[i]) result.failures.push_back({items[i].id, *errors[i]});
  }
  return result;
}

}  // namespace temporalex
