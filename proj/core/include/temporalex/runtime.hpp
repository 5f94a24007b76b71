// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "temporalex/agent.hpp"
#include "temporalex/config.hpp"
#include "temporalex/service.hpp"
#include "temporalex/tools.hpp"

namespace temporalex {

/// Tool backends selected by the configured mode, plus a registry that
/// points at them.
struct ToolRuntime {
  std::unique_ptr<SearchClient> search;
  std::unique_ptr<PageSource> pages;
  std::unique_ptr<ReaderBackend> reader;
  ToolRegistry registry;
};

/// Fixture mode loads the fixture files; live mode builds HTTP clients that
/// consult `guard`. rag_retrieve always uses `core`'s engine.
std::unique_ptr<ToolRuntime> make_tool_runtime(const RunConfig& config, const ServiceCore& core,
                                               NetworkGuard& guard);

/// Limits from the config; the prompt date is reference_date when set.
RolloutOptions rollout_options(const RunConfig& config);

struct RolloutFailure {
  std::string item_id;
  std::string message;
};

struct BatchResult {
  /// In item order. A failed rollout contributes its partial trajectory.
  std::vector<Trajectory> trajectories;
  std::vector<RolloutFailure> failures;
};

/// Runs one rollout per item on at most `workers` threads.
BatchResult run_batch(const std::vector<BenchmarkItem>& items, const Policy& policy,
                      const ToolRegistry& tools, const RolloutOptions& options,
                      std::size_t workers);

}  // namespace temporalex
