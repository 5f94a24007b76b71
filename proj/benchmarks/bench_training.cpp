// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "temporalex/grpo.hpp"
#include "temporalex/scoring.hpp"

namespace temporalex {
namespace {

void BM_RougeL(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> letter('a', 'e');
  std::string a, b;
  for (std::size_t i = 0; i < n; ++i) {
    a.push_back(static_cast<char>(letter(rng)));
    b.push_back(static_cast<char>(letter(rng)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(rouge_l_char(a, b));
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_RougeL)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oNSquared);

RolloutGroup random_group(std::size_t g, std::size_t tokens) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lp(-5.0, 0.0);
  std::uniform_real_distribution<double> h(0.0, 3.0);
  std::bernoulli_distribution coin(0.7);
  RolloutGroup group;
  for (std::size_t i = 0; i < g; ++i) {
    group.rewards.push_back(i % 3 == 0 ? 1.0 : 0.0);
    RolloutTokens t;
    for (std::size_t k = 0; k < tokens; ++k) {
      t.new_logprobs.push_back(lp(rng));
      t.old_logprobs.push_back(lp(rng));
      t.entropies.push_back(h(rng));
      t.mask.push_back(k == 0 || coin(rng));
    }
    group.rollouts.push_back(std::move(t));
  }
  return group;
}

void BM_GroupAdvantages(benchmark::State& state) {
  const auto group = random_group(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(group_advantages(group.rewards));
}
BENCHMARK(BM_GroupAdvantages)->Arg(8)->Arg(64)->Arg(512);

void BM_AnalyzeGroup(benchmark::State& state) {
  const auto group = random_group(8, static_cast<std::size_t>(state.range(0)));
  const ShapingConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(analyze_group(group, config));
  state.SetItemsProcessed(state.iterations() * 8 * state.range(0));
}
BENCHMARK(BM_AnalyzeGroup)->Arg(512)->Arg(4096);

}  // namespace
}  // namespace temporalex

BENCHMARK_MAIN();
