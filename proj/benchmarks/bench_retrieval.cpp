// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "temporalex/corpus.hpp"
#include "temporalex/embedder.hpp"
#include "temporalex/query_analyzer.hpp"
#include "temporalex/retrieval.hpp"

namespace temporalex {
namespace {

const std::vector<std::string> kWords = {
    "probation", "theft",  "contract", "will",    "testator", "court",  "sentence", "property",
    "fraud",     "void",   "license",  "vehicle", "alcohol",  "spouse", "children", "labor",
    "period",    "months", "fine",     "appeal",  "缓刑",      "盗窃",     "合同",       "遗嘱"};

std::string words(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<std::size_t> pick(0, kWords.size() - 1);
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += kWords[pick(rng)];
  }
  return out;
}

std::vector<ProvisionVersion> synthetic_corpus(std::size_t n) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> year(1980, 2024);
  std::vector<ProvisionVersion> out;
  for (std::size_t i = 0; i < n; ++i) {
    ProvisionVersion p;
    p.statute_id = "statute-" + std::to_string(i % 17);
    p.article_label = "Article " + std::to_string(i % 300 + 1);
    p.version_id = std::to_string(i);
    p.text = words(rng, 30);
    p.window.from = *Date::from_ymd(year(rng), 1, 1);
    p.window.to = *Date::from_ymd(p.window.from.year() + 3, 12, 31);
    out.push_back(std::move(p));
  }
  return out;
}

ChannelRanking random_ranking(std::mt19937_64& rng, Channel c, std::size_t n) {
  std::uniform_real_distribution<double> score(0.0, 10.0);
  ChannelRanking r{c, 1.0, {}};
  for (std::size_t id = 0; id < n; ++id) r.entries.push_back({static_cast<ProvisionId>(id), score(rng)});
  finalize_ranking(r, n);
  return r;
}

void BM_RrfFuse(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<ChannelRanking> rankings = {random_ranking(rng, Channel::Keyword, n),
                                                random_ranking(rng, Channel::Dense, n),
                                                random_ranking(rng, Channel::Sparse, n)};
  RetrievalConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(rrf_fuse(rankings, config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_RrfFuse)->Arg(100)->Arg(1000)->Arg(10000);

void BM_Retrieve(benchmark::State& state) {
  HashedNgramEmbedder embedder;
  const auto index =
      CorpusIndex::build(synthetic_corpus(static_cast<std::size_t>(state.range(0))), embedder);
  PatternAnalyzer analyzer;
  const RetrievalEngine engine(index, analyzer, embedder);
  RetrievalConfig config;
  config.temporal_filtering = state.range(1) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.retrieve("2010 probation conditions Article 74", {}, config));
  }
}
BENCHMARK(BM_Retrieve)->Args({1000, 1})->Args({1000, 0})->Args({10000, 1})->Args({10000, 0})
    ->Unit(benchmark::kMicrosecond);

void BM_Analyze(benchmark::State& state) {
  PatternAnalyzer analyzer;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyzer.analyze("2010年刑法第七十四条缓刑 probation 2009-2011"));
  }
}
BENCHMARK(BM_Analyze);

void BM_Embed(benchmark::State& state) {
  HashedNgramEmbedder embedder;
  std::mt19937_64 rng(3);
  const auto text = words(rng, 60);
  for (auto _ : state) benchmark::DoNotOptimize(embedder.embed(text));
}
BENCHMARK(BM_Embed);

}  // namespace
}  // namespace temporalex
