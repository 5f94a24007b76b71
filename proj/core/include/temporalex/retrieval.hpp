// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "temporalex/corpus.hpp"
#include "temporalex/embedder.hpp"
#include "temporalex/query_analyzer.hpp"

namespace temporalex {

enum class Channel : std::uint8_t { Keyword = 0, Dense = 1, Sparse = 2 };
inline constexpr std::size_t kChannelCount = 3;

std::string_view channel_name(Channel c);

struct RankedEntry {
  ProvisionId id;
  double score;

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

/// One channel's ranking, best first. Entries are ordered by (score desc,
/// id asc) and hold no duplicate ids.
struct ChannelRanking {
  Channel channel;
  double weight;
  std::vector<RankedEntry> entries;
};

struct RetrievalConfig {
  double keyword_weight = 3.0;
  double dense_weight = 2.0;
  double sparse_weight = 1.0;
  double rrf_k = 60.0;
  std::size_t top_k = 5;
  double bm25_k1 = 1.5;
  double bm25_b = 0.75;
  /// Ranks beyond this are treated as absent from the channel.
  std::size_t candidate_cutoff = 100;
  /// When false, time_info is ignored and every provision is a candidate.
  bool temporal_filtering = true;
  /// Added to the keyword score when a provision's label is in chapter_info.
  double label_bonus = 2.0;

  double weight(Channel c) const;
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// A fused result. Provenance fields are filled in by RetrievalEngine;
/// rrf_fuse alone leaves them empty.
struct FusedHit {
  ProvisionId id = 0;
  double rrf_score = 0.0;
  /// 1-based rank per channel, indexed by Channel.
  std::array<std::optional<std::uint32_t>, kChannelCount> channel_ranks{};

  std::string statute_id;
  std::string article_label;
  std::string version_id;
  std::string text;
  TemporalWindow window;
};

/// Ids of provisions whose window overlaps at least one interval, in
/// ascending order. An empty interval list keeps everything.
std::vector<ProvisionId> temporal_filter(const CorpusIndex& index,
                                         const std::vector<DateInterval>& time_info);

/// Sorts by (score desc, id asc) and applies the candidate cut-off.
void finalize_ranking(ChannelRanking& ranking, std::size_t cutoff);

ChannelRanking channel_keyword(const CorpusIndex& index,
                               const QueryAnalysis& analysis,
                               std::span<const ProvisionId> candidates,
                               const RetrievalConfig& config);

/// Nullopt when the embedder fails or disagrees with the index dimension;
/// fusion then proceeds without the dense channel.
std::optional<ChannelRanking> channel_dense(const CorpusIndex& index,
                                            std::string_view query,
                                            std::span<const ProvisionId> candidates,
                                            const Embedder& embedder,
                                            const RetrievalConfig& config);

/// Okapi BM25 over distinct query terms with corpus-level statistics.
ChannelRanking channel_sparse(const CorpusIndex& index, std::string_view query,
                              std::span<const ProvisionId> candidates,
                              const RetrievalConfig& config);

double bm25_idf(std::size_t corpus_size, std::size_t document_frequency);

/// Weighted reciprocal rank fusion: score(d) = sum_c w_c / (K + r_c(d)).
/// Weights come from each ranking; K and the cut-off from `config`.
std::vector<FusedHit> rrf_fuse(std::span<const ChannelRanking> rankings,
                               const RetrievalConfig& config);

struct RetrievalResult {
  QueryAnalysis analysis;
  std::vector<ProvisionId> candidates;
  std::vector<FusedHit> hits;
};

/// The full pipeline over one immutable index. Thread-safe when the
/// analyzer and embedder are.
class RetrievalEngine {
 public:
  RetrievalEngine(const CorpusIndex& index, const AnalyzerBackend& analyzer,
                  const Embedder& embedder);

  RetrievalResult retrieve(std::string_view query,
                           const std::vector<DateInterval>& time_hint,
                           const RetrievalConfig& config) const;

  const CorpusIndex& index() const { return index_; }

 private:
  const CorpusIndex& index_;
  const AnalyzerBackend& analyzer_;
  const Embedder& embedder_;
};

nlohmann::json to_json(const FusedHit& hit);

}  // namespace temporalex
