// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include "temporalex/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "temporalex/text.hpp"

namespace temporalex {

std::string_view channel_name(Channel c) {
  switch (c) {
    case Channel::Keyword: return "keyword";
    case Channel::Dense: return "dense";
    case Channel::Sparse: return "sparse";
  }
  return "unknown";
}

double RetrievalConfig::weight(Channel c) const {
  switch (c) {
    case Channel::Keyword: return keyword_weight;
    case Channel::Dense: return dense_weight;
    case Channel::Sparse: return sparse_weight;
  }
  return 0.0;
}

void RetrievalConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid retrieval config: ") + what);
  };
  require(std::isfinite(keyword_weight) && keyword_weight >= 0, "keyword_weight must be >= 0");
  require(std::isfinite(dense_weight) && dense_weight >= 0, "dense_weight must be >= 0");
  require(std::isfinite(sparse_weight) && sparse_weight >= 0, "sparse_weight must be >= 0");
  require(std::isfinite(rrf_k) && rrf_k > 0, "rrf_k must be > 0");
  require(top_k >= 1, "top_k must be >= 1");
  require(std::isfinite(bm25_k1) && bm25_k1 >= 0, "bm25_k1 must be >= 0");
  require(bm25_b >= 0 && bm25_b <= 1, "bm25_b must be in [0, 1]");
  require(candidate_cutoff >= 1, "candidate_cutoff must be >= 1");
  require(std::isfinite(label_bonus) && label_bonus >= 0, "label_bonus must be >= 0");
}

std::vector<ProvisionId> temporal_filter(const CorpusIndex& index,
                                         const std::vector<DateInterval>& time_info) {
  std::vector<ProvisionId> out;
  out.reserve(index.size());
  for (ProvisionId id = 0; id < index.size(); ++id) {
    const auto& window = index.provision(id).window;
    const bool keep =
        time_info.empty() ||
        std::any_of(time_info.begin(), time_info.end(),
                    [&](const DateInterval& iv) { return window.overlaps(iv); });
    if (keep) out.push_back(id);
  }
  return out;
}

void finalize_ranking(ChannelRanking& ranking, std::size_t cutoff) {
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const RankedEntry& a, const RankedEntry& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.id < b.id;
            });
  if (ranking.entries.size() > cutoff) ranking.entries.resize(cutoff);
}

ChannelRanking channel_keyword(const CorpusIndex& index,
                               const QueryAnalysis& analysis,
                               std::span<const ProvisionId> candidates,
                               const RetrievalConfig& config) {
  ChannelRanking ranking{Channel::Keyword, config.keyword_weight, {}};

  std::set<std::string> keywords;
  for (const auto& kw : analysis.keywords) {
    auto k = normalize_text(kw);
    if (!k.empty()) keywords.insert(std::move(k));
  }
  std::set<std::string> labels;
  for (const auto& label : analysis.chapter_info) labels.insert(normalize_text(label));

  for (ProvisionId id : candidates) {
    const auto& p = index.provision(id);
    const std::string text = normalize_text(p.text);
    double score = 0.0;
    for (const auto& kw : keywords) {
      if (text.find(kw) != std::string::npos) score += 1.0;
    }
    if (labels.count(normalize_text(p.article_label))) score += config.label_bonus;
    if (score > 0.0) ranking.entries.push_back({id, score});
  }
  finalize_ranking(ranking, config.candidate_cutoff);
  return ranking;
}

std::optional<ChannelRanking> channel_dense(const CorpusIndex& index,
                                            std::string_view query,
                                            std::span<const ProvisionId> candidates,
                                            const Embedder& embedder,
                                            const RetrievalConfig& config) {
  ChannelRanking ranking{Channel::Dense, config.dense_weight, {}};
  try {
    const Embedding q = embedder.embed(query);
    for (ProvisionId id : candidates) {
      ranking.entries.push_back({id, cosine_similarity(q, index.embedding(id))});
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  finalize_ranking(ranking, config.candidate_cutoff);
  return ranking;
}

double bm25_idf(std::size_t corpus_size, std::size_t document_frequency) {
  const double n = static_cast<double>(corpus_size);
  const double df = static_cast<double>(document_frequency);
  return std::log((n - df + 0.5) / (df + 0.5) + 1.0);
}

ChannelRanking channel_sparse(const CorpusIndex& index, std::string_view query,
                              std::span<const ProvisionId> candidates,
                              const RetrievalConfig& config) {
  ChannelRanking ranking{Channel::Sparse, config.sparse_weight, {}};
  const auto& stats = index.statistics();
  if (index.empty() || candidates.empty()) return ranking;

  std::vector<char> is_candidate(index.size(), 0);
  for (ProvisionId id : candidates) is_candidate[id] = 1;

  const auto tokens = tokenize(query);
  const std::set<std::string> terms(tokens.begin(), tokens.end());
  const double avgdl = stats.average_length > 0 ? stats.average_length : 1.0;
  const double k1 = config.bm25_k1;
  const double b = config.bm25_b;

  // Accumulate in term order so the floating-point sum is reproducible.
  std::map<ProvisionId, double> scores;
  for (const auto& term : terms) {
    const auto* postings = stats.find(term);
    if (!postings || postings->empty()) continue;
    const double idf = bm25_idf(index.size(), postings->size());
    for (const auto& posting : *postings) {
      if (!is_candidate[posting.doc]) continue;
      const double tf = posting.tf;
      const double dl = stats.doc_lengths[posting.doc];
      scores[posting.doc] += idf * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * dl / avgdl));
    }
  }
  for (const auto& [id, score] : scores) {
    if (score > 0.0) ranking.entries.push_back({id, score});
  }
  finalize_ranking(ranking, config.candidate_cutoff);
  return ranking;
}

std::vector<FusedHit> rrf_fuse(std::span<const ChannelRanking> rankings,
                               const RetrievalConfig& config) {
  std::map<ProvisionId, FusedHit> fused;
  for (const auto& ranking : rankings) {
    const std::size_t limit = std::min(ranking.entries.size(), config.candidate_cutoff);
    for (std::size_t r = 0; r < limit; ++r) {
      const ProvisionId id = ranking.entries[r].id;
      auto& hit = fused[id];
      hit.id = id;
      hit.channel_ranks[static_cast<std::size_t>(ranking.channel)] =
          static_cast<std::uint32_t>(r + 1);
    }
  }

  std::vector<FusedHit> out;
  out.reserve(fused.size());
  for (auto& [id, hit] : fused) {
    // Summed in channel order, independent of the order rankings arrived in.
    double score = 0.0;
    for (std::size_t c = 0; c < kChannelCount; ++c) {
      if (!hit.channel_ranks[c]) continue;
      double weight = 0.0;
      for (const auto& ranking : rankings) {
        if (static_cast<std::size_t>(ranking.channel) == c) weight = ranking.weight;
      }
      score += weight / (config.rrf_k + static_cast<double>(*hit.channel_ranks[c]));
    }
    hit.rrf_score = score;
    out.push_back(std::move(hit));
  }
  std::sort(out.begin(), out.end(), [](const FusedHit& a, const FusedHit& b) {
    if (a.rrf_score != b.rrf_score) return a.rrf_score > b.rrf_score;
    return a.id < b.id;
  });
  return out;
}

RetrievalEngine::RetrievalEngine(const CorpusIndex& index,
                                 const AnalyzerBackend& analyzer,
                                 const Embedder& embedder)
    : index_(index), analyzer_(analyzer), embedder_(embedder) {}

RetrievalResult RetrievalEngine::retrieve(std::string_view query,
                                          const std::vector<DateInterval>& time_hint,
                                          const RetrievalConfig& config) const {
  config.validate();
  RetrievalResult result;
  result.analysis = analyze_query(query, analyzer_);
  for (const auto& iv : time_hint) {
    if (!iv.well_formed()) throw std::invalid_argument("time hint interval has start after end");
    if (std::find(result.analysis.time_info.begin(), result.analysis.time_info.end(), iv) ==
        result.analysis.time_info.end()) {
      result.analysis.time_info.push_back(iv);
    }
  }
  if (index_.empty()) return result;

  static const std::vector<DateInterval> kNoFilter;
  result.candidates = temporal_filter(
      index_, config.temporal_filtering ? result.analysis.time_info : kNoFilter);
  if (result.candidates.empty()) return result;

  std::vector<ChannelRanking> rankings;
  rankings.push_back(channel_keyword(index_, result.analysis, result.candidates, config));
  if (auto dense = channel_dense(index_, query, result.candidates, embedder_, config)) {
    rankings.push_back(std::move(*dense));
  }
  rankings.push_back(channel_sparse(index_, query, result.candidates, config));

  result.hits = rrf_fuse(rankings, config);
  if (result.hits.size() > config.top_k) result.hits.resize(config.top_k);
  for (auto& hit : result.hits) {
    const auto& p = index_.provision(hit.id);
    hit.statute_id = p.statute_id;
    hit.article_label = p.article_label;
    hit.version_id = p.version_id;
    hit.text = p.text;
    hit.window = p.window;
  }
  return result;
}

nlohmann::json to_json(const FusedHit& hit) {
  nlohmann::json ranks = nlohmann::json::object();
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const auto name = std::string(channel_name(static_cast<Channel>(c)));
    if (hit.channel_ranks[c]) {
      ranks[name] = *hit.channel_ranks[c];
    } else {
      ranks[name] = nullptr;
    }
  }
  return {
      {"id", hit.id},
      {"score", hit.rrf_score},
      {"channel_ranks", std::move(ranks)},
      {"statute_id", hit.statute_id},
      {"article_label", hit.article_label},
      {"version_id", hit.version_id},
      {"t_from", hit.window.from.to_string()},
      {"t_to", hit.window.to ? nlohmann::json(hit.window.to->to_string()) : nlohmann::json()},
      {"text", hit.text},
  };
}

}  // namespace temporalex
