// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "temporalex/date.hpp"
#include "temporalex/embedder.hpp"

namespace temporalex {

/// Position of a provision in ingestion order. Used as the tie-break key
/// everywhere rankings need a total order.
using ProvisionId = std::uint32_t;

struct ProvisionVersion {
  std::string statute_id;
  std::string article_label;
  std::string version_id;
  std::string text;
  TemporalWindow window;
  std::optional<std::string> predecessor_label;

  /// "statute_id/article_label/version_id"
  std::string key() const;

  friend bool operator==(const ProvisionVersion&,
                         const ProvisionVersion&) = default;
};

struct TermPosting {
  ProvisionId doc;
  std::uint32_t tf;

  friend bool operator==(const TermPosting&, const TermPosting&) = default;
};

/// Token statistics for BM25. Postings are sorted by doc id; document
/// frequency is the postings length.
struct TermStatistics {
  std::map<std::string, std::vector<TermPosting>, std::less<>> postings;
  std::vector<std::uint32_t> doc_lengths;
  double average_length = 0.0;

  std::size_t document_frequency(std::string_view term) const;
  const std::vector<TermPosting>* find(std::string_view term) const;

  friend bool operator==(const TermStatistics&,
                         const TermStatistics&) = default;
};

class IngestError : public std::runtime_error {
 public:
  IngestError(std::size_t line, std::string field, const std::string& message);

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class IndexFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable statute index: provisions plus BM25 statistics and one
/// embedding per provision. Safe for concurrent readers.
class CorpusIndex {
 public:
  CorpusIndex() = default;

  /// Validates record invariants (non-empty text, well-formed windows,
  /// unique keys) and builds statistics. Throws IngestError; `line` is the
  /// 1-based position of the offending provision.
  static CorpusIndex build(std::vector<ProvisionVersion> provisions,
                           const Embedder& embedder);

  std::size_t size() const { return provisions_.size(); }
  bool empty() const { return provisions_.empty(); }
  const std::vector<ProvisionVersion>& provisions() const { return provisions_; }
  const ProvisionVersion& provision(ProvisionId id) const {
    return provisions_.at(id);
  }
  const TermStatistics& statistics() const { return stats_; }
  const Embedding& embedding(ProvisionId id) const { return embeddings_.at(id); }
  const std::vector<Embedding>& embeddings() const { return embeddings_; }
  const std::string& embedder_name() const { return embedder_name_; }
  std::size_t embedding_dimension() const { return embedding_dimension_; }

  /// All versions of one article, ordered by window start.
  std::vector<ProvisionId> versions_of(std::string_view statute_id,
                                       std::string_view article_label) const;

  /// Statistics recomputed from the provision texts.
  static TermStatistics compute_statistics(
      const std::vector<ProvisionVersion>& provisions);

  friend bool operator==(const CorpusIndex&, const CorpusIndex&) = default;

 private:
  friend CorpusIndex load_index(const std::filesystem::path& dir);

  std::vector<ProvisionVersion> provisions_;
  TermStatistics stats_;
  std::vector<Embedding> embeddings_;
  std::string embedder_name_;
  std::size_t embedding_dimension_ = 0;
  // (statute_id, article_label) -> ids ordered by window start
  std::map<std::pair<std::string, std::string>, std::vector<ProvisionId>>
      by_article_;

  void rebuild_article_map();
};

/// Parses one corpus source line. Throws IngestError with `line_number`.
ProvisionVersion parse_corpus_record(std::string_view line,
                                     std::size_t line_number);

/// Line-delimited records; blank lines are skipped.
std::vector<ProvisionVersion> read_corpus_records(std::istream& in);

CorpusIndex ingest_corpus(std::istream& in, const Embedder& embedder);
CorpusIndex ingest_corpus_file(const std::filesystem::path& path,
                               const Embedder& embedder);

std::string to_record_line(const ProvisionVersion& p);

struct WindowOverlap {
  ProvisionId first;
  ProvisionId second;
  DateInterval intersection;
};

/// Uncovered days between two consecutive versions of one article.
struct CoverageGap {
  ProvisionId before;
  ProvisionId after;
  DateInterval uncovered;
};

struct ValidationReport {
  std::vector<WindowOverlap> overlaps;
  std::vector<CoverageGap> gaps;

  bool empty() const { return overlaps.empty() && gaps.empty(); }
};

ValidationReport validate_corpus(const CorpusIndex& index);

/// The version of (statute, article) in force on `date`. If a corrupt
/// corpus has overlapping windows the most recently started one wins.
std::optional<ProvisionId> effective_at(const CorpusIndex& index,
                                        std::string_view statute_id,
                                        std::string_view article_label,
                                        Date date);

/// On-disk layout: manifest.json, provisions.jsonl, statistics.json,
/// embeddings.json. The manifest carries a format version.
inline constexpr int kIndexFormatVersion = 1;

void save_index(const CorpusIndex& index, const std::filesystem::path& dir);
CorpusIndex load_index(const std::filesystem::path& dir);

}  // namespace temporalex
