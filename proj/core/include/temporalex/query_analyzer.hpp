// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "temporalex/date.hpp"

namespace temporalex {

/// Structured view of a legal query: temporal references expanded to
/// inclusive day intervals, canonical article/chapter labels, and keywords
/// drawn from the normalized query text.
struct QueryAnalysis {
  std::vector<DateInterval> time_info;
  std::vector<std::string> chapter_info;
  std::vector<std::string> keywords;

  friend bool operator==(const QueryAnalysis&, const QueryAnalysis&) = default;
};

/// Raised when a backend's output violates the QueryAnalysis contract.
class AnalysisError : public std::runtime_error {
 public:
  AnalysisError(const std::string& reason, std::string raw_output);
  const std::string& raw_output() const { return raw_output_; }

 private:
  std::string raw_output_;
};

enum class NumeralStyle { Arabic, Chinese };

/// How canonical article/chapter labels are spelled. `{}` in a pattern is
/// replaced by the rendered numeral.
struct LabelConvention {
  NumeralStyle numerals = NumeralStyle::Arabic;
  std::string article_pattern = "Article {}";
  std::string chapter_pattern = "Chapter {}";

  /// 第三条 / 第十二章 style.
  static LabelConvention chinese();
};

/// Chinese numeral for 0 < n < 100000, e.g. 12 -> 十二, 105 -> 一百零五.
std::string to_chinese_numeral(unsigned n);

/// Inverse of to_chinese_numeral; nullopt when the text is not a numeral.
std::optional<unsigned> parse_chinese_numeral(std::string_view text);

/// Expands "YYYY", "YYYY-MM", "YYYY-MM-DD" (also with '/' or '.' separators
/// and the 年/月/日 forms) to the inclusive interval of days it denotes.
/// Returns nullopt for any other token.
std::optional<DateInterval> expand_partial_date(std::string_view token);

/// "Criminal Law Art. 3" -> "Article 3" (or 第三条 under the Chinese
/// convention). Returns nullopt when no article/chapter designator with a
/// numeral is present.
std::optional<std::string> normalize_article_ref(std::string_view ref,
                                                 const LabelConvention& labels);

class AnalyzerBackend {
 public:
  virtual ~AnalyzerBackend() = default;
  /// Throws AnalysisError when the produced analysis breaks the contract.
  virtual QueryAnalysis analyze(std::string_view query) const = 0;
};

struct PatternAnalyzerOptions {
  LabelConvention labels;
  /// Resolves "now"/"currently"-style phrases when the query has no
  /// explicit date. Never read from the wall clock.
  std::optional<Date> reference_date;
};

/// Deterministic rule-based backend. Pure function of (query, options).
class PatternAnalyzer final : public AnalyzerBackend {
 public:
  explicit PatternAnalyzer(PatternAnalyzerOptions options = {});
  QueryAnalysis analyze(std::string_view query) const override;

 private:
  PatternAnalyzerOptions options_;
};

/// Backend driven by a text-completion function (e.g. an auxiliary model).
/// The raw completion must be a JSON object with exactly the keys
/// time_info, chapter_info and keywords.
class CompletionAnalyzer final : public AnalyzerBackend {
 public:
  using CompletionFn = std::function<std::string(const std::string& prompt)>;

  explicit CompletionAnalyzer(CompletionFn complete);
  QueryAnalysis analyze(std::string_view query) const override;

  static std::string build_prompt(std::string_view query);

 private:
  CompletionFn complete_;
};

/// Validates `raw` against the analysis contract for `query`.
QueryAnalysis parse_analysis_json(std::string_view raw, std::string_view query);

/// Rejects an empty query, then delegates to the backend.
QueryAnalysis analyze_query(std::string_view query,
                            const AnalyzerBackend& backend);

nlohmann::json to_json(const QueryAnalysis& analysis);

}  // namespace temporalex
