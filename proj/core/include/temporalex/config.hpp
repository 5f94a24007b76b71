// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "temporalex/agent.hpp"
#include "temporalex/embedder.hpp"
#include "temporalex/grpo.hpp"
#include "temporalex/query_analyzer.hpp"
#include "temporalex/retrieval.hpp"
#include "temporalex/scoring.hpp"

namespace temporalex {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ToolMode { Fixture, Live };

struct RunConfig {
  std::filesystem::path corpus;
  std::filesystem::path index_dir;
  std::filesystem::path items;
  std::filesystem::path search_fixture;
  std::filesystem::path page_fixture;
  std::filesystem::path output_dir = "out";

  RetrievalConfig retrieval;
  NgramEmbedderSpec embedder;
  RolloutLimits limits;
  ShapingConfig shaping;
  ScoringConfig scoring;

  ToolMode tool_mode = ToolMode::Fixture;
  std::size_t web_top_k = 10;
  std::size_t page_cap = 5;
  std::size_t workers = 4;
  NumeralStyle label_numerals = NumeralStyle::Arabic;
  /// Resolves "now"-style query phrases; also fills the prompt's date.
  std::optional<Date> reference_date;
  std::string search_endpoint = "https://google.serper.dev/search";
  std::string policy_endpoint = "http://127.0.0.1:8000/v1/completions";
  std::uint64_t seed = 0;

  /// Fixture mode needs both fixture paths; live mode needs SEARCH_API_KEY.
  void validate(const std::function<std::optional<std::string>(const std::string&)>& env) const;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Reads the process environment.
EnvLookup process_env();

/// "key = value" lines; '#' starts a comment. Throws ConfigError with the
/// line number on malformed input.
std::map<std::string, std::string> parse_key_values(std::string_view text);

/// Applies one setting. Relative paths resolve against `base_dir`.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value,
                   const std::filesystem::path& base_dir = {});

/// Every key apply_setting understands.
const std::vector<std::string>& config_keys();

/// Defaults, then the file (`file` or $TEMPORALEX_CONFIG), then
/// TEMPORALEX_<KEY> environment variables, then `overrides`.
RunConfig load_run_config(const std::optional<std::filesystem::path>& file,
                          const std::map<std::string, std::string>& overrides,
                          const EnvLookup& env = process_env());

LabelConvention label_convention(const RunConfig& config);

}  // namespace temporalex
