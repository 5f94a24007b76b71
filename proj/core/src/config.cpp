// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include "temporalex/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "temporalex/text.hpp"

namespace temporalex {
namespace {

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing text");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
}

std::size_t to_size(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
    const unsigned long long n = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing text");
    return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  const std::string v = fold_case(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + value + "'");
}

std::filesystem::path to_path(const std::string& value, const std::filesystem::path& base) {
  std::filesystem::path p(value);
  if (p.is_relative() && !base.empty() && !value.empty()) return base / p;
  return p;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value,
                                  const std::filesystem::path& base)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> kSetters = [] {
    std::map<std::string, Setter> m;
    auto path_field = [](std::filesystem::path RunConfig::*field) {
      return [field](RunConfig& c, const std::string&, const std::string& v,
                     const std::filesystem::path& base) { c.*field = to_path(v, base); };
    };
    auto double_field = [](auto getter) {
      return [getter](RunConfig& c, const std::string& k, const std::string& v,
                      const std::filesystem::path&) { getter(c) = to_double(k, v); };
    };
    auto size_field = [](auto getter) {
      return [getter](RunConfig& c, const std::string& k, const std::string& v,
                      const std::filesystem::path&) { getter(c) = to_size(k, v); };
    };

    m["corpus"] = path_field(&RunConfig::corpus);
    m["index"] = path_field(&RunConfig::index_dir);
    m["items"] = path_field(&RunConfig::items);
    m["search_fixture"] = path_field(&RunConfig::search_fixture);
    m["page_fixture"] = path_field(&RunConfig::page_fixture);
    m["output_dir"] = path_field(&RunConfig::output_dir);

    m["keyword_weight"] = double_field([](RunConfig& c) -> double& { return c.retrieval.keyword_weight; });
    m["dense_weight"] = double_field([](RunConfig& c) -> double& { return c.retrieval.dense_weight; });
    m["sparse_weight"] = double_field([](RunConfig& c) -> double& { return c.retrieval.sparse_weight; });
    m["rrf_k"] = double_field([](RunConfig& c) -> double& { return c.retrieval.rrf_k; });
    m["bm25_k1"] = double_field([](RunConfig& c) -> double& { return c.retrieval.bm25_k1; });
    m["bm25_b"] = double_field([](RunConfig& c) -> double& { return c.retrieval.bm25_b; });
    m["label_bonus"] = double_field([](RunConfig& c) -> double& { return c.retrieval.label_bonus; });
    m["top_k"] = size_field([](RunConfig& c) -> std::size_t& { return c.retrieval.top_k; });
    m["candidate_cutoff"] = size_field([](RunConfig& c) -> std::size_t& { return c.retrieval.candidate_cutoff; });
    m["temporal_filtering"] = [](RunConfig& c, const std::string& k, const std::string& v,
                                 const std::filesystem::path&) {
      c.retrieval.temporal_filtering = to_bool(k, v);
    };

    m["ngram_dim"] = size_field([](RunConfig& c) -> std::size_t& { return c.embedder.dimension; });
    m["ngram_min"] = size_field([](RunConfig& c) -> std::size_t& { return c.embedder.ngram_min; });
    m["ngram_max"] = size_field([](RunConfig& c) -> std::size_t& { return c.embedder.ngram_max; });

    m["max_turns"] = size_field([](RunConfig& c) -> std::size_t& { return c.limits.max_turns; });
    m["max_context_length"] = size_field([](RunConfig& c) -> std::size_t& { return c.limits.max_context_length; });
    m["max_response_length"] = size_field([](RunConfig& c) -> std::size_t& { return c.limits.max_response_length; });

    m["alpha"] = double_field([](RunConfig& c) -> double& { return c.shaping.alpha; });
    m["kappa"] = double_field([](RunConfig& c) -> double& { return c.shaping.kappa; });
    m["epsilon"] = double_field([](RunConfig& c) -> double& { return c.shaping.epsilon; });
    m["beta"] = double_field([](RunConfig& c) -> double& { return c.shaping.beta; });
    m["sigma_floor"] = double_field([](RunConfig& c) -> double& { return c.shaping.sigma_floor; });

    m["lar_threshold"] = double_field([](RunConfig& c) -> double& { return c.scoring.lar_threshold; });
    m["judge_cut"] = double_field([](RunConfig& c) -> double& { return c.scoring.judge_cut; });
    m["ccp_suffixes"] = [](RunConfig& c, const std::string&, const std::string& v,
                           const std::filesystem::path&) { c.scoring.ccp_suffixes = split_labels(v); };

    m["tool_mode"] = [](RunConfig& c, const std::string& k, const std::string& v,
                        const std::filesystem::path&) {
      const std::string mode = fold_case(v);
      if (mode == "fixture") {
        c.tool_mode = ToolMode::Fixture;
      } else if (mode == "live") {
        c.tool_mode = ToolMode::Live;
      } else {
        throw ConfigError(k + ": expected 'fixture' or 'live', got '" + v + "'");
      }
    };
    m["web_top_k"] = size_field([](RunConfig& c) -> std::size_t& { return c.web_top_k; });
    m["page_cap"] = size_field([](RunConfig& c) -> std::size_t& { return c.page_cap; });
    m["workers"] = size_field([](RunConfig& c) -> std::size_t& { return c.workers; });
    m["labels"] = [](RunConfig& c, const std::string& k, const std::string& v,
                     const std::filesystem::path&) {
      const std::string style = fold_case(v);
      if (style == "arabic") {
        c.label_numerals = NumeralStyle::Arabic;
      } else if (style == "chinese") {
        c.label_numerals = NumeralStyle::Chinese;
      } else {
        throw ConfigError(k + ": expected 'arabic' or 'chinese', got '" + v + "'");
      }
    };
    m["reference_date"] = [](RunConfig& c, const std::string& k, const std::string& v,
                             const std::filesystem::path&) {
      if (v.empty()) {
        c.reference_date.reset();
        return;
      }
      auto d = Date::parse(v);
      if (!d) throw ConfigError(k + ": expected YYYY-MM-DD, got '" + v + "'");
      c.reference_date = *d;
    };
    m["search_endpoint"] = [](RunConfig& c, const std::string&, const std::string& v,
                              const std::filesystem::path&) { c.search_endpoint = v; };
    m["policy_endpoint"] = [](RunConfig& c, const std::string&, const std::string& v,
                              const std::filesystem::path&) { c.policy_endpoint = v; };
    m["seed"] = [](RunConfig& c, const std::string& k, const std::string& v,
                   const std::filesystem::path&) { c.seed = to_size(k, v); };
    return m;
  }();
  return kSetters;
}

}  // namespace

void RunConfig::validate(const EnvLookup& env) const {
  retrieval.validate();
  limits.validate();
  shaping.validate();
  if (workers == 0) throw ConfigError("workers must be >= 1");
  if (page_cap == 0) throw ConfigError("page_cap must be >= 1");
  if (web_top_k == 0) throw ConfigError("web_top_k must be >= 1");
  if (tool_mode == ToolMode::Fixture) {
    if (search_fixture.empty() || page_fixture.empty()) {
      throw ConfigError("fixture mode requires search_fixture and page_fixture");
    }
  } else {
    const auto key = env("SEARCH_API_KEY");
    if (!key || key->empty()) throw ConfigError("live mode requires SEARCH_API_KEY");
  }
}

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    out[key] = trim(t.substr(eq + 1));
  }
  return out;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value,
                   const std::filesystem::path& base_dir) {
  auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown config key '" + key + "'");
  it->second(config, key, value, base_dir);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> kKeys = [] {
    std::vector<std::string> keys;
    for (const auto& [k, v] : setters()) keys.push_back(k);
    return keys;
  }();
  return kKeys;
}

RunConfig load_run_config(const std::optional<std::filesystem::path>& file,
                          const std::map<std::string, std::string>& overrides,
                          const EnvLookup& env) {
  RunConfig config;

  std::optional<std::filesystem::path> path = file;
  if (!path) {
    if (auto from_env = env("TEMPORALEX_CONFIG"); from_env && !from_env->empty()) {
      path = *from_env;
    }
  }
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot open config file " + path->string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto base = path->parent_path();
    for (const auto& [key, value] : parse_key_values(buffer.str())) {
      apply_setting(config, key, value, base);
    }
  }

  for (const auto& key : config_keys()) {
    std::string var = "TEMPORALEX_" + key;
    std::transform(var.begin(), var.end(), var.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (auto value = env(var)) apply_setting(config, key, *value);
  }

  for (const auto& [key, value] : overrides) apply_setting(config, key, value);
  return config;
}

LabelConvention label_convention(const RunConfig& config) {
  return config.label_numerals == NumeralStyle::Chinese ? LabelConvention::chinese()
                                                        : LabelConvention{};
}

}  // namespace temporalex
