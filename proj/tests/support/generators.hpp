// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "temporalex/corpus.hpp"
#include "temporalex/date.hpp"

namespace temporalex::testing {

inline const std::string kDataDir = TEMPORALEX_DATA_DIR;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words = {
      "probation", "theft",    "contract", "will",     "testator", "court",   "sentence",
      "property",  "fraud",    "void",     "license",  "vehicle",  "alcohol", "spouse",
      "children",  "parents",  "labor",    "period",   "months",   "years",   "fine",
      "custody",   "evidence", "appeal",   "notarized", "witness", "damages", "lease",
      "盗窃",       "合同",      "遗嘱",      "缓刑",       "罚金",       "继承"};
  return words;
}

inline std::string random_text(Rng& rng, int min_words, int max_words) {
  const int n = rng.uniform(min_words, max_words);
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += rng.pick(vocabulary());
  }
  return out;
}

inline Date random_date(Rng& rng, int first_year = 1980, int last_year = 2030) {
  const auto lo = Date::from_ymd(first_year, 1, 1)->serial();
  const auto hi = Date::from_ymd(last_year, 12, 31)->serial();
  return Date::from_serial(rng.uniform(lo, hi));
}

/// Provisions with unique keys, random texts and random (possibly open)
/// windows. Windows of the same article may overlap; retrieval does not care.
inline std::vector<ProvisionVersion> random_provisions(Rng& rng, int n) {
  std::vector<ProvisionVersion> out;
  for (int i = 0; i < n; ++i) {
    ProvisionVersion p;
    p.statute_id = "statute-" + std::to_string(rng.uniform(0, 4));
    p.article_label = "Article " + std::to_string(rng.uniform(1, 12));
    p.version_id = "v" + std::to_string(i);
    p.text = random_text(rng, 3, 14);
    p.window.from = random_date(rng);
    if (rng.coin(0.7)) {
      p.window.to = Date::from_serial(p.window.from.serial() + rng.uniform(0, 4000));
    }
    out.push_back(std::move(p));
  }
  return out;
}

inline ProvisionVersion provision(std::string statute, std::string label, std::string version,
                                  std::string text, const char* from, const char* to) {
  ProvisionVersion p;
  p.statute_id = std::move(statute);
  p.article_label = std::move(label);
  p.version_id = std::move(version);
  p.text = std::move(text);
  p.window.from = *Date::parse(from);
  if (to) p.window.to = *Date::parse(to);
  return p;
}

inline DateInterval interval(const char* a, const char* b) {
  return {*Date::parse(a), *Date::parse(b)};
}

}  // namespace temporalex::testing
