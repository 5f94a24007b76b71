// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include "temporalex/embedder.hpp"

#include <cmath>

#include "temporalex/text.hpp"

namespace temporalex {

HashedNgramEmbedder::HashedNgramEmbedder(NgramEmbedderSpec spec)
    : spec_(spec) {
  if (spec_.dimension == 0) {
    throw std::invalid_argument("embedding dimension must be positive");
  }
  if (spec_.ngram_min == 0 || spec_.ngram_min > spec_.ngram_max) {
    throw std::invalid_argument("invalid n-gram range");
  }
}

Embedding HashedNgramEmbedder::embed(std::string_view text) const {
  Embedding v(spec_.dimension, 0.0);
  const std::u32string cps = decode_utf8(normalize_text(text));
  for (std::size_t n = spec_.ngram_min; n <= spec_.ngram_max; ++n) {
    if (cps.size() < n) break;
    for (std::size_t i = 0; i + n <= cps.size(); ++i) {
      const std::string gram =
          encode_utf8(std::u32string_view(cps).substr(i, n));
      v[fnv1a64(gram) % spec_.dimension] += 1.0;
    }
  }
  return v;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw EmbedderError("embedding dimension mismatch: " +
                        std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  // sqrt(na * nb) rather than sqrt(na) * sqrt(nb): identical count vectors
  // then give exactly 1.
  return dot / std::sqrt(na * nb);
}

}  // namespace temporalex
