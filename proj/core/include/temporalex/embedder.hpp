// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace temporalex {

using Embedding = std::vector<double>;

class EmbedderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maps text to a fixed-dimension vector. Implementations must be
/// deterministic and safe to call concurrently.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::string name() const = 0;
  virtual std::size_t dimension() const = 0;
  /// Throws EmbedderError on failure.
  virtual Embedding embed(std::string_view text) const = 0;
};

struct NgramEmbedderSpec {
  std::size_t dimension = 256;
  std::size_t ngram_min = 2;
  std::size_t ngram_max = 3;

  friend bool operator==(const NgramEmbedderSpec&,
                         const NgramEmbedderSpec&) = default;
};

/// Hashed character n-gram term-frequency vectors over the normalized text.
/// Each n-gram (in code points) is hashed with 64-bit FNV-1a of its UTF-8
/// bytes and counted into bucket hash % dimension.
class HashedNgramEmbedder final : public Embedder {
 public:
  explicit HashedNgramEmbedder(NgramEmbedderSpec spec = {});

  std::string name() const override { return "hashed-char-ngram"; }
  std::size_t dimension() const override { return spec_.dimension; }
  Embedding embed(std::string_view text) const override;

  const NgramEmbedderSpec& spec() const { return spec_; }

 private:
  NgramEmbedderSpec spec_;
};

std::uint64_t fnv1a64(std::string_view bytes);

/// Cosine similarity; 0 when either vector has zero norm. Throws
/// EmbedderError on a dimension mismatch.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

}  // namespace temporalex
