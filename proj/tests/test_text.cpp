// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "temporalex/embedder.hpp"
#include "temporalex/text.hpp"

namespace temporalex {
namespace {

TEST(TextTest, Utf8RoundTrip) {
  const std::string s = "Art. 74 缓刑 – ok";
  const auto cps = decode_utf8(s);
  EXPECT_EQ(encode_utf8(cps), s);
  EXPECT_EQ(codepoint_count(s), 15u);
  EXPECT_EQ(cps[8], U'缓');
}

TEST(TextTest, InvalidBytesBecomeReplacement) {
  const auto cps = decode_utf8(std::string("a\xff" "b"));
  ASSERT_EQ(cps.size(), 3u);
  EXPECT_EQ(cps[1], U'�');
}

TEST(TextTest, NormalizeFoldsAndCollapses) {
  EXPECT_EQ(normalize_text("  Intentional\t\tHOMICIDE \n"), "intentional homicide");
  EXPECT_EQ(fold_case("ÄBC"), "Äbc");
  EXPECT_EQ(trim(" \t x y \n"), "x y");
}

TEST(TextTest, TokenizeSplitsWordsAndIdeographs) {
  EXPECT_EQ(tokenize("Theft, of PROPERTY!"),
            (std::vector<std::string>{"theft", "of", "property"}));
  EXPECT_EQ(tokenize("盗窃罪 art74"),
            (std::vector<std::string>{"盗", "窃", "罪", "art74"}));
  EXPECT_TRUE(tokenize(" ,.;，。 ").empty());
}

TEST(EmbedderTest, SelfSimilarityIsOne) {
  HashedNgramEmbedder e;
  const auto v = e.embed("A convict granted probation shall report regularly");
  EXPECT_EQ(v.size(), 256u);
  EXPECT_NEAR(cosine_similarity(v, v), 1.0, 1e-12);
}

TEST(EmbedderTest, DisjointNgramsAreOrthogonal) {
  // A wide table keeps "aa" and "bb" in different buckets.
  HashedNgramEmbedder e({1u << 20, 2, 2});
  const auto a = e.embed("aaaa");
  const auto b = e.embed("bbbb");
  EXPECT_EQ(cosine_similarity(a, b), 0.0);
}

TEST(EmbedderTest, ZeroVectorAndMismatch) {
  HashedNgramEmbedder e;
  const auto empty = e.embed("");
  const auto v = e.embed("probation");
  EXPECT_EQ(cosine_similarity(empty, v), 0.0);
  const std::vector<double> shorter(3, 1.0);
  EXPECT_THROW(cosine_similarity(v, shorter), EmbedderError);
}

TEST(EmbedderTest, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

}  // namespace
}  // namespace temporalex
