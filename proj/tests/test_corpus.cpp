// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "temporalex/corpus.hpp"
#include "temporalex/text.hpp"

namespace temporalex {
namespace {

using testing::provision;

std::vector<ProvisionVersion> article74() {
  return {provision("criminal-law", "Article 74", "2009",
                    "A convict on probation shall report to the supervising authority.",
                    "2009-02-28", "2011-04-30"),
          provision("criminal-law", "Article 74", "2023",
                    "Probation conditions include electronic monitoring.", "2023-03-01",
                    nullptr)};
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("temporalex-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

TEST(CorpusTest, IngestsTwoRecords) {
  std::istringstream in(
      R"({"statute_id":"s","article_label":"Article 1","version_id":"a","text":"alpha beta","t_from":"2000-01-01","t_to":"2004-12-31"})"
      "\n\n"
      R"({"statute_id":"s","article_label":"Article 1","version_id":"b","text":"beta gamma","t_from":"2005-01-01"})"
      "\n");
  HashedNgramEmbedder e;
  const auto index = ingest_corpus(in, e);
  ASSERT_EQ(index.size(), 2u);
  EXPECT_FALSE(index.provision(1).window.to);
  EXPECT_EQ(index.statistics().document_frequency("beta"), 2u);
  EXPECT_EQ(index.statistics().document_frequency("alpha"), 1u);
  EXPECT_EQ(index.statistics().doc_lengths, (std::vector<std::uint32_t>{2, 2}));
  EXPECT_EQ(index.embeddings().size(), 2u);
}

TEST(CorpusTest, RejectsInvertedWindowWithLineAndField) {
  std::istringstream in(
      R"({"statute_id":"s","article_label":"Article 1","version_id":"a","text":"x","t_from":"2000-01-01"})"
      "\n"
      R"({"statute_id":"s","article_label":"Article 2","version_id":"a","text":"x","t_from":"2011-05-01","t_to":"2011-04-30"})"
      "\n");
  HashedNgramEmbedder e;
  try {
    ingest_corpus(in, e);
    FAIL() << "expected IngestError";
  } catch (const IngestError& err) {
    EXPECT_EQ(err.line(), 2u);
    EXPECT_EQ(err.field(), "t_to");
  }
}

TEST(CorpusTest, RejectsMalformedRecords) {
  HashedNgramEmbedder e;
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"not json", "<record>"},
      {R"(["array"])", "<record>"},
      {R"({"article_label":"A","version_id":"v","text":"x","t_from":"2000-01-01"})", "statute_id"},
      {R"({"statute_id":"s","article_label":"A","version_id":"v","text":"  ","t_from":"2000-01-01"})", "text"},
      {R"({"statute_id":"s","article_label":"A","version_id":"v","text":"x","t_from":"2000-02-30"})", "t_from"},
      {R"({"statute_id":"s","article_label":"A","version_id":"v","text":"x","t_from":"2000-01-01","predecessor_label":3})", "predecessor_label"},
  };
  for (const auto& [line, field] : cases) {
    std::istringstream in(line);
    try {
      ingest_corpus(in, e);
      ADD_FAILURE() << "accepted: " << line;
    } catch (const IngestError& err) {
      EXPECT_EQ(err.field(), field) << line;
      EXPECT_EQ(err.line(), 1u);
    }
  }
}

TEST(CorpusTest, RejectsDuplicateKeys) {
  auto ps = article74();
  ps.push_back(ps[0]);
  HashedNgramEmbedder e;
  EXPECT_THROW(CorpusIndex::build(ps, e), IngestError);
}

TEST(CorpusTest, FixtureHasTwoDisjointVersions) {
  HashedNgramEmbedder e;
  const auto index = CorpusIndex::build(article74(), e);
  const auto ids = index.versions_of("criminal-law", "Article 74");
  ASSERT_EQ(ids.size(), 2u);
  EXPECT_FALSE(index.provision(ids[0]).window.overlaps(index.provision(ids[1]).window));
}

TEST(CorpusTest, EffectiveAt) {
  HashedNgramEmbedder e;
  const auto index = CorpusIndex::build(article74(), e);
  EXPECT_EQ(effective_at(index, "criminal-law", "Article 74", *Date::parse("2010-06-01")), 0u);
  EXPECT_EQ(effective_at(index, "criminal-law", "Article 74", *Date::parse("2024-01-01")), 1u);
  EXPECT_FALSE(effective_at(index, "criminal-law", "Article 74", *Date::parse("2000-01-01")));
  EXPECT_FALSE(effective_at(index, "criminal-law", "Article 74", *Date::parse("2015-01-01")));
  EXPECT_FALSE(effective_at(index, "civil-code", "Article 74", *Date::parse("2024-01-01")));
}

TEST(CorpusTest, ValidateDisjointFixtureReportsOnlyTheGap) {
  HashedNgramEmbedder e;
  const auto index = CorpusIndex::build(
      {provision("s", "A", "1", "x", "2000-01-01", "2004-12-31"),
       provision("s", "A", "2", "y", "2005-01-01", nullptr)},
      e);
  EXPECT_TRUE(validate_corpus(index).empty());
}

TEST(CorpusTest, ValidateFindsOverlap) {
  HashedNgramEmbedder e;
  const auto index = CorpusIndex::build(
      {provision("s", "A", "1", "x", "2009-01-01", "2012-12-31"),
       provision("s", "A", "2", "y", "2011-01-01", nullptr)},
      e);
  const auto report = validate_corpus(index);
  ASSERT_EQ(report.overlaps.size(), 1u);
  EXPECT_EQ(report.overlaps[0].intersection, testing::interval("2011-01-01", "2012-12-31"));
  EXPECT_TRUE(report.gaps.empty());
}

TEST(CorpusTest, ValidateFindsGap) {
  HashedNgramEmbedder e;
  const auto index = CorpusIndex::build(
      {provision("s", "A", "2", "y", "2015-01-01", nullptr),
       provision("s", "A", "1", "x", "2009-01-01", "2011-12-31")},
      e);
  const auto report = validate_corpus(index);
  EXPECT_TRUE(report.overlaps.empty());
  ASSERT_EQ(report.gaps.size(), 1u);
  EXPECT_EQ(report.gaps[0].before, 1u);
  EXPECT_EQ(report.gaps[0].after, 0u);
  EXPECT_EQ(report.gaps[0].uncovered, testing::interval("2012-01-01", "2014-12-31"));
}

TEST(CorpusTest, StatisticsMatchHandCount) {
  testing::Rng rng(3);
  const auto ps = testing::random_provisions(rng, 40);
  const auto stats = CorpusIndex::compute_statistics(ps);
  double total = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto toks = tokenize(ps[i].text);
    EXPECT_EQ(stats.doc_lengths[i], toks.size());
    total += static_cast<double>(toks.size());
    for (const auto& t : toks) {
      const auto* postings = stats.find(t);
      ASSERT_NE(postings, nullptr);
      std::uint32_t tf = 0;
      for (const auto& x : toks) tf += x == t;
      bool found = false;
      for (const auto& p : *postings) {
        if (p.doc == i) {
          found = true;
          EXPECT_EQ(p.tf, tf);
        }
      }
      EXPECT_TRUE(found);
    }
  }
  EXPECT_DOUBLE_EQ(stats.average_length, total / static_cast<double>(ps.size()));
}

TEST(CorpusTest, SaveLoadRoundTrip) {
  testing::Rng rng(5);
  HashedNgramEmbedder e;
  const auto index = CorpusIndex::build(testing::random_provisions(rng, 30), e);
  const auto dir = scratch_dir("roundtrip");
  save_index(index, dir);
  const auto loaded = load_index(dir);
  EXPECT_EQ(loaded, index);
  EXPECT_EQ(loaded.versions_of("statute-1", "Article 3"), index.versions_of("statute-1", "Article 3"));
  std::filesystem::remove_all(dir);
}

TEST(CorpusTest, LoadRejectsUnknownFormatVersion) {
  HashedNgramEmbedder e;
  const auto index = CorpusIndex::build(article74(), e);
  const auto dir = scratch_dir("version");
  save_index(index, dir);
  std::ofstream(dir / "manifest.json") << R"({"format":"temporalex-index","format_version":99})";
  EXPECT_THROW(load_index(dir), IndexFormatError);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(load_index(dir), IndexFormatError);
}

TEST(CorpusTest, RecordLineRoundTrip) {
  for (const auto& p : article74()) {
    EXPECT_EQ(parse_corpus_record(to_record_line(p), 1), p);
  }
}

}  // namespace
}  // namespace temporalex
