// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "support/generators.hpp"
#include "temporalex/config.hpp"
#include "temporalex/service.hpp"

namespace temporalex {
namespace {

using json = nlohmann::json;

std::unique_ptr<ServiceCore> bundled_core(std::map<std::string, std::string> overrides = {}) {
  const auto config = load_run_config(std::filesystem::path(testing::kDataDir) / "fixture.conf",
                                      overrides, [](const std::string&) { return std::nullopt; });
  return ServiceCore::from_config(config);
}

TEST(ServiceCoreTest, RetrieveFollowsQueryYear) {
  const auto core = bundled_core();
  const auto r2010 = core->retrieve({{"query", "2010 probation conditions Article 74"}});
  ASSERT_FALSE(r2010["hits"].empty());
  EXPECT_EQ(r2010["hits"][0]["version_id"], "2009");
  const auto r2024 = core->retrieve({{"query", "2024 probation conditions Article 74"}});
  EXPECT_EQ(r2024["hits"][0]["version_id"], "2023");
  EXPECT_EQ(r2024["analysis"]["time_info"][0][0], "2024-01-01");
}

TEST(ServiceCoreTest, TimeHintAndK) {
  const auto core = bundled_core();
  const auto r = core->retrieve({{"query", "probation conditions Article 74"},
                                 {"time_hint", json::array({json::array({"2010-06-01", "2010-06-30"})})},
                                 {"k", 1}});
  ASSERT_EQ(r["hits"].size(), 1u);
  EXPECT_EQ(r["hits"][0]["version_id"], "2009");
}

TEST(ServiceCoreTest, RequestErrorsNameTheField) {
  const auto core = bundled_core();
  auto field_of = [&](const json& body) {
    try {
      core->retrieve(body);
    } catch (const RequestError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of(json::array()), "body");
  EXPECT_EQ(field_of({{"k", 2}}), "query");
  EXPECT_EQ(field_of({{"query", ""}}), "query");
  EXPECT_EQ(field_of({{"query", 3}}), "query");
  EXPECT_EQ(field_of({{"query", "q"}, {"k", 0}}), "k");
  EXPECT_EQ(field_of({{"query", "q"}, {"k", "3"}}), "k");
  EXPECT_EQ(field_of({{"query", "q"}, {"time_hint", json::array({json::array({"2010-13-01", "2010-12-31"})})}}), "time_hint");
  EXPECT_EQ(field_of({{"query", "q"}, {"time_hint", "2010"}}), "time_hint");
  EXPECT_EQ(field_of({{"query", "q"}, {"extra", 1}}), "extra");
}

TEST(ServiceCoreTest, ProvisionLookup) {
  const auto core = bundled_core();
  const auto hit = core->provision("criminal-law", "Article 74", "2015-05-05");
  EXPECT_TRUE(hit["found"]);
  EXPECT_EQ(hit["provision"]["version_id"], "2009");
  const auto miss = core->provision("criminal-law", "Article 74", "2001-01-01");
  EXPECT_FALSE(miss["found"]);
  EXPECT_TRUE(miss["provision"].is_null());
  EXPECT_THROW(core->provision("criminal-law", "Article 74", "yesterday"), RequestError);
  EXPECT_EQ(core->health()["provisions"], 13);
}

TEST(ServiceCoreTest, NeedsCorpusOrIndex) {
  EXPECT_THROW(ServiceCore::from_config(RunConfig{}), ConfigError);
}

class ServiceHttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    core_ = bundled_core();
    service_ = std::make_unique<Service>(*core_);
    port_ = service_->start("127.0.0.1", 0);
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override { service_->stop(); }

  std::unique_ptr<ServiceCore> core_;
  std::unique_ptr<Service> service_;
  std::unique_ptr<httplib::Client> client_;
  int port_ = 0;
};

TEST_F(ServiceHttpTest, RetrieveMatchesCore) {
  const json body = {{"query", "2010 probation Article 74"}};
  auto res = client_->Post("/retrieve", body.dump(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body), core_->retrieve(body));
}

TEST_F(ServiceHttpTest, BadRequests) {
  auto res = client_->Post("/retrieve", "{not json", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  res = client_->Post("/retrieve", R"({"query": "q", "k": -1})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["field"], "k");
  res = client_->Post("/analyze", R"({"q": "x"})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
}

TEST_F(ServiceHttpTest, AnalyzeProvisionHealth) {
  auto res = client_->Post("/analyze", R"({"query": "2024 theft"})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(json::parse(res->body)["time_info"][0][1], "2024-12-31");

  res = client_->Get("/provision/civil-code/Article%201134?date=2022-01-01");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["provision"]["predecessor_label"], "Article 17");

  res = client_->Get("/provision/civil-code/Article%201134");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);

  res = client_->Get("/health");
  ASSERT_TRUE(res);
  EXPECT_EQ(json::parse(res->body)["status"], "ok");
}

}  // namespace
}  // namespace temporalex
