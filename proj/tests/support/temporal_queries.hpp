// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "temporalex/agent.hpp"

namespace temporalex::testing {

struct LabeledQuery {
  std::string tool;
  std::string query;
  bool temporal;
};

/// Hand-labeled search-tool queries. A query is temporal when it names a
/// year (1900-2099) or a full calendar date.
inline const std::vector<LabeledQuery>& labeled_queries() {
  static const std::vector<LabeledQuery> queries = {
      {"web_search", "Article 3 of the 2014 Administrative Penalty Law", true},
      {"web_search", "intentional homicide", false},
      {"web_search", "theft sentencing standards 2021", true},
      {"web_search", "Criminal Law Article 264", false},
      {"web_search", "labor contract probation period", false},
      {"web_search", "2009年刑法修正案", true},
      {"web_search", "judicial interpretation issued 2013-04-02", true},
      {"web_search", "Article 1142 Civil Code", false},
      {"web_search", "drunk driving penalty 2011", true},
      {"web_search", "case number (2019)京01刑终123号", true},
      {"rag_retrieve", "2010 probation conditions Article 74", true},
      {"rag_retrieve", "probation conditions Article 74", false},
      {"rag_retrieve", "notarized will validity 2004", true},
      {"rag_retrieve", "Civil Code Article 1134 holographic will", false},
      {"rag_retrieve", "fine of 5000 yuan for fraud", false},
      {"rag_retrieve", "statute in force on 2020/12/31", true},
      {"rag_retrieve", "Article 2100 rules", false},
      {"rag_retrieve", "compensation 12345 yuan", false},
      {"rag_retrieve", "合同法第52条 1999年", true},
      {"rag_retrieve", "penalties in 1899", false},
  };
  return queries;
}

/// Spreads the labeled queries over three trajectories, mixing single and
/// multi-query tool calls.
inline std::vector<Trajectory> labeled_query_trajectories() {
  const auto& qs = labeled_queries();
  std::vector<Trajectory> out(3);
  std::size_t i = 0;
  std::size_t t = 0;
  while (i < qs.size()) {
    const std::size_t batch = (i % 3 == 0) ? 2 : 1;
    nlohmann::json list = nlohmann::json::array();
    const std::string tool = qs[i].tool;
    for (std::size_t k = 0; k < batch && i < qs.size() && qs[i].tool == tool; ++k, ++i) {
      list.push_back(qs[i].query);
    }
    Step step{"look it up", std::nullopt,
              ToolCallAction{{tool, nlohmann::json{{"query", list}}}}, std::string("ok")};
    out[t % out.size()].steps.push_back(std::move(step));
    ++t;
  }
  // Non-search tools and answers must not be counted.
  out[0].steps.push_back({"read", std::nullopt,
                          ToolCallAction{{"browse_webpage",
                                          nlohmann::json{{"url_list", {"https://x/2010"}}}}},
                          std::string("ok")});
  out[0].steps.push_back({"done", std::nullopt, AnswerAction{"In 2010 the rule was C"}, std::nullopt});
  return out;
}

}  // namespace temporalex::testing
