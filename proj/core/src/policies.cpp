// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include "temporalex/policies.hpp"

#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "temporalex/text.hpp"

namespace temporalex {

ScriptedPolicy::ScriptedPolicy(std::vector<std::string> outputs)
    : outputs_(std::move(outputs)) {
  if (outputs_.empty()) throw std::invalid_argument("scripted policy needs at least one output");
}

std::string ScriptedPolicy::generate(const PolicyContext& context) const {
  return outputs_[std::min(context.round, outputs_.size() - 1)];
}

FunctionPolicy::FunctionPolicy(Fn fn) : fn_(std::move(fn)) {
  if (!fn_) throw std::invalid_argument("function policy needs a callable");
}

std::string GroundedPolicy::retrieval_query(const BenchmarkItem& item) {
  std::string q = item.temporal_context ? *item.temporal_context + " " : std::string();
  return q + item.question;
}

std::string GroundedPolicy::answer_from(const BenchmarkItem& item,
                                        std::string_view tool_response) {
  // The first "Text: " line belongs to the top-ranked provision.
  const auto at = tool_response.find("\nText: ");
  if (at == std::string_view::npos) return {};
  const auto begin = at + 7;
  const auto end = tool_response.find('\n', begin);
  const std::string top(tool_response.substr(
      begin, end == std::string_view::npos ? std::string_view::npos : end - begin));
  if (item.options.empty()) return top;

  const std::string haystack = normalize_text(top);
  std::string best;
  std::size_t best_len = 0;
  for (const auto& [letter, text] : item.options) {
    const std::string needle = normalize_text(text);
    if (!needle.empty() && haystack.find(needle) != std::string::npos &&
        needle.size() > best_len) {
      best = letter;
      best_len = needle.size();
    }
  }
  return best;
}

std::string GroundedPolicy::generate(const PolicyContext& context) const {
  const auto& item = context.item;
  const auto& steps = context.trajectory.steps;
  if (steps.empty()) {
    return "<think>The answer depends on the statute version in force at the time of the "
           "events, so the provision text has to come from the versioned corpus.</think>\n"
           "<plan>Query rag_retrieve with the year of the events, then answer from the "
           "top provision.</plan>";
  }
  if (steps.size() == 1) {
    const ToolRequest request{
        std::string(kRagRetrieve),
        nlohmann::json{{"query", nlohmann::json::array({retrieval_query(item)})}}};
    return "<think>Retrieve the provision in force at the relevant date.</think>\n"
           "<tool_call>" + to_wire(request) + "</tool_call>";
  }
  const auto& last = steps.back();
  const std::string response = last.tool_response.value_or("");
  return "<think>The top provision is the version in force at that date; answer from "
         "it.</think>\n<answer>" + answer_from(item, response) + "</answer>";
}

HttpPolicy::HttpPolicy(HttpPolicyOptions options, NetworkGuard& guard)
    : options_(std::move(options)), guard_(guard) {}

std::string HttpPolicy::generate(const PolicyContext& context) const {
  guard_.check("policy " + options_.endpoint);
  const auto scheme_end = options_.endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("policy endpoint has no scheme: " + options_.endpoint);
  }
  const auto path_start = options_.endpoint.find('/', scheme_end + 3);
  const std::string base = options_.endpoint.substr(0, path_start);
  const std::string path =
      path_start == std::string::npos ? "/" : options_.endpoint.substr(path_start);

  httplib::Client client(base);
  client.set_connection_timeout(options_.timeout_seconds);
  client.set_read_timeout(options_.timeout_seconds);
  httplib::Headers headers;
  if (const char* key = std::getenv(options_.api_key_env.c_str()); key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  const nlohmann::json body = {{"model", options_.model},
                               {"prompt", context.state},
                               {"max_tokens", options_.max_tokens},
                               {"temperature", 0}};
  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) throw std::runtime_error("policy request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw std::runtime_error("policy endpoint returned HTTP " + std::to_string(res->status));
  }
  const auto reply = nlohmann::json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("choices") || !reply["choices"].is_array() ||
      reply["choices"].empty() || !reply["choices"][0].contains("text")) {
    throw std::runtime_error("policy endpoint reply has no choices[0].text");
  }
  return reply["choices"][0]["text"].get<std::string>();
}

}  // namespace temporalex
