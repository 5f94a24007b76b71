// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "temporalex/agent.hpp"
#include "temporalex/tools.hpp"

namespace temporalex {

/// Replays fixed outputs by round; rounds past the end repeat the last one.
class ScriptedPolicy final : public Policy {
 public:
  explicit ScriptedPolicy(std::vector<std::string> outputs);
  std::string generate(const PolicyContext& context) const override;

 private:
  std::vector<std::string> outputs_;
};

class FunctionPolicy final : public Policy {
 public:
  using Fn = std::function<std::string(const PolicyContext&)>;
  explicit FunctionPolicy(Fn fn);
  std::string generate(const PolicyContext& context) const override { return fn_(context); }

 private:
  Fn fn_;
};

/// Plans, queries rag_retrieve once with the item's temporal context and
/// question, then answers from the top provision: its text for recitation
/// items, or the option letter whose text that provision contains.
class GroundedPolicy final : public Policy {
 public:
  std::string generate(const PolicyContext& context) const override;

  static std::string retrieval_query(const BenchmarkItem& item);
  /// Answer derived from a rag_retrieve response; empty when nothing fits.
  static std::string answer_from(const BenchmarkItem& item, std::string_view tool_response);
};

struct HttpPolicyOptions {
  /// OpenAI-compatible completions endpoint.
  std::string endpoint = "http://127.0.0.1:8000/v1/completions";
  std::string model = "policy";
  std::string api_key_env = "TEMPORALEX_POLICY_API_KEY";
  int max_tokens = 2048;
  int timeout_seconds = 120;
};

/// Remote text-generation backend. Sends the rendered state as the prompt
/// with temperature 0 and returns choices[0].text.
class HttpPolicy final : public Policy {
 public:
  HttpPolicy(HttpPolicyOptions options, NetworkGuard& guard);
  std::string generate(const PolicyContext& context) const override;

 private:
  HttpPolicyOptions options_;
  NetworkGuard& guard_;
};

}  // namespace temporalex
