// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "temporalex/config.hpp"
#include "temporalex/corpus.hpp"
#include "temporalex/embedder.hpp"
#include "temporalex/query_analyzer.hpp"
#include "temporalex/retrieval.hpp"

namespace temporalex {

/// A client mistake in a request body, reported as HTTP 400.
class RequestError : public std::runtime_error {
 public:
  RequestError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// JSON request handlers shared by the CLI and the HTTP service, so both
/// surfaces produce identical output for identical input.
class ServiceCore {
 public:
  ServiceCore(CorpusIndex index, PatternAnalyzerOptions analyzer, NgramEmbedderSpec embedder,
              RetrievalConfig retrieval);

  /// Loads config.index_dir when set, otherwise ingests config.corpus.
  static std::unique_ptr<ServiceCore> from_config(const RunConfig& config);

  /// {query, time_hint?: [[start, end], ...], k?} ->
  /// {query, analysis, hits: [...]}
  nlohmann::json retrieve(const nlohmann::json& body) const;
  /// {query} -> QueryAnalysis object
  nlohmann::json analyze(const nlohmann::json& body) const;
  /// Version in force on `date` -> {found, provision?}
  nlohmann::json provision(const std::string& statute, const std::string& article,
                           const std::string& date) const;
  nlohmann::json health() const;

  const CorpusIndex& index() const { return index_; }
  const RetrievalEngine& engine() const { return engine_; }
  const RetrievalConfig& retrieval_config() const { return retrieval_; }
  const AnalyzerBackend& analyzer() const { return analyzer_; }

 private:
  CorpusIndex index_;
  PatternAnalyzer analyzer_;
  HashedNgramEmbedder embedder_;
  RetrievalConfig retrieval_;
  RetrievalEngine engine_;
};

nlohmann::json provision_json(ProvisionId id, const ProvisionVersion& p);

/// HTTP front end over a ServiceCore:
///   POST /retrieve, POST /analyze, GET /provision/{statute}/{article}?date=,
///   GET /health.
class Service {
 public:
  explicit Service(const ServiceCore& core);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds host:port (port 0 picks a free one) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void listen();
  /// bind() then serve on a background thread.
  int start(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace temporalex
