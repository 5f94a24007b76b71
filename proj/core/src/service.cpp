// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include "temporalex/service.hpp"

#include <thread>

#include <httplib.h>

namespace temporalex {

using json = nlohmann::json;

RequestError::RequestError(std::string field, const std::string& message)
    : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

ServiceCore::ServiceCore(CorpusIndex index, PatternAnalyzerOptions analyzer,
                         NgramEmbedderSpec embedder, RetrievalConfig retrieval)
    : index_(std::move(index)),
      analyzer_(std::move(analyzer)),
      embedder_(embedder),
      retrieval_(retrieval),
      engine_(index_, analyzer_, embedder_) {
  retrieval_.validate();
  if (!index_.empty() && index_.embedding_dimension() != embedder_.dimension()) {
    throw std::invalid_argument("index embeddings have dimension " +
                                std::to_string(index_.embedding_dimension()) +
                                " but the embedder produces " +
                                std::to_string(embedder_.dimension()));
  }
}

std::unique_ptr<ServiceCore> ServiceCore::from_config(const RunConfig& config) {
  HashedNgramEmbedder embedder(config.embedder);
  CorpusIndex index;
  if (!config.index_dir.empty()) {
    index = load_index(config.index_dir);
  } else if (!config.corpus.empty()) {
    index = ingest_corpus_file(config.corpus, embedder);
  } else {
    throw ConfigError("no corpus or index configured");
  }
  PatternAnalyzerOptions analyzer{label_convention(config), config.reference_date};
  return std::make_unique<ServiceCore>(std::move(index), std::move(analyzer), config.embedder,
                                       config.retrieval);
}

json provision_json(ProvisionId id, const ProvisionVersion& p) {
  json j = {{"id", id},
            {"statute_id", p.statute_id},
            {"article_label", p.article_label},
            {"version_id", p.version_id},
            {"t_from", p.window.from.to_string()},
            {"text", p.text}};
  j["t_to"] = p.window.to ? json(p.window.to->to_string()) : json();
  j["predecessor_label"] = p.predecessor_label ? json(*p.predecessor_label) : json();
  return j;
}

namespace {

std::string require_query(const json& body) {
  if (!body.is_object()) throw RequestError("body", "must be a JSON object");
  if (!body.contains("query")) throw RequestError("query", "is required");
  if (!body["query"].is_string()) throw RequestError("query", "must be a string");
  const auto q = body["query"].get<std::string>();
  if (q.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw RequestError("query", "must not be empty");
  }
  return q;
}

}  // namespace

json ServiceCore::retrieve(const json& body) const {
  const std::string query = require_query(body);
  for (const auto& [key, value] : body.items()) {
    if (key != "query" && key != "time_hint" && key != "k") {
      throw RequestError(key, "unknown field");
    }
  }

  std::vector<DateInterval> hint;
  if (body.contains("time_hint") && !body["time_hint"].is_null()) {
    const auto& th = body["time_hint"];
    if (!th.is_array()) throw RequestError("time_hint", "must be a list of [start, end] pairs");
    for (const auto& pair : th) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
        throw RequestError("time_hint", "entries must be [start, end] date strings");
      }
      auto s = Date::parse(pair[0].get<std::string>());
      auto e = Date::parse(pair[1].get<std::string>());
      if (!s || !e) throw RequestError("time_hint", "dates must be YYYY-MM-DD");
      if (*e < *s) throw RequestError("time_hint", "start is after end");
      hint.push_back({*s, *e});
    }
  }

  RetrievalConfig config = retrieval_;
  if (body.contains("k") && !body["k"].is_null()) {
    if (!body["k"].is_number_integer() || body["k"].get<long long>() < 1) {
      throw RequestError("k", "must be a positive integer");
    }
    config.top_k = static_cast<std::size_t>(body["k"].get<long long>());
  }

  const auto result = engine_.retrieve(query, hint, config);
  json hits = json::array();
  for (const auto& h : result.hits) hits.push_back(to_json(h));
  return {{"query", query}, {"analysis", to_json(result.analysis)}, {"hits", std::move(hits)}};
}

json ServiceCore::analyze(const json& body) const {
  const std::string query = require_query(body);
  for (const auto& [key, value] : body.items()) {
    if (key != "query") throw RequestError(key, "unknown field");
  }
  return to_json(analyze_query(query, analyzer_));
}

json ServiceCore::provision(const std::string& statute, const std::string& article,
                            const std::string& date) const {
  if (date.empty()) throw RequestError("date", "is required");
  const auto d = Date::parse(date);
  if (!d) throw RequestError("date", "must be YYYY-MM-DD");
  const auto id = effective_at(index_, statute, article, *d);
  json out = {{"statute_id", statute}, {"article_label", article}, {"date", d->to_string()},
              {"found", id.has_value()}};
  out["provision"] = id ? provision_json(*id, index_.provision(*id)) : json();
  return out;
}

json ServiceCore::health() const {
  return {{"status", "ok"}, {"provisions", index_.size()}};
}

struct Service::Impl {
  const ServiceCore& core;
  httplib::Server server;
  std::thread thread;

  explicit Impl(const ServiceCore& c) : core(c) {}
};

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& field,
                const std::string& message) {
  send_json(res, status, {{"error", message}, {"field", field}});
}

template <typename Fn>
void handle(httplib::Response& res, Fn&& fn) {
  try {
    send_json(res, 200, fn());
  } catch (const RequestError& e) {
    send_error(res, 400, e.field(), e.what());
  } catch (const std::invalid_argument& e) {
    send_error(res, 400, "query", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "", e.what());
  }
}

json parse_body(const httplib::Request& req) {
  auto body = json::parse(req.body, nullptr, false);
  if (body.is_discarded()) throw RequestError("body", "is not valid JSON");
  return body;
}

}  // namespace

Service::Service(const ServiceCore& core) : impl_(std::make_unique<Impl>(core)) {
  auto& s = impl_->server;
  const ServiceCore& c = core;
  s.Post("/retrieve", [&c](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] { return c.retrieve(parse_body(req)); });
  });
  s.Post("/analyze", [&c](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] { return c.analyze(parse_body(req)); });
  });
  s.Get(R"(/provision/([^/]+)/([^/]+))", [&c](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] {
      return c.provision(req.matches[1].str(), req.matches[2].str(),
                         req.has_param("date") ? req.get_param_value("date") : std::string());
    });
  });
  s.Get("/health", [&c](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, c.health());
  });
}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void Service::listen() { impl_->server.listen_after_bind(); }

int Service::start(const std::string& host, int port) {
  const int bound = bind(host, port);
  impl_->thread = std::thread([this] { listen(); });
  impl_->server.wait_until_ready();
  return bound;
}

void Service::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace temporalex
