// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include <csignal>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "temporalex/agent.hpp"
#include "temporalex/config.hpp"
#include "temporalex/corpus.hpp"
#include "temporalex/grpo.hpp"
#include "temporalex/policies.hpp"
#include "temporalex/runtime.hpp"
#include "temporalex/scoring.hpp"
#include "temporalex/service.hpp"

namespace {

using json = nlohmann::json;
using namespace temporalex;

struct GlobalOptions {
  std::string config_file;
  std::vector<std::string> settings;
  std::string corpus;
  std::string index;
  std::string items;
};

RunConfig load_config(const GlobalOptions& g, std::map<std::string, std::string> extra = {}) {
  std::map<std::string, std::string> overrides;
  for (const auto& s : g.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects KEY=VALUE, got '" + s + "'");
    overrides[s.substr(0, eq)] = s.substr(eq + 1);
  }
  if (!g.corpus.empty()) overrides["corpus"] = g.corpus;
  if (!g.index.empty()) overrides["index"] = g.index;
  if (!g.items.empty()) overrides["items"] = g.items;
  for (auto& [k, v] : extra) overrides[k] = std::move(v);
  std::optional<std::filesystem::path> file;
  if (!g.config_file.empty()) file = g.config_file;
  return load_run_config(file, overrides);
}

std::vector<BenchmarkItem> load_items(const RunConfig& config) {
  if (config.items.empty()) throw ConfigError("no items file configured (--items)");
  return read_items_file(config.items);
}

std::string window_text(const TemporalWindow& w) {
  return w.from.to_string() + " to " + (w.to ? w.to->to_string() : std::string("present"));
}

int cmd_ingest(const GlobalOptions& g, const std::string& out) {
  const RunConfig config = load_config(g);
  if (config.corpus.empty()) throw ConfigError("no corpus configured (--corpus)");
  HashedNgramEmbedder embedder(config.embedder);
  const CorpusIndex index = ingest_corpus_file(config.corpus, embedder);
  save_index(index, out);
  std::cout << "indexed " << index.size() << " provisions into " << out << "\n";
  return 0;
}

int cmd_validate(const GlobalOptions& g) {
  const auto core = ServiceCore::from_config(load_config(g));
  const auto& index = core->index();
  const ValidationReport report = validate_corpus(index);
  for (const auto& o : report.overlaps) {
    std::cout << "overlap: " << index.provision(o.first).key() << " and "
              << index.provision(o.second).key() << " share " << o.intersection.start.to_string()
              << " to " << o.intersection.end.to_string() << "\n";
  }
  for (const auto& gap : report.gaps) {
    std::cout << "gap: " << index.provision(gap.before).key() << " to "
              << index.provision(gap.after).key() << " leaves "
              << gap.uncovered.start.to_string() << " to " << gap.uncovered.end.to_string()
              << " uncovered\n";
  }
  std::cout << index.size() << " provisions, " << report.overlaps.size() << " overlaps, "
            << report.gaps.size() << " gaps\n";
  return report.empty() ? 0 : 1;
}

int cmd_analyze(const GlobalOptions& g, const std::string& query) {
  const auto core = ServiceCore::from_config(load_config(g));
  std::cout << core->analyze(json{{"query", query}}).dump() << "\n";
  return 0;
}

int cmd_retrieve(const GlobalOptions& g, const std::string& query, std::optional<long long> k,
                 const std::vector<std::string>& hints, bool as_json) {
  const auto core = ServiceCore::from_config(load_config(g));
  json body = {{"query", query}};
  if (k) body["k"] = *k;
  if (!hints.empty()) {
    json th = json::array();
    for (const auto& h : hints) {
      const auto colon = h.find(':');
      if (colon == std::string::npos) {
        throw RequestError("time_hint", "expected START:END, got '" + h + "'");
      }
      th.push_back({h.substr(0, colon), h.substr(colon + 1)});
    }
    body["time_hint"] = th;
  }
  const json result = core->retrieve(body);
  if (as_json) {
    std::cout << result.dump() << "\n";
    return 0;
  }
  const auto& hits = result["hits"];
  if (hits.empty()) std::cout << "no provisions found\n";
  std::size_t rank = 1;
  for (const auto& h : hits) {
    const auto& p = core->index().provision(h["id"].get<ProvisionId>());
    std::cout << rank++ << ". " << p.statute_id << " | " << p.article_label << " | version "
              << p.version_id << " | " << window_text(p.window) << " | score "
              << h["score"].get<double>() << "\n   " << p.text << "\n";
  }
  return 0;
}

struct PolicyChoice {
  std::string kind = "grounded";
  std::string script;
};

std::unique_ptr<Policy> make_policy(const PolicyChoice& choice, const RunConfig& config,
                                    NetworkGuard& guard) {
  if (choice.kind == "grounded") return std::make_unique<GroundedPolicy>();
  if (choice.kind == "scripted") {
    if (choice.script.empty()) throw ConfigError("--policy scripted needs --script FILE");
    std::ifstream in(choice.script);
    if (!in) throw ConfigError("cannot open script " + choice.script);
    const json outputs = json::parse(in);
    return std::make_unique<ScriptedPolicy>(outputs.get<std::vector<std::string>>());
  }
  if (choice.kind == "http") {
    HttpPolicyOptions options;
    options.endpoint = config.policy_endpoint;
    return std::make_unique<HttpPolicy>(options, guard);
  }
  throw ConfigError("unknown policy '" + choice.kind + "'; use grounded, scripted or http");
}

struct RunOutput {
  std::vector<BenchmarkItem> items;
  BatchResult batch;
  std::size_t network_attempts = 0;
};

RunOutput run_items(const RunConfig& config, const PolicyChoice& choice, bool allow_network) {
  config.validate(process_env());
  const auto core = ServiceCore::from_config(config);
  NetworkGuard guard(allow_network || config.tool_mode == ToolMode::Live);
  const auto runtime = make_tool_runtime(config, *core, guard);
  const auto policy = make_policy(choice, config, guard);
  RunOutput out;
  out.items = load_items(config);
  out.batch = run_batch(out.items, *policy, runtime->registry, rollout_options(config),
                        config.workers);
  out.network_attempts = guard.attempts();
  for (const auto& f : out.batch.failures) {
    std::cerr << "rollout " << f.item_id << " failed: " << f.message << "\n";
  }
  return out;
}

std::filesystem::path output_path(const RunConfig& config, const std::string& given,
                                  const std::string& fallback) {
  if (!given.empty()) return given;
  std::filesystem::create_directories(config.output_dir);
  return config.output_dir / fallback;
}

int cmd_rollout(const GlobalOptions& g, const PolicyChoice& choice, const std::string& out,
                bool allow_network) {
  const RunConfig config = load_config(g);
  const RunOutput run = run_items(config, choice, allow_network);
  const auto path = output_path(config, out, "trajectories.jsonl");
  write_trajectories_file(path, run.batch.trajectories);
  std::cout << "wrote " << run.batch.trajectories.size() << " trajectories to " << path.string()
            << "\n";
  return run.batch.failures.empty() ? 0 : 1;
}

void print_report(const ScoreReport& report, bool as_json) {
  if (as_json) {
    std::cout << to_json(report).dump(2) << "\n";
  } else {
    std::cout << format_report_table(report);
  }
}

int cmd_score(const GlobalOptions& g, const std::string& trajectories, bool as_json) {
  const RunConfig config = load_config(g);
  const auto items = load_items(config);
  const auto runs = read_trajectories_file(trajectories);
  const ScoreReport report = evaluate_run(runs, items, PhraseJudge{}, config.scoring);
  if (!as_json) {
    for (const auto& s : report.items) {
      std::cout << s.id << "\t" << task_name(s.task) << "\tformat="
                << (s.format_valid ? "ok" : "invalid") << "\treward=" << s.reward << "\tmetric="
                << (s.metric ? std::to_string(*s.metric) : std::string("unscored"));
      if (!s.diagnostic.empty()) std::cout << "\t" << s.diagnostic;
      std::cout << "\n";
    }
    std::cout << "\n";
  }
  print_report(report, as_json);
  return 0;
}

int cmd_bench(const GlobalOptions& g, const std::string& mode, const PolicyChoice& choice,
              const std::string& out, bool as_json) {
  if (mode != "fixture" && mode != "live") {
    throw ConfigError("--mode must be fixture or live, got '" + mode + "'");
  }
  const RunConfig config = load_config(g, {{"tool_mode", mode}});
  const RunOutput run = run_items(config, choice, false);
  if (!out.empty()) write_trajectories_file(out, run.batch.trajectories);
  const ScoreReport report =
      evaluate_run(run.batch.trajectories, run.items, PhraseJudge{}, config.scoring);
  print_report(report, as_json);
  if (!as_json) std::cout << "network operations: " << run.network_attempts << "\n";
  return run.batch.failures.empty() ? 0 : 1;
}

int cmd_advantages(const GlobalOptions& g, const std::string& group_file) {
  const RunConfig config = load_config(g);
  std::ifstream in(group_file);
  if (!in) throw ConfigError("cannot open group file " + group_file);
  const RolloutGroup group = group_from_json(json::parse(in));
  std::cout << to_json(analyze_group(group, config.shaping)).dump(2) << "\n";
  return 0;
}

Service* g_service = nullptr;

void handle_signal(int) {
  if (g_service) g_service->stop();
}

int cmd_serve(const GlobalOptions& g, const std::string& host, int port) {
  const auto core = ServiceCore::from_config(load_config(g));
  Service service(*core);
  const int bound = service.bind(host, port);
  std::cout << "listening on " << host << ":" << bound << std::endl;
  g_service = &service;
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  service.listen();
  g_service = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporally versioned statute retrieval and agentic search evaluation"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("-c,--config", g.config_file, "Config file (default: $TEMPORALEX_CONFIG)");
  app.add_option("--set", g.settings, "Override a config key, KEY=VALUE");

  auto add_corpus = [&g](CLI::App* sub) {
    sub->add_option("--corpus", g.corpus, "Corpus file (JSONL)");
    sub->add_option("--index", g.index, "Index directory written by ingest");
  };

  std::string ingest_out;
  auto* ingest = app.add_subcommand("ingest", "Build an index from a corpus file");
  ingest->add_option("--corpus", g.corpus, "Corpus file (JSONL)");
  ingest->add_option("-o,--out", ingest_out, "Index directory")->required();

  auto* validate = app.add_subcommand("validate", "Report overlapping windows and coverage gaps");
  add_corpus(validate);

  std::string query;
  auto* analyze = app.add_subcommand("analyze", "Print the structured analysis of a query");
  add_corpus(analyze);
  analyze->add_option("-q,--query", query, "Query text")->required();

  std::optional<long long> k;
  std::vector<std::string> hints;
  bool as_json = false;
  auto* retrieve = app.add_subcommand("retrieve", "Print the top-k provisions for a query");
  add_corpus(retrieve);
  retrieve->add_option("-q,--query", query, "Query text")->required();
  retrieve->add_option("-k,--k", k, "Number of hits");
  retrieve->add_option("--time-hint", hints, "Extra interval START:END (YYYY-MM-DD)");
  retrieve->add_flag("--json", as_json, "Print the service JSON response");

  PolicyChoice policy;
  std::string out;
  bool allow_network = false;
  auto add_policy = [&](CLI::App* sub) {
    add_corpus(sub);
    sub->add_option("--items", g.items, "Benchmark items (JSONL)");
    sub->add_option("--policy", policy.kind, "grounded, scripted or http")
        ->check(CLI::IsMember({"grounded", "scripted", "http"}));
    sub->add_option("--script", policy.script, "JSON list of outputs for --policy scripted");
    sub->add_option("-o,--out", out, "Trajectory output file (JSONL)");
  };

  auto* rollout = app.add_subcommand("rollout", "Run a policy over benchmark items");
  add_policy(rollout);
  rollout->add_flag("--allow-network", allow_network, "Permit network calls in fixture mode");

  std::string trajectories;
  auto* score = app.add_subcommand("score", "Score a trajectory file against its items");
  score->add_option("--items", g.items, "Benchmark items (JSONL)");
  score->add_option("-t,--trajectories", trajectories, "Trajectory file (JSONL)")->required();
  score->add_flag("--json", as_json, "Print the report as JSON");

  std::string mode = "fixture";
  auto* bench = app.add_subcommand("bench", "Roll out and score the benchmark; print the table");
  add_policy(bench);
  bench->add_option("--mode", mode, "fixture or live")->capture_default_str();
  bench->add_flag("--json", as_json, "Print the report as JSON");

  std::string group_file;
  auto* advantages = app.add_subcommand("advantages", "Compute shaped advantages for a group file");
  advantages->add_option("-g,--group", group_file, "Group file (JSON)")->required();

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Start the HTTP retrieval service");
  add_corpus(serve);
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "Port; 0 picks a free one")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return cmd_ingest(g, ingest_out);
    if (*validate) return cmd_validate(g);
    if (*analyze) return cmd_analyze(g, query);
    if (*retrieve) return cmd_retrieve(g, query, k, hints, as_json);
    if (*rollout) return cmd_rollout(g, policy, out, allow_network);
    if (*score) return cmd_score(g, trajectories, as_json);
    if (*bench) return cmd_bench(g, mode, policy, out, as_json);
    if (*advantages) return cmd_advantages(g, group_file);
    if (*serve) return cmd_serve(g, host, port);
  } catch (const IngestError& e) {
    std::cerr << "error: corpus line " << e.line() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
