// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include "temporalex/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "temporalex/text.hpp"

namespace temporalex {
namespace {

using json = nlohmann::json;

std::string required_string(const json& obj, const char* field,
                            std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end()) {
    throw IngestError(line, field, "missing required field");
  }
  if (!it->is_string()) {
    throw IngestError(line, field, "expected a string");
  }
  return it->get<std::string>();
}

Date required_date(const json& obj, const char* field, std::size_t line) {
  const std::string s = required_string(obj, field, line);
  auto d = Date::parse(s);
  if (!d) throw IngestError(line, field, "not a YYYY-MM-DD date: " + s);
  return *d;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexFormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IndexFormatError("cannot write " + path.string());
  out << data;
  if (!out) throw IndexFormatError("write failed for " + path.string());
}

json statistics_to_json(const TermStatistics& stats) {
  json postings = json::object();
  for (const auto& [term, list] : stats.postings) {
    json arr = json::array();
    for (const auto& p : list) arr.push_back({p.doc, p.tf});
    postings[term] = std::move(arr);
  }
  return {{"postings", std::move(postings)},
          {"doc_lengths", stats.doc_lengths},
          {"average_length", stats.average_length}};
}

TermStatistics statistics_from_json(const json& j) {
  TermStatistics stats;
  for (const auto& [term, arr] : j.at("postings").items()) {
    std::vector<TermPosting> list;
    list.reserve(arr.size());
    for (const auto& p : arr) {
      list.push_back({p.at(0).get<ProvisionId>(), p.at(1).get<std::uint32_t>()});
    }
    stats.postings.emplace(term, std::move(list));
  }
  stats.doc_lengths = j.at("doc_lengths").get<std::vector<std::uint32_t>>();
  stats.average_length = j.at("average_length").get<double>();
  return stats;
}

}  // namespace

std::string ProvisionVersion::key() const {
  return statute_id + "/" + article_label + "/" + version_id;
}

std::size_t TermStatistics::document_frequency(std::string_view term) const {
  const auto* list = find(term);
  return list ? list->size() : 0;
}

const std::vector<TermPosting>* TermStatistics::find(
    std::string_view term) const {
  auto it = postings.find(term);
  return it == postings.end() ? nullptr : &it->second;
}

IngestError::IngestError(std::size_t line, std::string field,
                         const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", field '" + field +
                         "': " + message),
      line_(line),
      field_(std::move(field)) {}

CorpusIndex CorpusIndex::build(std::vector<ProvisionVersion> provisions,
                               const Embedder& embedder) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < provisions.size(); ++i) {
    const auto& p = provisions[i];
    const std::size_t line = i + 1;
    if (p.statute_id.empty()) throw IngestError(line, "statute_id", "empty");
    if (p.article_label.empty()) {
      throw IngestError(line, "article_label", "empty");
    }
    if (p.version_id.empty()) throw IngestError(line, "version_id", "empty");
    if (trim(p.text).empty()) throw IngestError(line, "text", "empty text");
    if (!p.window.well_formed()) {
      throw IngestError(line, "t_to",
                        "window violation: t_from " +
                            p.window.from.to_string() + " is after t_to " +
                            p.window.to->to_string());
    }
    if (!seen.insert(p.key()).second) {
      throw IngestError(line, "version_id",
                        "duplicate (statute_id, article_label, version_id): " +
                            p.key());
    }
  }

  CorpusIndex index;
  index.stats_ = compute_statistics(provisions);
  index.embedder_name_ = embedder.name();
  index.embedding_dimension_ = embedder.dimension();
  index.embeddings_.reserve(provisions.size());
  for (const auto& p : provisions) {
    index.embeddings_.push_back(embedder.embed(p.text));
  }
  index.provisions_ = std::move(provisions);
  index.rebuild_article_map();
  return index;
}

TermStatistics CorpusIndex::compute_statistics(
    const std::vector<ProvisionVersion>& provisions) {
  TermStatistics stats;
  stats.doc_lengths.reserve(provisions.size());
  double total = 0.0;
  for (std::size_t i = 0; i < provisions.size(); ++i) {
    const auto tokens = tokenize(provisions[i].text);
    stats.doc_lengths.push_back(static_cast<std::uint32_t>(tokens.size()));
    total += static_cast<double>(tokens.size());
    std::map<std::string_view, std::uint32_t> tf;
    for (const auto& t : tokens) ++tf[t];
    for (const auto& [term, count] : tf) {
      auto it = stats.postings.find(term);
      if (it == stats.postings.end()) {
        it = stats.postings.emplace(std::string(term), std::vector<TermPosting>{})
                 .first;
      }
      it->second.push_back({static_cast<ProvisionId>(i), count});
    }
  }
  stats.average_length =
      provisions.empty() ? 0.0 : total / static_cast<double>(provisions.size());
  return stats;
}

void CorpusIndex::rebuild_article_map() {
  by_article_.clear();
  for (std::size_t i = 0; i < provisions_.size(); ++i) {
    const auto& p = provisions_[i];
    by_article_[{p.statute_id, p.article_label}].push_back(
        static_cast<ProvisionId>(i));
  }
  for (auto& [key, ids] : by_article_) {
    std::stable_sort(ids.begin(), ids.end(), [&](ProvisionId a, ProvisionId b) {
      return provisions_[a].window.from < provisions_[b].window.from;
    });
  }
}

std::vector<ProvisionId> CorpusIndex::versions_of(
    std::string_view statute_id, std::string_view article_label) const {
  auto it = by_article_.find(
      {std::string(statute_id), std::string(article_label)});
  if (it == by_article_.end()) return {};
  return it->second;
}

ProvisionVersion parse_corpus_record(std::string_view line,
                                     std::size_t line_number) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw IngestError(line_number, "<record>",
                      std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) {
    throw IngestError(line_number, "<record>", "record is not an object");
  }
  ProvisionVersion p;
  p.statute_id = required_string(obj, "statute_id", line_number);
  p.article_label = required_string(obj, "article_label", line_number);
  p.version_id = required_string(obj, "version_id", line_number);
  p.text = required_string(obj, "text", line_number);
  if (trim(p.text).empty()) {
    throw IngestError(line_number, "text", "empty text");
  }
  p.window.from = required_date(obj, "t_from", line_number);
  if (auto it = obj.find("t_to"); it != obj.end() && !it->is_null()) {
    p.window.to = required_date(obj, "t_to", line_number);
    if (*p.window.to < p.window.from) {
      throw IngestError(line_number, "t_to",
                        "window violation: t_from " +
                            p.window.from.to_string() + " is after t_to " +
                            p.window.to->to_string());
    }
  }
  if (auto it = obj.find("predecessor_label");
      it != obj.end() && !it->is_null()) {
    if (!it->is_string()) {
      throw IngestError(line_number, "predecessor_label", "expected a string");
    }
    p.predecessor_label = it->get<std::string>();
  }
  return p;
}

std::vector<ProvisionVersion> read_corpus_records(std::istream& in) {
  std::vector<ProvisionVersion> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto p = parse_corpus_record(line, line_number);
    if (!seen.insert(p.key()).second) {
      throw IngestError(line_number, "version_id",
                        "duplicate (statute_id, article_label, version_id): " +
                            p.key());
    }
    out.push_back(std::move(p));
  }
  return out;
}

CorpusIndex ingest_corpus(std::istream& in, const Embedder& embedder) {
  return CorpusIndex::build(read_corpus_records(in), embedder);
}

CorpusIndex ingest_corpus_file(const std::filesystem::path& path,
                               const Embedder& embedder) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError(0, "<file>", "cannot open " + path.string());
  return ingest_corpus(in, embedder);
}

std::string to_record_line(const ProvisionVersion& p) {
  json obj = {{"statute_id", p.statute_id},
              {"article_label", p.article_label},
              {"version_id", p.version_id},
              {"text", p.text},
              {"t_from", p.window.from.to_string()},
              {"t_to", p.window.to ? json(p.window.to->to_string()) : json()}};
  if (p.predecessor_label) obj["predecessor_label"] = *p.predecessor_label;
  return obj.dump();
}

ValidationReport validate_corpus(const CorpusIndex& index) {
  ValidationReport report;
  std::map<std::pair<std::string, std::string>, std::vector<ProvisionId>>
      groups;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto& p = index.provision(static_cast<ProvisionId>(i));
    groups[{p.statute_id, p.article_label}].push_back(
        static_cast<ProvisionId>(i));
  }
  for (auto& [key, ids] : groups) {
    std::stable_sort(ids.begin(), ids.end(), [&](ProvisionId a, ProvisionId b) {
      return index.provision(a).window.from < index.provision(b).window.from;
    });
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto& wa = index.provision(ids[i]).window;
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        const auto& wb = index.provision(ids[j]).window;
        if (!wa.overlaps(wb)) continue;
        // wb.from >= wa.from by sort order; an open intersection is
        // reported up to 9999-12-31.
        Date end = *Date::from_ymd(9999, 12, 31);
        if (wa.to) end = std::min(end, *wa.to);
        if (wb.to) end = std::min(end, *wb.to);
        report.overlaps.push_back({ids[i], ids[j], {wb.from, end}});
      }
    }
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
      const auto& prev = index.provision(ids[i]).window;
      const auto& next = index.provision(ids[i + 1]).window;
      if (!prev.to) continue;
      if (next.from > prev.to->next_day()) {
        report.gaps.push_back(
            {ids[i], ids[i + 1], {prev.to->next_day(), next.from.previous_day()}});
      }
    }
  }
  return report;
}

std::optional<ProvisionId> effective_at(const CorpusIndex& index,
                                        std::string_view statute_id,
                                        std::string_view article_label,
                                        Date date) {
  const auto ids = index.versions_of(statute_id, article_label);
  for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
    if (index.provision(*it).window.contains(date)) return *it;
  }
  return std::nullopt;
}

void save_index(const CorpusIndex& index, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::string records;
  for (const auto& p : index.provisions()) {
    records += to_record_line(p);
    records += '\n';
  }
  json emb = json::array();
  for (const auto& v : index.embeddings()) emb.push_back(v);
  const json manifest = {{"format", "temporalex-index"},
                         {"format_version", kIndexFormatVersion},
                         {"provision_count", index.size()},
                         {"embedder", index.embedder_name()},
                         {"embedding_dimension", index.embedding_dimension()},
                         {"files",
                          {"provisions.jsonl", "statistics.json",
                           "embeddings.json"}}};
  write_file(dir / "provisions.jsonl", records);
  write_file(dir / "statistics.json", statistics_to_json(index.statistics()).dump());
  write_file(dir / "embeddings.json", emb.dump());
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

CorpusIndex load_index(const std::filesystem::path& dir) {
  json manifest;
  try {
    manifest = json::parse(read_file(dir / "manifest.json"));
  } catch (const json::exception& e) {
    throw IndexFormatError(std::string("bad manifest: ") + e.what());
  }
  if (manifest.value("format", "") != "temporalex-index") {
    throw IndexFormatError("not a temporalex index: " + dir.string());
  }
  const int version = manifest.value("format_version", 0);
  if (version != kIndexFormatVersion) {
    throw IndexFormatError("unsupported index format version " +
                           std::to_string(version));
  }

  CorpusIndex index;
  {
    std::istringstream in(read_file(dir / "provisions.jsonl"));
    index.provisions_ = read_corpus_records(in);
  }
  try {
    index.stats_ =
        statistics_from_json(json::parse(read_file(dir / "statistics.json")));
    const json emb = json::parse(read_file(dir / "embeddings.json"));
    index.embeddings_ = emb.get<std::vector<Embedding>>();
    index.embedder_name_ = manifest.at("embedder").get<std::string>();
    index.embedding_dimension_ =
        manifest.at("embedding_dimension").get<std::size_t>();
  } catch (const json::exception& e) {
    throw IndexFormatError(std::string("bad index payload: ") + e.what());
  }
  const std::size_t n = index.provisions_.size();
  if (manifest.value("provision_count", std::size_t{0}) != n ||
      index.stats_.doc_lengths.size() != n || index.embeddings_.size() != n) {
    throw IndexFormatError("index files disagree on provision count");
  }
  for (const auto& v : index.embeddings_) {
    if (v.size() != index.embedding_dimension_) {
      throw IndexFormatError("embedding dimension mismatch in index");
    }
  }
  index.rebuild_article_map();
  return index;
}

}  // namespace temporalex
