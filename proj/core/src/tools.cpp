// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include "temporalex/tools.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>

#include "temporalex/text.hpp"

namespace temporalex {
namespace {

using json = nlohmann::json;

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::string string_field(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j[key].is_string()) {
    throw std::invalid_argument(std::string("fixture field '") + key + "' must be a string");
  }
  return j[key].get<std::string>();
}

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;  // /path?query
};

Endpoint split_url(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw std::invalid_argument("url has no scheme: " + std::string(url));
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string_view::npos) return {std::string(url), "/"};
  return {std::string(url.substr(0, path_start)), std::string(url.substr(path_start))};
}

/// First `limit` code points of text, with an ellipsis if cut.
std::string clip(std::string_view text, std::size_t limit) {
  const auto cps = decode_utf8(text);
  if (cps.size() <= limit) return std::string(text);
  return encode_utf8(std::u32string_view(cps).substr(0, limit)) + "...";
}

std::vector<std::string> string_list(const json& value) {
  std::vector<std::string> out;
  for (const auto& v : value) out.push_back(v.get<std::string>());
  return out;
}

std::optional<std::string> between_tags(std::string_view text, std::string_view tag) {
  const std::string open = "<" + std::string(tag) + ">";
  const std::string close = "</" + std::string(tag) + ">";
  const auto b = text.find(open);
  if (b == std::string_view::npos) return std::nullopt;
  const auto e = text.find(close, b + open.size());
  if (e == std::string_view::npos) return std::nullopt;
  return trim(text.substr(b + open.size(), e - b - open.size()));
}

}  // namespace

ToolRequest parse_tool_request(std::string_view payload) {
  json j;
  try {
    j = json::parse(payload);
  } catch (const json::parse_error&) {
    throw ToolRequestError("tool request is not valid JSON");
  }
  if (!j.is_object()) throw ToolRequestError("tool request must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "name" && key != "arguments") {
      throw ToolRequestError("unexpected key '" + key + "' in tool request");
    }
  }
  if (!j.contains("name") || !j["name"].is_string() ||
      j["name"].get<std::string>().empty()) {
    throw ToolRequestError("tool request needs a non-empty string 'name'");
  }
  if (!j.contains("arguments") || !j["arguments"].is_object()) {
    throw ToolRequestError("tool request needs an object 'arguments'");
  }
  return {j["name"].get<std::string>(), j["arguments"]};
}

std::string to_wire(const ToolRequest& request) {
  return json{{"name", request.name}, {"arguments", request.arguments}}.dump();
}

std::optional<std::string> schema_violation(const ToolRequest& request) {
  std::string field;
  if (request.name == kWebSearch || request.name == kRagRetrieve) {
    field = "query";
  } else if (request.name == kBrowseWebpage) {
    field = "url_list";
  } else {
    return "unknown tool '" + request.name + "'";
  }
  const auto& args = request.arguments;
  if (!args.is_object()) return request.name + ": arguments must be an object";
  for (const auto& [key, value] : args.items()) {
    if (key != field) return request.name + ": unexpected argument '" + key + "'";
  }
  if (!args.contains(field)) return request.name + ": missing argument '" + field + "'";
  const auto& list = args[field];
  if (!list.is_array()) return request.name + "." + field + " must be a list of strings";
  if (list.empty()) return request.name + "." + field + " must not be empty";
  for (const auto& item : list) {
    if (!item.is_string()) return request.name + "." + field + " must be a list of strings";
    if (trim(item.get<std::string>()).empty()) {
      return request.name + "." + field + " contains an empty string";
    }
  }
  return std::nullopt;
}

void ContextStore::record(std::string query, std::vector<SearchResult> results) {
  entries_.push_back({std::move(query), std::move(results)});
}

bool ContextStore::knows_url(std::string_view url) const {
  for (const auto& entry : entries_) {
    for (const auto& r : entry.results) {
      if (r.url == url) return true;
    }
  }
  return false;
}

void NetworkGuard::check(std::string_view operation) {
  ++attempts_;
  if (!allow_) {
    throw NetworkDenied("network access denied: " + std::string(operation));
  }
}

FixtureSearchClient::FixtureSearchClient(const json& fixture) {
  if (!fixture.is_object()) {
    throw std::invalid_argument("search fixture must map query text to result lists");
  }
  for (const auto& [query, list] : fixture.items()) {
    if (!list.is_array()) {
      throw std::invalid_argument("search fixture entry for '" + query + "' must be a list");
    }
    std::vector<SearchResult> results;
    for (const auto& r : list) {
      results.push_back({string_field(r, "title"), string_field(r, "url"),
                         string_field(r, "snippet")});
    }
    results_.emplace(query, std::move(results));
  }
}

FixtureSearchClient FixtureSearchClient::from_file(const std::filesystem::path& path) {
  return FixtureSearchClient(read_json_file(path));
}

std::vector<SearchResult> FixtureSearchClient::search(std::string_view query,
                                                      std::size_t top_k) const {
  auto it = results_.find(query);
  if (it == results_.end()) return {};
  auto out = it->second;
  if (out.size() > top_k) out.resize(top_k);
  return out;
}

HttpSearchClient::HttpSearchClient(HttpSearchOptions options, NetworkGuard& guard)
    : options_(std::move(options)), guard_(guard) {}

std::vector<SearchResult> HttpSearchClient::search(std::string_view query,
                                                   std::size_t top_k) const {
  const char* key = std::getenv(options_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw ToolConfigError(options_.api_key_env + " is not set");
  }
  guard_.check("search " + options_.endpoint);

  const auto endpoint = split_url(options_.endpoint);
  httplib::Client client(endpoint.base);
  client.set_connection_timeout(options_.timeout_seconds);
  client.set_read_timeout(options_.timeout_seconds);
  const json body = {{"q", std::string(query)}, {"num", top_k}};
  auto res = client.Post(endpoint.path, httplib::Headers{{"X-API-KEY", key}},
                         body.dump(), "application/json");
  if (!res) {
    throw std::runtime_error("search request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw std::runtime_error("search API returned HTTP " + std::to_string(res->status));
  }
  const json reply = json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.is_object()) {
    throw std::runtime_error("search API returned malformed JSON");
  }
  std::vector<SearchResult> out;
  if (reply.contains("organic") && reply["organic"].is_array()) {
    for (const auto& r : reply["organic"]) {
      if (out.size() >= top_k) break;
      out.push_back({r.value("title", ""), r.value("link", ""), r.value("snippet", "")});
    }
  }
  return out;
}

FixturePageSource::FixturePageSource(const json& fixture) {
  if (!fixture.is_object()) {
    throw std::invalid_argument("page fixture must map urls to page lists");
  }
  for (const auto& [url, doc] : fixture.items()) {
    if (!doc.is_object() || !doc.contains("pages") || !doc["pages"].is_array()) {
      throw std::invalid_argument("page fixture entry for '" + url + "' needs a 'pages' list");
    }
    std::vector<FetchedPage> pages;
    for (const auto& p : doc["pages"]) {
      FetchedPage page{string_field(p, "text"), std::nullopt};
      if (p.contains("page_down")) page.has_more = p["page_down"].get<bool>();
      pages.push_back(std::move(page));
    }
    pages_.emplace(url, std::move(pages));
  }
}

FixturePageSource FixturePageSource::from_file(const std::filesystem::path& path) {
  return FixturePageSource(read_json_file(path));
}

std::optional<FetchedPage> FixturePageSource::page(std::string_view url,
                                                   std::size_t index) const {
  auto it = pages_.find(url);
  if (it == pages_.end()) throw std::runtime_error("no fixture page for url");
  if (index >= it->second.size()) return std::nullopt;
  return it->second[index];
}

HttpPageSource::HttpPageSource(NetworkGuard& guard, std::size_t page_chars)
    : guard_(guard), page_chars_(page_chars == 0 ? 4000 : page_chars) {}

std::optional<FetchedPage> HttpPageSource::page(std::string_view url,
                                                std::size_t index) const {
  guard_.check("fetch " + std::string(url));
  const auto endpoint = split_url(url);
  httplib::Client client(endpoint.base);
  client.set_follow_location(true);
  auto res = client.Get(endpoint.path);
  if (!res) throw std::runtime_error("fetch failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw std::runtime_error("fetch returned HTTP " + std::to_string(res->status));
  }
  const auto cps = decode_utf8(res->body);
  const std::size_t begin = index * page_chars_;
  if (begin >= cps.size()) return std::nullopt;
  const std::size_t end = std::min(cps.size(), begin + page_chars_);
  return FetchedPage{encode_utf8(std::u32string_view(cps).substr(begin, end - begin)),
                     end < cps.size()};
}

PageExtraction VerbatimReader::read(const ReadRequest& request) const {
  PageExtraction out;
  if (request.page == nullptr) return out;
  out.extracted_info = request.page->text;
  out.page_down = request.page->has_more.value_or(false);
  out.short_summary = clip(trim(request.page->text), 80);
  return out;
}

CompletionReader::CompletionReader(CompletionFn complete) : complete_(std::move(complete)) {
  if (!complete_) throw std::invalid_argument("completion function is empty");
}

std::string CompletionReader::build_prompt(const ReadRequest& request) {
  std::ostringstream prompt;
  prompt << "Read one page of a web document for a legal research task.\n"
         << "Copy statutory text exactly as written; never reword it. Keep "
            "effective dates, version labels and amendment history. Record "
            "court decisions and commentary in full when relevant, and only "
            "report what the context below does not already contain.\n"
         << "Reply with <extracted_info>...</extracted_info>, "
            "<page_down>yes|no</page_down> and <short_summary>...</short_summary>.\n\n"
         << "Question: " << request.question << "\n"
         << "Known so far:\n" << request.context << "\n"
         << "URL: " << request.url << " (page " << request.page_index + 1 << ")\n"
         << "Page:\n" << (request.page ? request.page->text : std::string()) << "\n";
  return prompt.str();
}

PageExtraction CompletionReader::parse_reply(std::string_view reply) {
  auto info = between_tags(reply, "extracted_info");
  auto down = between_tags(reply, "page_down");
  auto summary = between_tags(reply, "short_summary");
  if (!info || !down || !summary) {
    throw ToolRequestError("reader reply is missing a required block");
  }
  const std::string flag = fold_case(*down);
  if (flag != "yes" && flag != "no") {
    throw ToolRequestError("reader page_down must be yes or no");
  }
  return {*info, flag == "yes", *summary};
}

PageExtraction CompletionReader::read(const ReadRequest& request) const {
  return parse_reply(complete_(build_prompt(request)));
}

std::string web_search(const std::vector<std::string>& queries,
                       const SearchClient& client, ContextStore& store,
                       std::size_t top_k) {
  std::ostringstream out;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    if (q) out << "\n";
    out << "Query: " << queries[q] << "\n";
    std::vector<SearchResult> results;
    try {
      results = client.search(queries[q], top_k);
    } catch (const ToolConfigError& e) {
      out << "error: configuration: " << e.what() << "\n";
      continue;
    } catch (const std::exception& e) {
      out << "error: search failed: " << e.what() << "\n";
      continue;
    }
    if (results.empty()) out << "No results.\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      out << "[" << i + 1 << "] " << results[i].title << "\n"
          << "URL: " << results[i].url << "\n"
          << results[i].snippet << "\n";
    }
    store.record(queries[q], std::move(results));
  }
  return out.str();
}

std::vector<BrowseDigest> browse_pages(const std::vector<std::string>& urls,
                                       const PageSource& source,
                                       const ReaderBackend& reader,
                                       const ToolSession& session,
                                       std::size_t page_cap) {
  std::vector<BrowseDigest> out;
  for (const auto& url : urls) {
    BrowseDigest digest{url, {}, std::nullopt};
    if (!session.store.knows_url(url)) {
      digest.error = "url not in prior results; browse only urls returned by web_search";
      out.push_back(std::move(digest));
      continue;
    }
    std::string context;
    try {
      for (std::size_t i = 0; i < page_cap; ++i) {
        auto page = source.page(url, i);
        if (!page) break;
        ReadRequest request{session.question, context, url, i, &*page};
        auto extraction = reader.read(request);
        context += extraction.short_summary + "\n";
        const bool more = extraction.page_down;
        digest.pages.push_back(std::move(extraction));
        if (!more) break;
      }
    } catch (const std::exception& e) {
      digest.error = std::string("fetch failed: ") + e.what();
    }
    out.push_back(std::move(digest));
  }
  return out;
}

std::string format_browse(const std::vector<BrowseDigest>& digests) {
  std::ostringstream out;
  for (std::size_t i = 0; i < digests.size(); ++i) {
    const auto& d = digests[i];
    if (i) out << "\n";
    out << "URL: " << d.url << "\n";
    for (const auto& page : d.pages) out << page.extracted_info << "\n";
    if (d.error) out << "error: " << *d.error << "\n";
  }
  return out.str();
}

std::string browse_webpage(const std::vector<std::string>& urls,
                           const PageSource& source, const ReaderBackend& reader,
                           const ToolSession& session, std::size_t page_cap) {
  return format_browse(browse_pages(urls, source, reader, session, page_cap));
}

std::string format_provisions(std::string_view query, const std::vector<FusedHit>& hits) {
  std::ostringstream out;
  out << "Query: " << query << "\n";
  if (hits.empty()) {
    out << "No provisions found.\n";
    return out.str();
  }
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const auto& h = hits[i];
    if (i) out << "\n";
    out << "[" << i + 1 << "] " << h.statute_id << " | " << h.article_label
        << " | version " << h.version_id << " | in force " << h.window.describe() << "\n"
        << "Text: " << h.text << "\n";
  }
  return out.str();
}

std::string rag_retrieve(const std::vector<std::string>& queries,
                         const RetrievalEngine& engine, const RetrievalConfig& config) {
  std::ostringstream out;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    if (q) out << "\n";
    out << format_provisions(queries[q], engine.retrieve(queries[q], {}, config).hits);
  }
  return out.str();
}

std::vector<std::string> ToolRegistry::available() const {
  std::vector<std::string> names;
  if (page_source && reader) names.emplace_back(kBrowseWebpage);
  if (engine) names.emplace_back(kRagRetrieve);
  if (search_client) names.emplace_back(kWebSearch);
  return names;
}

bool ToolRegistry::has(std::string_view name) const {
  for (const auto& n : available()) {
    if (n == name) return true;
  }
  return false;
}

std::string ToolRegistry::dispatch(const ToolRequest& request, ToolSession& session) const {
  try {
    if (!has(request.name)) {
      std::string names;
      for (const auto& n : available()) names += (names.empty() ? "" : ", ") + n;
      return "error: unknown tool '" + request.name + "'; valid tools: " + names;
    }
    if (auto violation = schema_violation(request)) {
      return "error: schema violation: " + *violation;
    }
    if (request.name == kWebSearch) {
      return web_search(string_list(request.arguments["query"]), *search_client,
                        session.store, web_top_k);
    }
    if (request.name == kBrowseWebpage) {
      return browse_webpage(string_list(request.arguments["url_list"]), *page_source,
                            *reader, session, page_cap);
    }
    return rag_retrieve(string_list(request.arguments["query"]), *engine, retrieval_config);
  } catch (const std::exception& e) {
    return std::string("error: ") + request.name + " failed: " + e.what();
  }
}

}  // namespace temporalex
