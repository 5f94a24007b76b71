// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "temporalex/retrieval.hpp"

namespace temporalex {

inline constexpr std::string_view kWebSearch = "web_search";
inline constexpr std::string_view kBrowseWebpage = "browse_webpage";
inline constexpr std::string_view kRagRetrieve = "rag_retrieve";

/// Wire form: {"name": ..., "arguments": {...}}.
struct ToolRequest {
  std::string name;
  nlohmann::json arguments;

  friend bool operator==(const ToolRequest&, const ToolRequest&) = default;
};

class ToolRequestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the tool_call payload. Requires an object with a string "name"
/// and an object "arguments" and nothing else; argument contents are
/// checked later by dispatch.
ToolRequest parse_tool_request(std::string_view payload);
std::string to_wire(const ToolRequest& request);

/// Checks arguments against the schema of the named tool. Returns a
/// diagnostic, or nullopt when the request conforms.
std::optional<std::string> schema_violation(const ToolRequest& request);

struct SearchResult {
  std::string title;
  std::string url;
  std::string snippet;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

/// Per-rollout log of issued search queries and their results.
class ContextStore {
 public:
  struct Entry {
    std::string query;
    std::vector<SearchResult> results;
  };

  void record(std::string query, std::vector<SearchResult> results);
  bool knows_url(std::string_view url) const;
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

class NetworkDenied : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every live client asks the guard before touching the network. A guard
/// built with allow=false throws NetworkDenied; both kinds count attempts.
class NetworkGuard {
 public:
  explicit NetworkGuard(bool allow) : allow_(allow) {}

  void check(std::string_view operation);
  std::size_t attempts() const { return attempts_.load(); }
  bool allowed() const { return allow_; }

 private:
  bool allow_;
  std::atomic<std::size_t> attempts_{0};
};

/// Missing credentials or similar setup problems.
class ToolConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SearchClient {
 public:
  virtual ~SearchClient() = default;
  /// Throws on failure; the web_search tool turns that into response text.
  virtual std::vector<SearchResult> search(std::string_view query,
                                           std::size_t top_k) const = 0;
};

/// Canned results keyed by exact query text. Unknown queries return no
/// results.
class FixtureSearchClient final : public SearchClient {
 public:
  /// {"query text": [{"title", "url", "snippet"}, ...], ...}
  explicit FixtureSearchClient(const nlohmann::json& fixture);
  static FixtureSearchClient from_file(const std::filesystem::path& path);

  std::vector<SearchResult> search(std::string_view query,
                                   std::size_t top_k) const override;

 private:
  std::map<std::string, std::vector<SearchResult>, std::less<>> results_;
};

struct HttpSearchOptions {
  std::string endpoint = "https://google.serper.dev/search";
  std::string api_key_env = "SEARCH_API_KEY";
  int timeout_seconds = 20;
};

/// Live client for a serper-style JSON search API.
class HttpSearchClient final : public SearchClient {
 public:
  HttpSearchClient(HttpSearchOptions options, NetworkGuard& guard);

  std::vector<SearchResult> search(std::string_view query,
                                   std::size_t top_k) const override;

 private:
  HttpSearchOptions options_;
  NetworkGuard& guard_;
};

struct FetchedPage {
  std::string text;
  /// Fixture metadata: whether another page follows.
  std::optional<bool> has_more;
};

class PageSource {
 public:
  virtual ~PageSource() = default;
  /// Page `index` (0-based) of `url`; nullopt past the last page. Throws
  /// on fetch failure.
  virtual std::optional<FetchedPage> page(std::string_view url,
                                          std::size_t index) const = 0;
};

/// {"url": {"pages": [{"text": ..., "page_down": bool}, ...]}, ...}
class FixturePageSource final : public PageSource {
 public:
  explicit FixturePageSource(const nlohmann::json& fixture);
  static FixturePageSource from_file(const std::filesystem::path& path);

  std::optional<FetchedPage> page(std::string_view url,
                                  std::size_t index) const override;

 private:
  std::map<std::string, std::vector<FetchedPage>, std::less<>> pages_;
};

/// Fetches a URL over HTTP(S) and serves the body in fixed-size pages.
class HttpPageSource final : public PageSource {
 public:
  HttpPageSource(NetworkGuard& guard, std::size_t page_chars = 4000);

  std::optional<FetchedPage> page(std::string_view url,
                                  std::size_t index) const override;

 private:
  NetworkGuard& guard_;
  std::size_t page_chars_;
};

struct PageExtraction {
  std::string extracted_info;
  bool page_down = false;
  std::string short_summary;

  friend bool operator==(const PageExtraction&, const PageExtraction&) = default;
};

struct ReadRequest {
  std::string question;
  std::string context;
  std::string url;
  std::size_t page_index = 0;
  const FetchedPage* page = nullptr;
};

class ReaderBackend {
 public:
  virtual ~ReaderBackend() = default;
  virtual PageExtraction read(const ReadRequest& request) const = 0;
};

/// Copies page text verbatim and takes page_down from page metadata.
class VerbatimReader final : public ReaderBackend {
 public:
  PageExtraction read(const ReadRequest& request) const override;
};

/// Reader driven by a completion function that answers with
/// <extracted_info>, <page_down> (yes/no) and <short_summary> blocks.
class CompletionReader final : public ReaderBackend {
 public:
  using CompletionFn = std::function<std::string(const std::string& prompt)>;

  explicit CompletionReader(CompletionFn complete);
  PageExtraction read(const ReadRequest& request) const override;

  static std::string build_prompt(const ReadRequest& request);
  /// Throws ToolRequestError when a block is missing.
  static PageExtraction parse_reply(std::string_view reply);

 private:
  CompletionFn complete_;
};

/// Everything a tool may touch that belongs to one rollout.
struct ToolSession {
  std::string question;
  ContextStore store;
};

std::string web_search(const std::vector<std::string>& queries,
                       const SearchClient& client, ContextStore& store,
                       std::size_t top_k);

struct BrowseDigest {
  std::string url;
  std::vector<PageExtraction> pages;
  std::optional<std::string> error;
};

std::vector<BrowseDigest> browse_pages(const std::vector<std::string>& urls,
                                       const PageSource& source,
                                       const ReaderBackend& reader,
                                       const ToolSession& session,
                                       std::size_t page_cap);
std::string format_browse(const std::vector<BrowseDigest>& digests);

std::string browse_webpage(const std::vector<std::string>& urls,
                           const PageSource& source, const ReaderBackend& reader,
                           const ToolSession& session, std::size_t page_cap);

std::string format_provisions(std::string_view query,
                              const std::vector<FusedHit>& hits);

std::string rag_retrieve(const std::vector<std::string>& queries,
                         const RetrievalEngine& engine,
                         const RetrievalConfig& config);

/// Routes requests to whichever backends are installed. Unset backends
/// make their tool unavailable.
class ToolRegistry {
 public:
  const SearchClient* search_client = nullptr;
  const PageSource* page_source = nullptr;
  const ReaderBackend* reader = nullptr;
  const RetrievalEngine* engine = nullptr;
  RetrievalConfig retrieval_config;
  std::size_t web_top_k = 10;
  std::size_t page_cap = 5;

  std::vector<std::string> available() const;
  bool has(std::string_view name) const;

  /// Never throws: unknown tools, schema violations and backend failures
  /// all come back as "error: ..." text.
  std::string dispatch(const ToolRequest& request, ToolSession& session) const;
};

}  // namespace temporalex
