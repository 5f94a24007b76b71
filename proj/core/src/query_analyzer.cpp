// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include "temporalex/query_analyzer.hpp"

#include <algorithm>
#include <array>
#include <set>

#include <nlohmann/json.hpp>

#include "temporalex/text.hpp"

namespace temporalex {
namespace {

using json = nlohmann::json;

constexpr int kMinYear = 1900;
constexpr int kMaxYear = 2099;

constexpr std::string_view kNian = "年";   // 年
constexpr std::string_view kYue = "月";    // 月
constexpr std::string_view kRi = "日";     // 日
constexpr std::string_view kHao = "号";    // 号
constexpr std::string_view kDi = "第";     // 第
constexpr std::string_view kTiao = "条";   // 条
constexpr std::string_view kZhang = "章";  // 章

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool starts_with_at(std::string_view s, std::size_t i, std::string_view p) {
  return i <= s.size() && s.substr(i).starts_with(p);
}

std::size_t digit_run_end(std::string_view s, std::size_t i) {
  while (i < s.size() && is_digit(s[i])) ++i;
  return i;
}

int digits_value(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

std::size_t skip_spaces(std::string_view s, std::size_t i) {
  while (i < s.size() && s[i] == ' ') ++i;
  return i;
}

DateInterval year_interval(int y) {
  return {*Date::from_ymd(y, 1, 1), *Date::from_ymd(y, 12, 31)};
}

std::optional<DateInterval> month_interval(int y, int m) {
  if (m < 1 || m > 12) return std::nullopt;
  return DateInterval{*Date::from_ymd(y, static_cast<unsigned>(m), 1),
                      last_day_of_month(y, static_cast<unsigned>(m))};
}

std::optional<DateInterval> day_interval(int y, int m, int d) {
  if (m < 1 || d < 1) return std::nullopt;
  auto date = Date::from_ymd(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
  if (!date) return std::nullopt;
  return DateInterval{*date, *date};
}

enum class DateKind { Year, YearMonth, Day, YearRange };

struct DateMatch {
  DateInterval interval;
  std::size_t begin;
  std::size_t end;
  DateKind kind;
};

/// Reads a 1-2 digit run at i that is not followed by another digit.
std::optional<std::pair<int, std::size_t>> short_number(std::string_view s,
                                                        std::size_t i) {
  const std::size_t e = digit_run_end(s, i);
  if (e == i || e - i > 2) return std::nullopt;
  return std::pair{digits_value(s.substr(i, e - i)), e};
}

/// Year-anchored date match starting at byte i, which must begin a
/// 4-digit run in [1900, 2099] not preceded by a digit.
std::optional<DateMatch> match_date_at(std::string_view s, std::size_t i) {
  if (i > 0 && is_digit(s[i - 1])) return std::nullopt;
  const std::size_t ye = digit_run_end(s, i);
  if (ye - i != 4) return std::nullopt;
  const int year = digits_value(s.substr(i, 4));
  if (year < kMinYear || year > kMaxYear) return std::nullopt;

  // YYYY-MM-DD, YYYY/MM/DD, YYYY.MM.DD and YYYY-MM variants.
  if (ye < s.size() && (s[ye] == '-' || s[ye] == '/' || s[ye] == '.')) {
    const char sep = s[ye];
    if (auto month = short_number(s, ye + 1)) {
      const auto [m, me] = *month;
      if (me < s.size() && s[me] == sep) {
        if (auto day = short_number(s, me + 1)) {
          if (auto iv = day_interval(year, m, day->first)) {
            return DateMatch{*iv, i, day->second, DateKind::Day};
          }
        }
      }
      if (!(me < s.size() && s[me] == sep && me + 1 < s.size() &&
            is_digit(s[me + 1]))) {
        if (auto iv = month_interval(year, m)) {
          return DateMatch{*iv, i, me, DateKind::YearMonth};
        }
      }
    }
  }

  // Year ranges: 2001-2004, 2001--2004, 2001 to 2004, 2001–2004.
  {
    std::size_t j = skip_spaces(s, ye);
    static constexpr std::array<std::string_view, 7> kRangeSeps = {
        "--", "-", "–", "—", "~", "to ", "至"};
    for (auto sep : kRangeSeps) {
      if (!starts_with_at(s, j, sep)) continue;
      const std::size_t k = skip_spaces(s, j + sep.size());
      const std::size_t ke = digit_run_end(s, k);
      if (ke - k == 4) {
        const int y2 = digits_value(s.substr(k, 4));
        if (y2 >= year && y2 <= kMaxYear) {
          std::size_t end = ke;
          if (starts_with_at(s, end, kNian)) end += kNian.size();
          return DateMatch{{year_interval(year).start, year_interval(y2).end},
                           i, end, DateKind::YearRange};
        }
      }
      break;
    }
  }

  // 2024年 / 2024年3月 / 2024年3月15日
  if (starts_with_at(s, ye, kNian)) {
    const std::size_t after_nian = ye + kNian.size();
    if (auto month = short_number(s, after_nian)) {
      const auto [m, me] = *month;
      if (starts_with_at(s, me, kYue)) {
        const std::size_t after_yue = me + kYue.size();
        if (auto day = short_number(s, after_yue)) {
          const std::size_t de = day->second;
          std::size_t end = 0;
          if (starts_with_at(s, de, kRi)) end = de + kRi.size();
          if (starts_with_at(s, de, kHao)) end = de + kHao.size();
          if (end != 0) {
            if (auto iv = day_interval(year, m, day->first)) {
              return DateMatch{*iv, i, end, DateKind::Day};
            }
          }
        }
        if (auto iv = month_interval(year, m)) {
          return DateMatch{*iv, i, after_yue, DateKind::YearMonth};
        }
      }
    }
    return DateMatch{year_interval(year), i, after_nian, DateKind::Year};
  }

  return DateMatch{year_interval(year), i, ye, DateKind::Year};
}

constexpr std::array<std::pair<std::string_view, int>, 21> kMonthNames = {{
    {"january", 1}, {"february", 2}, {"march", 3},    {"april", 4},
    {"may", 5},     {"june", 6},     {"july", 7},      {"august", 8},
    {"september", 9}, {"october", 10}, {"november", 11}, {"december", 12},
    {"jan", 1},     {"feb", 2},      {"mar", 3},       {"apr", 4},
    {"jun", 6},     {"jul", 7},      {"aug", 8},       {"sep", 9},
    {"dec", 12},
}};

/// "march 2004" / "march, 2004": returns (month, start of month word) when
/// the word right before byte i is a month name.
std::optional<std::pair<int, std::size_t>> month_name_before(std::string_view s,
                                                             std::size_t i) {
  std::size_t j = i;
  while (j > 0 && s[j - 1] == ' ') --j;
  if (j > 0 && s[j - 1] == ',') --j;
  while (j > 0 && s[j - 1] == ' ') --j;
  if (j == i) return std::nullopt;
  std::size_t w = j;
  while (w > 0 && is_alpha(s[w - 1])) --w;
  if (w == j) return std::nullopt;
  const std::string_view word = s.substr(w, j - w);
  for (const auto& [name, m] : kMonthNames) {
    if (word == name) return std::pair{m, w};
  }
  return std::nullopt;
}

std::vector<DateMatch> scan_dates(std::string_view s) {
  std::vector<DateMatch> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_digit(s[i])) {
      ++i;
      continue;
    }
    auto m = match_date_at(s, i);
    if (!m) {
      i = digit_run_end(s, i);
      continue;
    }
    if (m->kind == DateKind::Year && m->end == i + 4) {
      if (auto named = month_name_before(s, i)) {
        if (auto iv = month_interval(m->interval.start.year(), named->first)) {
          m = DateMatch{*iv, named->second, m->end, DateKind::YearMonth};
        }
      }
    }
    out.push_back(*m);
    i = m->end;
  }
  return out;
}

struct RefMatch {
  std::string label;
  std::size_t begin;
  std::size_t end;
};

std::string render_label(unsigned number, bool chapter,
                         const LabelConvention& labels) {
  const std::string numeral = labels.numerals == NumeralStyle::Chinese
                                  ? to_chinese_numeral(number)
                                  : std::to_string(number);
  std::string pattern = chapter ? labels.chapter_pattern : labels.article_pattern;
  const auto pos = pattern.find("{}");
  if (pos == std::string::npos) return pattern + " " + numeral;
  pattern.replace(pos, 2, numeral);
  return pattern;
}

constexpr std::array<std::pair<std::string_view, bool>, 9> kDesignators = {{
    {"articles", false}, {"article", false}, {"arts.", false},
    {"art.", false},     {"art", false},     {"chapter", true},
    {"chap.", true},     {"ch.", true},      {"section", false},
}};

/// Scans normalized (lower-cased) text for article/chapter references.
std::vector<RefMatch> scan_refs(std::string_view s, const LabelConvention& labels) {
  std::vector<RefMatch> out;
  std::size_t i = 0;
  while (i < s.size()) {
    bool matched = false;
    if (is_alpha(s[i]) && (i == 0 || !is_alpha(s[i - 1]))) {
      for (const auto& [word, chapter] : kDesignators) {
        if (word == "section") continue;
        if (!starts_with_at(s, i, word)) continue;
        const std::size_t after = i + word.size();
        if (word.back() != '.' && after < s.size() && is_alpha(s[after])) continue;
        const std::size_t num = skip_spaces(s, after);
        const std::size_t ne = digit_run_end(s, num);
        if (ne == num || ne - num > 5) continue;
        const unsigned n = static_cast<unsigned>(digits_value(s.substr(num, ne - num)));
        if (n == 0) continue;
        out.push_back({render_label(n, chapter, labels), i, ne});
        i = ne;
        matched = true;
        break;
      }
    } else if (starts_with_at(s, i, kDi)) {
      const std::size_t start = skip_spaces(s, i + kDi.size());
      std::size_t j = start;
      std::optional<unsigned> number;
      if (j < s.size() && is_digit(s[j])) {
        const std::size_t e = digit_run_end(s, j);
        if (e - j <= 5) number = static_cast<unsigned>(digits_value(s.substr(j, e - j)));
        j = e;
      } else {
        static constexpr std::string_view kNumeralChars[] = {
            "零", "一", "二", "三", "四", "五",
            "六", "七", "八", "九", "十", "百",
            "千", "万", "两"};
        bool advanced = true;
        while (advanced) {
          advanced = false;
          for (auto ch : kNumeralChars) {
            if (starts_with_at(s, j, ch)) {
              j += ch.size();
              advanced = true;
              break;
            }
          }
        }
        if (j > start) number = parse_chinese_numeral(s.substr(start, j - start));
      }
      j = skip_spaces(s, j);
      const bool article = starts_with_at(s, j, kTiao);
      const bool chapter = starts_with_at(s, j, kZhang);
      if (number && *number > 0 && (article || chapter)) {
        const std::size_t end = j + (article ? kTiao.size() : kZhang.size());
        out.push_back({render_label(*number, chapter, labels), i, end});
        i = end;
        matched = true;
      }
    }
    if (!matched) ++i;
  }
  return out;
}

const std::set<std::string, std::less<>>& stopwords() {
  static const std::set<std::string, std::less<>> kWords = {
      "a",        "about",   "after",   "all",     "also",    "an",
      "and",      "any",     "are",     "as",      "at",      "be",
      "been",     "before",  "between", "but",     "by",      "can",
      "could",    "current", "currently", "did",   "do",      "does",
      "during",   "each",    "effect",  "for",     "from",    "full",
      "had",      "has",     "have",    "he",      "her",     "his",
      "how",      "i",       "if",      "in",      "into",    "is",
      "it",       "its",     "may",     "me",      "must",    "my",
      "no",       "not",     "now",     "of",      "on",      "or",
      "our",      "please",  "present", "recite",  "shall",   "she",
      "should",   "so",      "such",    "than",    "that",    "the",
      "their",    "them",    "then",    "there",   "these",   "they",
      "this",     "those",   "to",      "today",   "under",   "until",
      "was",      "we",      "were",    "what",    "when",    "where",
      "whether",  "which",   "while",   "who",     "whom",    "why",
      "will",     "with",    "would",   "you",     "your",    "force",
      "text",     "version", "it's",    "year",    "years",   "question",
      "options",  "option",
  };
  return kWords;
}

const std::set<char32_t>& cjk_stop_chars() {
  static const std::set<char32_t> kChars = {
      U'的', U'了', U'是', U'在', U'和', U'与',
      U'及', U'或', U'对', U'被', U'把', U'等',
      U'之', U'其', U'吗', U'呢', U'请', U'问',
      U'何', U'哪', U'么', U'什'};
  return kChars;
}

bool mentions_now(std::string_view normalized) {
  static constexpr std::array<std::string_view, 5> kWords = {
      "now", "currently", "current", "today", "present"};
  static constexpr std::array<std::string_view, 4> kCjk = {
      "现在", "现行", "目前", "当前"};
  for (auto w : kCjk) {
    if (normalized.find(w) != std::string_view::npos) return true;
  }
  std::size_t i = 0;
  while (i < normalized.size()) {
    if (!is_alpha(normalized[i])) {
      ++i;
      continue;
    }
    std::size_t e = i;
    while (e < normalized.size() && is_alpha(normalized[e])) ++e;
    const auto word = normalized.substr(i, e - i);
    for (auto w : kWords) {
      if (word == w) return true;
    }
    i = e;
  }
  return false;
}

class KeywordCollector {
 public:
  void add(std::string kw) {
    if (kw.empty()) return;
    if (seen_.insert(kw).second) out_.push_back(std::move(kw));
  }
  std::vector<std::string> take() { return std::move(out_); }

 private:
  std::set<std::string> seen_;
  std::vector<std::string> out_;
};

/// Keywords from the residual text. Consecutive non-stopword words form a
/// compound; the compound is emitted first, then each of its words. CJK
/// runs split at function characters and keep runs of two or more.
std::vector<std::string> extract_keywords(std::string_view residual) {
  KeywordCollector keywords;
  const std::u32string cps = decode_utf8(residual);

  std::vector<std::string> phrase;
  auto flush_phrase = [&] {
    if (phrase.size() >= 2) {
      std::string joined;
      for (std::size_t k = 0; k < phrase.size(); ++k) {
        if (k) joined.push_back(' ');
        joined += phrase[k];
      }
      keywords.add(std::move(joined));
    }
    for (auto& w : phrase) keywords.add(std::move(w));
    phrase.clear();
  };

  std::u32string cjk_run;
  auto flush_cjk = [&] {
    if (codepoint_count(encode_utf8(cjk_run)) >= 2) keywords.add(encode_utf8(cjk_run));
    cjk_run.clear();
  };

  std::size_t i = 0;
  while (i < cps.size()) {
    const char32_t cp = cps[i];
    if (is_cjk_ideograph(cp)) {
      flush_phrase();
      if (cjk_stop_chars().count(cp)) {
        flush_cjk();
      } else {
        cjk_run.push_back(cp);
      }
      ++i;
      continue;
    }
    flush_cjk();
    if (is_word_char(cp)) {
      std::size_t e = i;
      while (e < cps.size() &&
             (is_word_char(cps[e]) ||
              ((cps[e] == U'-' || cps[e] == U'\'') && e + 1 < cps.size() &&
               e > i && is_word_char(cps[e + 1]) && !is_cjk_ideograph(cps[e + 1])))) {
        ++e;
      }
      const std::string word = encode_utf8(std::u32string_view(cps).substr(i, e - i));
      const bool numeric = std::all_of(word.begin(), word.end(), [](char c) {
        return is_digit(c) || c == '-' || c == '\'';
      });
      if (numeric || stopwords().count(word) || codepoint_count(word) < 2) {
        flush_phrase();
      } else {
        phrase.push_back(word);
      }
      i = e;
      continue;
    }
    if (cp != U' ') flush_phrase();
    ++i;
  }
  flush_phrase();
  flush_cjk();
  return keywords.take();
}

}  // namespace

AnalysisError::AnalysisError(const std::string& reason, std::string raw_output)
    : std::runtime_error("query analysis rejected: " + reason),
      raw_output_(std::move(raw_output)) {}

LabelConvention LabelConvention::chinese() {
  return {NumeralStyle::Chinese, "第{}条", "第{}章"};
}

std::string to_chinese_numeral(unsigned n) {
  if (n == 0 || n >= 100000) {
    throw std::out_of_range("chinese numeral out of range: " + std::to_string(n));
  }
  static constexpr std::string_view kDigits[] = {
      "零", "一", "二", "三", "四",
      "五", "六", "七", "八", "九"};
  static constexpr std::string_view kUnits[] = {"", "十", "百",
                                                "千", "万"};
  const std::string decimal = std::to_string(n);
  std::string out;
  bool pending_zero = false;
  for (std::size_t k = 0; k < decimal.size(); ++k) {
    const int d = decimal[k] - '0';
    const std::size_t pos = decimal.size() - 1 - k;
    if (d == 0) {
      pending_zero = !out.empty();
      continue;
    }
    if (pending_zero) out += kDigits[0];
    pending_zero = false;
    // 10..19 read 十, 十一, ... without a leading 一.
    if (!(k == 0 && d == 1 && pos == 1)) out += kDigits[d];
    out += kUnits[pos];
  }
  return out;
}

std::optional<unsigned> parse_chinese_numeral(std::string_view text) {
  if (text.empty()) return std::nullopt;
  unsigned total = 0, section = 0, current = 0;
  bool any = false;
  for (char32_t cp : decode_utf8(text)) {
    int digit = -1;
    switch (cp) {
      case U'零': digit = 0; break;
      case U'一': digit = 1; break;
      case U'二': case U'两': digit = 2; break;
      case U'三': digit = 3; break;
      case U'四': digit = 4; break;
      case U'五': digit = 5; break;
      case U'六': digit = 6; break;
      case U'七': digit = 7; break;
      case U'八': digit = 8; break;
      case U'九': digit = 9; break;
      default: break;
    }
    if (digit >= 0) {
      current = static_cast<unsigned>(digit);
      any = true;
      continue;
    }
    unsigned unit = 0;
    switch (cp) {
      case U'十': unit = 10; break;
      case U'百': unit = 100; break;
      case U'千': unit = 1000; break;
      case U'万': unit = 10000; break;
      default: return std::nullopt;
    }
    any = true;
    if (unit == 10000) {
      total += (section + current) * 10000;
      section = 0;
    } else {
      section += (current == 0 ? 1 : current) * unit;
    }
    current = 0;
  }
  if (!any) return std::nullopt;
  return total + section + current;
}

std::optional<DateInterval> expand_partial_date(std::string_view token) {
  const std::string t = trim(token);
  if (t.empty() || !is_digit(t[0])) return std::nullopt;
  auto m = match_date_at(t, 0);
  if (!m || m->end != t.size() || m->kind == DateKind::YearRange) {
    return std::nullopt;
  }
  return m->interval;
}

std::optional<std::string> normalize_article_ref(std::string_view ref,
                                                 const LabelConvention& labels) {
  const auto refs = scan_refs(normalize_text(ref), labels);
  if (refs.empty()) return std::nullopt;
  return refs.front().label;
}

PatternAnalyzer::PatternAnalyzer(PatternAnalyzerOptions options)
    : options_(std::move(options)) {}

QueryAnalysis PatternAnalyzer::analyze(std::string_view query) const {
  const std::string normalized = normalize_text(query);
  std::vector<bool> consumed(normalized.size(), false);
  auto consume = [&](std::size_t b, std::size_t e) {
    std::fill(consumed.begin() + static_cast<std::ptrdiff_t>(b),
              consumed.begin() + static_cast<std::ptrdiff_t>(e), true);
  };

  QueryAnalysis out;

  // Article references first so that "Art. 1999" never reads as a year.
  std::set<std::string> seen_labels;
  for (const auto& ref : scan_refs(normalized, options_.labels)) {
    consume(ref.begin, ref.end);
    if (seen_labels.insert(ref.label).second) out.chapter_info.push_back(ref.label);
  }

  std::string masked = normalized;
  for (std::size_t i = 0; i < masked.size(); ++i) {
    if (consumed[i]) masked[i] = '\x01';
  }
  for (const auto& m : scan_dates(masked)) {
    consume(m.begin, m.end);
    if (std::find(out.time_info.begin(), out.time_info.end(), m.interval) ==
        out.time_info.end()) {
      out.time_info.push_back(m.interval);
    }
  }
  if (out.time_info.empty() && options_.reference_date && mentions_now(normalized)) {
    out.time_info.push_back({*options_.reference_date, *options_.reference_date});
  }

  std::string residual = normalized;
  for (std::size_t i = 0; i < residual.size(); ++i) {
    if (consumed[i]) residual[i] = '\x01';
  }
  out.keywords = extract_keywords(residual);
  return out;
}

CompletionAnalyzer::CompletionAnalyzer(CompletionFn complete)
    : complete_(std::move(complete)) {
  if (!complete_) throw std::invalid_argument("completion function is empty");
}

std::string CompletionAnalyzer::build_prompt(std::string_view query) {
  std::string prompt =
      "Analyze the legal query below and reply with a single JSON object and "
      "nothing else.\n"
      "- time_info: every time period the query mentions, as [start, end] "
      "pairs of YYYY-MM-DD dates; a bare year covers its whole calendar year. "
      "Empty list if none.\n"
      "- chapter_info: article or chapter references written out in full "
      "Chinese numerals. Empty list if none.\n"
      "- keywords: legal terms copied from the query; for a compound term also "
      "list its component words.\n"
      "Reply shape: {\"time_info\": [], \"chapter_info\": [], \"keywords\": []}\n"
      "Query: ";
  prompt += query;
  return prompt;
}

QueryAnalysis CompletionAnalyzer::analyze(std::string_view query) const {
  const std::string raw = complete_(build_prompt(query));
  return parse_analysis_json(raw, query);
}

QueryAnalysis parse_analysis_json(std::string_view raw, std::string_view query) {
  const std::string raw_copy(raw);
  json j;
  try {
    j = json::parse(trim(raw));
  } catch (const json::parse_error&) {
    throw AnalysisError("output is not JSON", raw_copy);
  }
  if (!j.is_object()) throw AnalysisError("output is not an object", raw_copy);
  for (const auto& [key, value] : j.items()) {
    if (key != "time_info" && key != "chapter_info" && key != "keywords") {
      throw AnalysisError("unexpected key '" + key + "'", raw_copy);
    }
  }
  for (const char* key : {"time_info", "chapter_info", "keywords"}) {
    if (!j.contains(key) || !j[key].is_array()) {
      throw AnalysisError(std::string("'") + key + "' must be a list", raw_copy);
    }
  }

  QueryAnalysis out;
  for (const auto& pair : j["time_info"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
        !pair[1].is_string()) {
      throw AnalysisError("time_info entries must be [start, end] strings", raw_copy);
    }
    auto start = Date::parse(pair[0].get<std::string>());
    auto end = Date::parse(pair[1].get<std::string>());
    if (!start || !end) {
      throw AnalysisError("time_info dates must be YYYY-MM-DD", raw_copy);
    }
    if (*end < *start) {
      throw AnalysisError("time_info interval has start after end", raw_copy);
    }
    out.time_info.push_back({*start, *end});
  }
  for (const auto& label : j["chapter_info"]) {
    if (!label.is_string() || trim(label.get<std::string>()).empty()) {
      throw AnalysisError("chapter_info entries must be non-empty strings", raw_copy);
    }
    out.chapter_info.push_back(label.get<std::string>());
  }
  const std::string normalized_query = normalize_text(query);
  for (const auto& kw : j["keywords"]) {
    if (!kw.is_string()) {
      throw AnalysisError("keywords must be strings", raw_copy);
    }
    const std::string k = normalize_text(kw.get<std::string>());
    if (k.empty()) throw AnalysisError("empty keyword", raw_copy);
    if (normalized_query.find(k) == std::string::npos) {
      throw AnalysisError("keyword '" + k + "' does not occur in the query", raw_copy);
    }
    out.keywords.push_back(k);
  }
  return out;
}

QueryAnalysis analyze_query(std::string_view query, const AnalyzerBackend& backend) {
  if (trim(query).empty()) throw std::invalid_argument("query is empty");
  return backend.analyze(query);
}

json to_json(const QueryAnalysis& analysis) {
  json time = json::array();
  for (const auto& iv : analysis.time_info) {
    time.push_back({iv.start.to_string(), iv.end.to_string()});
  }
  return {{"time_info", std::move(time)},
          {"chapter_info", analysis.chapter_info},
          {"keywords", analysis.keywords}};
}

}  // namespace temporalex
