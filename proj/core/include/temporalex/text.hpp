// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace temporalex {

/// Decodes UTF-8 into code points. Invalid sequences become U+FFFD.
std::u32string decode_utf8(std::string_view text);

void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(std::u32string_view cps);

std::size_t codepoint_count(std::string_view text);

/// CJK ideographs (unified, extension A, compatibility).
bool is_cjk_ideograph(char32_t cp);

/// Word characters: ASCII alphanumerics and non-ASCII letters outside the
/// CJK ideograph and CJK/fullwidth punctuation blocks.
bool is_word_char(char32_t cp);

std::string trim(std::string_view s);

/// ASCII-only lower-casing; other bytes pass through unchanged.
std::string fold_case(std::string_view s);

/// fold_case + collapse whitespace runs to one space + trim. This is the
/// normal form keywords are matched against.
std::string normalize_text(std::string_view s);

/// Tokens for sparse retrieval: maximal runs of word characters (folded),
/// and every CJK ideograph as its own token. Punctuation is dropped.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace temporalex
