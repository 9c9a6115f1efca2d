// Copyright 2026 The CodeVoice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace codevoice::text {

std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view cps);
void append(std::string& out, char32_t cp);

std::string nfc(std::string_view s);
std::string to_lower(std::string_view s);

bool is_space(char32_t c);
bool is_letter(char32_t c);
bool is_digit(char32_t c);
bool is_mark(char32_t c);
bool is_upper(char32_t c);
bool is_lower(char32_t c);
/// Letters, digits and combining marks (vowel signs of Indic scripts).
bool is_word_char(char32_t c);
/// Unicode P* categories except connector punctuation, so '_' survives.
bool is_punctuation(char32_t c);

std::vector<std::string> split_whitespace(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep = " ");
std::string trim(std::string_view s);
/// Collapses whitespace runs to one ASCII space and trims the ends.
std::string normalize_spaces(std::string_view s);

bool is_ascii_upper_word(std::string_view s);
bool has_letter(std::string_view s);

/// Splits a written identifier into its word pieces: separators such as
/// '_' and '.' are dropped and a new piece starts at every case boundary
/// (getUserInfo, HTTPServer, get2Users). Digits stay on the piece before
/// them. Pieces keep their original spelling.
std::vector<std::string> identifier_words(std::string_view token);

/// Lowercased concatenation of a token's letters and digits; the key used
/// to compare identifiers regardless of how they were split or joined.
std::string fold_key(std::string_view s);

}  // namespace codevoice::text
