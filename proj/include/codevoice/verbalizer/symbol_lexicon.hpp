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

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace codevoice::verbal {

/// How a symbol glues to its neighbours once spoken words are turned back
/// into code: "_" joins both sides, "()" joins the word before it, "#"
/// joins the word after it, "==" stands alone.
enum class Attach { none, left, right, both };

struct SymbolEntry {
    std::string literal;
    std::string spoken;
    std::vector<std::string> spoken_words;
    Attach attach = Attach::none;
};

/// Literal symbol <-> spoken phrase table. Phrases are lowercase ASCII
/// words and every phrase, parsed longest-match-first, maps back to its own
/// literal; parse() rejects tables that break either rule.
class SymbolLexicon {
public:
    /// Reads the TSV form: literal<TAB>phrase[<TAB>attach], '#' comments.
    static SymbolLexicon parse(std::string_view tsv, const std::string& source = "<memory>");
    static SymbolLexicon load(const std::filesystem::path& path);
    /// The bundled table, parsed once.
    static std::shared_ptr<const SymbolLexicon> builtin();

    explicit SymbolLexicon(std::vector<SymbolEntry> entries);

    const std::vector<SymbolEntry>& entries() const { return entries_; }
    const SymbolEntry* find_literal(std::string_view literal) const;
    bool is_literal(std::string_view s) const { return find_literal(s) != nullptr; }
    bool uses_char(char32_t c) const;

    /// Longest literal starting at s[pos]; nullptr if none.
    const SymbolEntry* match_literal(std::u32string_view s, std::size_t pos) const;

    /// Longest phrase starting at words[pos]; words must already be lowercase.
    const SymbolEntry* match_spoken(std::span<const std::string> words, std::size_t pos) const;

    /// True if `s` is non-empty and splits entirely into literals.
    bool is_symbol_sequence(std::string_view s) const;

private:
    std::vector<SymbolEntry> entries_;
    std::u32string literal_chars_;
    std::vector<std::u32string> literals32_;
};

}  // namespace codevoice::verbal
