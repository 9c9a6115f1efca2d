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

#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codevoice/verbalizer/symbol_lexicon.hpp"

namespace codevoice::verbal {

enum class TokenClass { acronym, camel_case, snake_case, dotted_path, symbolic_operator, plain };

std::string_view to_string(TokenClass c);

using AcronymList = std::set<std::string, std::less<>>;

/// Bundled list of all-caps words longer than five letters that are still
/// spelled out letter by letter.
const AcronymList& builtin_acronyms();
AcronymList parse_acronyms(std::string_view text);

/// Rewrites written code-mixed text into its spoken form and back.
///
/// verbalize() letter-spaces acronyms, splits camelCase at case boundaries
/// (lowercasing the pieces), speaks '_' '.' and operators through the
/// symbol lexicon, and leaves natural-language words of any script alone.
/// Its output holds only letters, digits, combining marks and single spaces,
/// so verbalizing twice changes nothing.
///
/// deverbalize() goes the other way: identifier hints are rejoined first
/// (either their spoken form or the bare words run together), then spoken
/// operator phrases become symbols by longest match, then runs of single
/// capital letters collapse into acronyms.
class Verbalizer {
public:
    Verbalizer();
    explicit Verbalizer(std::shared_ptr<const SymbolLexicon> lexicon,
                        AcronymList long_acronyms = builtin_acronyms());

    const SymbolLexicon& lexicon() const { return *lexicon_; }

    /// Precedence: symbolic-operator > snake_case > dotted-path > acronym
    /// > camelCase > plain. `token` should hold no whitespace.
    TokenClass classify(std::string_view token) const;

    std::string verbalize(std::string_view text) const;
    std::string deverbalize(std::string_view spoken, std::span<const std::string> hints = {}) const;

    /// verbalize() of one identifier, split into lowercase words.
    std::vector<std::string> spoken_words(std::string_view identifier) const;

    /// Whitespace token with surrounding sentence punctuation removed
    /// ("realloc()?" -> "realloc()", "(e.g." stays as is).
    std::string strip_sentence_punctuation(std::string_view token) const;

    /// Tokens of `text` whose class is not plain, after punctuation stripping.
    std::vector<std::string> code_tokens(std::string_view text) const;

private:
    void verbalize_token(std::string_view token, std::vector<std::string>& out) const;
    void verbalize_word_run(std::u32string_view run, std::vector<std::string>& out) const;
    bool spelled_acronym(std::string_view word) const;

    std::shared_ptr<const SymbolLexicon> lexicon_;
    AcronymList long_acronyms_;
};

TokenClass classify_token(std::string_view token, const SymbolLexicon& lexicon = *SymbolLexicon::builtin());
std::string verbalize(std::string_view text, const SymbolLexicon& lexicon = *SymbolLexicon::builtin());
std::string deverbalize(std::string_view spoken, const SymbolLexicon& lexicon = *SymbolLexicon::builtin(),
                        std::span<const std::string> identifier_hints = {});

}  // namespace codevoice::verbal
