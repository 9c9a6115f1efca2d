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

#include "codevoice/core/edit_ops.hpp"
#include "codevoice/core/language.hpp"
#include "codevoice/phonetics/feature_table.hpp"
#include "codevoice/phonetics/g2p.hpp"
#include "codevoice/verbalizer/symbol_lexicon.hpp"

namespace codevoice::metrics {

/// A normalized error rate with the counts behind it.
struct ErrorRate {
    double value = 0.0;
    /// Unnormalized alignment cost (S+D+I for the unit-cost metrics).
    double cost = 0.0;
    core::EditOps ops;
    /// Empty reference with a non-empty hypothesis; value is then cost / 1.
    bool degenerate = false;
};

/// Scoring tokens: NFC, lowercase, whitespace split, then leading and
/// trailing punctuation removed unless the whole token is a symbol literal.
std::vector<std::string> tokenize_words(std::string_view text,
                                        const verbal::SymbolLexicon& lexicon = *verbal::SymbolLexicon::builtin());

/// (S + D + I) / N over word tokens.
ErrorRate wer(std::string_view ref, std::string_view hyp,
              const verbal::SymbolLexicon& lexicon = *verbal::SymbolLexicon::builtin());

/// (S + D + I) / N over phonemized text.
ErrorRate per(std::string_view ref, std::string_view hyp, const core::LanguageTag& lang,
              const phonetics::G2PAdapter& adapter);
ErrorRate per_segments(const std::vector<std::string>& ref, const std::vector<std::string>& hyp);

/// Edit cost over phonemized text with substitutions weighted by
/// articulatory distance and unit insertions/deletions, divided by N.
ErrorRate wfed(std::string_view ref, std::string_view hyp, const core::LanguageTag& lang,
               const phonetics::G2PAdapter& adapter, const phonetics::ArticulatoryFeatureTable& table);
ErrorRate wfed_segments(const std::vector<std::string>& ref, const std::vector<std::string>& hyp,
                        const phonetics::ArticulatoryFeatureTable& table);

}  // namespace codevoice::metrics
