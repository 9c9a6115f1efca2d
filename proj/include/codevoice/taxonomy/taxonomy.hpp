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

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "codevoice/core/language.hpp"
#include "codevoice/core/query_record.hpp"
#include "codevoice/phonetics/feature_table.hpp"
#include "codevoice/phonetics/g2p.hpp"
#include "codevoice/verbalizer/verbalizer.hpp"

namespace codevoice::taxonomy {

enum class TagKind {
    phonetic_drift,
    identifier_split,
    identifier_merge,
    keyword_ambiguity,
    symbol_loss,
    identifier_recall_failure,
};

inline constexpr TagKind kAllTagKinds[] = {TagKind::phonetic_drift,    TagKind::identifier_split,
                                           TagKind::identifier_merge,  TagKind::keyword_ambiguity,
                                           TagKind::symbol_loss,       TagKind::identifier_recall_failure};

std::string_view to_string(TagKind k);
TagKind parse_tag_kind(std::string_view s);

/// Token ranges are half-open indices into tokenize() of ref and hyp.
struct TaxonomyTag {
    TagKind kind = TagKind::phonetic_drift;
    std::size_t ref_begin = 0;
    std::size_t ref_end = 0;
    std::size_t hyp_begin = 0;
    std::size_t hyp_end = 0;
    std::string evidence;

    friend bool operator==(const TaxonomyTag&, const TaxonomyTag&) = default;
};

nlohmann::ordered_json to_json(const TaxonomyTag& tag);

using WordSet = std::set<std::string, std::less<>>;

/// Lowercased words of a bundled or user word-per-line list ('#' comments).
WordSet parse_word_list(std::string_view text);
/// Reserved words of the given language, or of all three when null.
WordSet bundled_keywords(const core::ProgLang* lang = nullptr);
/// English plus romanized Indic function words.
WordSet bundled_function_words();

/// Everything the detectors consult. The adapter and table are used for
/// the per-span WFED behind phonetic_drift / identifier_recall_failure.
struct Detector {
    std::shared_ptr<const verbal::Verbalizer> verbalizer;
    std::shared_ptr<const phonetics::G2PAdapter> adapter;
    std::shared_ptr<const phonetics::ArticulatoryFeatureTable> table;
    WordSet keywords = bundled_keywords();
    WordSet function_words = bundled_function_words();
    double drift_threshold = 0.3;
    double recall_threshold = 0.5;

    /// Builtin verbalizer, rules G2P and bundled feature table.
    static Detector with_defaults();

    /// Whitespace tokens with sentence punctuation stripped; case kept.
    std::vector<std::string> tokenize(std::string_view s) const;

    /// Tags for one reference/hypothesis pair. `identifiers` are the
    /// record's code identifiers; their spoken forms in the reference are
    /// treated as single code tokens.
    std::vector<TaxonomyTag> detect(std::string_view ref, std::string_view hyp, const core::LanguageTag& lang = {},
                                    std::span<const std::string> identifiers = {}) const;
};

struct KindStats {
    std::size_t count = 0;
    /// Share of all tags.
    double tag_share = 0.0;
    /// Fraction of records carrying at least one tag of this kind.
    double record_fraction = 0.0;
};

struct TagDistribution {
    std::map<TagKind, KindStats> kinds;
    std::size_t n_records = 0;
    std::size_t total_tags = 0;
    /// Fraction of records with at least one tag.
    double tagged_fraction = 0.0;
};

TagDistribution tag_distribution(std::span<const std::vector<TaxonomyTag>> per_record);
nlohmann::ordered_json to_json(const TagDistribution& d);

}  // namespace codevoice::taxonomy
