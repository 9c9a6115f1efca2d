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

#include "codevoice/pipeline/corruption.hpp"

#include <algorithm>
#include <set>

#include "codevoice/taxonomy/taxonomy.hpp"
#include "codevoice/util/hash.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::pipeline {

namespace {

bool ascii_ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool ascii_ident_char(char c) { return ascii_ident_start(c) || (c >= '0' && c <= '9'); }

std::vector<std::string> ascii_identifiers(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (ascii_ident_start(s[i]) && (i == 0 || !ascii_ident_char(s[i - 1]))) {
            std::size_t j = i;
            while (j < s.size() && ascii_ident_char(s[j])) ++j;
            out.emplace_back(s.substr(i, j - i));
            i = j;
        } else {
            ++i;
        }
    }
    return out;
}

bool splittable(const std::string& w) {
    return w.size() >= 4 && std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

Rng record_rng(std::uint64_t seed, std::string_view id) { return Rng(seed ^ hash::fnv1a64(id)); }

std::vector<std::string> identifier_hints(const core::QueryRecord& r, const verbal::Verbalizer& verbalizer) {
    static const auto keywords = taxonomy::bundled_keywords();
    std::vector<std::string> out;
    std::set<std::string> seen;
    auto add = [&](const std::string& h) {
        if (!h.empty() && !keywords.contains(text::to_lower(h)) && seen.insert(h).second) out.push_back(h);
    };
    for (const auto& token : verbalizer.code_tokens(r.reference_text)) {
        add(token);
        for (const auto& id : ascii_identifiers(token)) {
            if (verbalizer.classify(id) != verbal::TokenClass::plain || id.size() >= 4) add(id);
        }
    }
    if (r.code) {
        std::set<std::string> mentioned;
        for (const auto& w : ascii_identifiers(r.reference_text)) mentioned.insert(w);
        for (const auto& id : ascii_identifiers(*r.code)) {
            if (mentioned.contains(id) && id.size() >= 3) add(id);
        }
    }
    return out;
}

Corrupter::Corrupter(CorruptionSpec spec, std::shared_ptr<const verbal::Verbalizer> verbalizer,
                     std::shared_ptr<const refine::ConfusionLexicon> confusions)
    : spec_(std::move(spec)), verbalizer_(std::move(verbalizer)) {
    spec_.validate();
    for (const auto& e : confusions->entries()) {
        auto spoken = verbalizer_->spoken_words(e.intended);
        if (spoken.empty()) continue;
        auto it = std::find_if(confusables_.begin(), confusables_.end(),
                               [&](const Confusable& c) { return c.spoken == spoken; });
        if (it == confusables_.end()) {
            confusables_.push_back({spoken, {}});
            it = confusables_.end() - 1;
        }
        it->heard.push_back(e.heard_words);
    }
    std::stable_sort(confusables_.begin(), confusables_.end(),
                     [](const Confusable& a, const Confusable& b) { return a.spoken.size() > b.spoken.size(); });
}

std::string Corrupter::corrupt(std::string_view spoken, std::span<const std::string> hints, Rng& rng) const {
    const auto words = text::split_whitespace(spoken);
    std::vector<std::string> lower;
    for (const auto& w : words) lower.push_back(text::to_lower(w));
    std::set<std::string> split_targets;
    for (const auto& h : hints) {
        if (splittable(h)) split_targets.insert(h);
    }
    const auto& lexicon = verbalizer_->lexicon();
    const double p_confuse = spec_.p(CorruptionKind::confuse_phrase);
    const double p_symbol = spec_.p(CorruptionKind::drop_symbol);
    const double p_split = spec_.p(CorruptionKind::split_identifier);
    const double p_drop = spec_.p(CorruptionKind::drop_word);

    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < words.size()) {
        const Confusable* conf = nullptr;
        for (const auto& c : confusables_) {
            if (i + c.spoken.size() <= lower.size() &&
                std::equal(c.spoken.begin(), c.spoken.end(), lower.begin() + static_cast<std::ptrdiff_t>(i))) {
                conf = &c;
                break;
            }
        }
        // A confusable that is not misheard stays open to the other kinds.
        if (conf) {
            const double u = rng.uniform();
            if (u < p_confuse) {
                // Reuse the draw to pick among alternative mishearings.
                const auto pick = static_cast<std::size_t>(u / p_confuse * static_cast<double>(conf->heard.size()));
                const auto& heard = conf->heard[std::min(pick, conf->heard.size() - 1)];
                out.insert(out.end(), heard.begin(), heard.end());
                i += conf->spoken.size();
                continue;
            }
        }
        if (const auto* sym = lexicon.match_spoken(lower, i)) {
            const auto n = sym->spoken_words.size();
            if (rng.uniform() >= p_symbol) {
                out.insert(out.end(), words.begin() + static_cast<std::ptrdiff_t>(i),
                           words.begin() + static_cast<std::ptrdiff_t>(i + n));
            }
            i += n;
            continue;
        }
        if (split_targets.contains(lower[i])) {
            if (rng.uniform() < p_split) {
                const auto& w = words[i];
                out.push_back(w.substr(0, w.size() / 2));
                out.push_back(w.substr(w.size() / 2));
            } else {
                out.push_back(words[i]);
            }
            ++i;
            continue;
        }
        if (rng.uniform() >= p_drop) out.push_back(words[i]);
        ++i;
    }
    return text::join(out, " ");
}

core::Corpus corrupt_transcripts(const core::Corpus& corpus, const CorruptionSpec& spec,
                                 const verbal::SymbolLexicon& symbols, const refine::ConfusionLexicon& confusions) {
    auto verbalizer = std::make_shared<const verbal::Verbalizer>(
        std::shared_ptr<const verbal::SymbolLexicon>(std::shared_ptr<void>(), &symbols));
    const Corrupter corrupter(spec, verbalizer,
                              std::shared_ptr<const refine::ConfusionLexicon>(std::shared_ptr<void>(), &confusions));
    std::vector<core::QueryRecord> records(corpus.begin(), corpus.end());
    for (auto& r : records) {
        if (!r.verbalized_text) continue;
        auto rng = record_rng(spec.seed, r.id);
        r.transcript_raw = corrupter.corrupt(*r.verbalized_text, identifier_hints(r, *verbalizer), rng);
    }
    return core::Corpus(std::move(records), corpus.source_path());
}

}  // namespace codevoice::pipeline
