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

#include "codevoice/metrics/metrics.hpp"

#include "codevoice/metrics/alignment.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::metrics {

namespace {

ErrorRate rate(const AlignmentResult& a, std::size_t hyp_size) {
    ErrorRate r;
    r.cost = a.cost;
    r.ops = a.ops;
    if (a.ops.reference_length == 0) {
        r.degenerate = hyp_size > 0;
        r.value = a.cost;  // cost / 1
    } else {
        r.value = a.cost / static_cast<double>(a.ops.reference_length);
    }
    return r;
}

}  // namespace

std::vector<std::string> tokenize_words(std::string_view text, const verbal::SymbolLexicon& lexicon) {
    std::vector<std::string> out;
    for (const auto& raw : text::split_whitespace(text::to_lower(text::nfc(text)))) {
        if (lexicon.find_literal(raw)) {
            out.push_back(raw);
            continue;
        }
        const auto cps = text::decode(raw);
        std::size_t b = 0, e = cps.size();
        while (b < e && text::is_punctuation(cps[b])) ++b;
        while (e > b && text::is_punctuation(cps[e - 1])) --e;
        if (b < e) out.push_back(text::encode(std::u32string_view(cps).substr(b, e - b)));
    }
    return out;
}

ErrorRate wer(std::string_view ref, std::string_view hyp, const verbal::SymbolLexicon& lexicon) {
    const auto r = tokenize_words(ref, lexicon);
    const auto h = tokenize_words(hyp, lexicon);
    return rate(align_tokens(r, h), h.size());
}

ErrorRate per_segments(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
    return rate(align_tokens(ref, hyp), hyp.size());
}

ErrorRate per(std::string_view ref, std::string_view hyp, const core::LanguageTag& lang,
              const phonetics::G2PAdapter& adapter) {
    return per_segments(phonetics::phonemize(ref, lang, adapter).segments,
                        phonetics::phonemize(hyp, lang, adapter).segments);
}

ErrorRate wfed_segments(const std::vector<std::string>& ref, const std::vector<std::string>& hyp,
                        const phonetics::ArticulatoryFeatureTable& table) {
    auto distance = [&table](const std::string& a, const std::string& b) { return table.distance(a, b); };
    return rate(align(std::span<const std::string>(ref), std::span<const std::string>(hyp), distance), hyp.size());
}

ErrorRate wfed(std::string_view ref, std::string_view hyp, const core::LanguageTag& lang,
               const phonetics::G2PAdapter& adapter, const phonetics::ArticulatoryFeatureTable& table) {
    return wfed_segments(phonetics::phonemize(ref, lang, adapter).segments,
                         phonetics::phonemize(hyp, lang, adapter).segments, table);
}

}  // namespace codevoice::metrics
