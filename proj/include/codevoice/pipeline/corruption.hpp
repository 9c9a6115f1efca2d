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

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codevoice/core/corpus.hpp"
#include "codevoice/pipeline/config.hpp"
#include "codevoice/refinement/confusion_lexicon.hpp"
#include "codevoice/verbalizer/verbalizer.hpp"

namespace codevoice::pipeline {

/// 64-bit linear congruential generator, x' = a*x + c mod 2^64 with
/// a = 6364136223846793005 and c = 1442695040888963407 (Knuth's MMIX
/// constants). uniform() uses the top 53 bits of the next state.
class Rng {
public:
    using Engine = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0>;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// In [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    Engine engine_;
};

/// Generator for one record: the run seed xor the FNV-1a hash of the id, so
/// a record's corruption does not depend on its position in the corpus.
Rng record_rng(std::uint64_t seed, std::string_view id);

/// Identifiers a record's spoken form may contain: code-class tokens of the
/// reference text (and the identifier chunks inside them) plus identifiers
/// of the code snippet that the reference mentions. First-seen order.
std::vector<std::string> identifier_hints(const core::QueryRecord& r, const verbal::Verbalizer& verbalizer);

/// Mock recognizer. Walking the spoken text left to right, each position is
/// offered, in this order, to confuse_phrase (a code term's spoken form is
/// replaced by a phrase the confusion lexicon says it is misheard as),
/// drop_symbol (a spoken operator phrase disappears), split_identifier (a
/// hinted one-word identifier of four or more letters is cut in two) and
/// drop_word. Each opportunity draws one uniform number.
class Corrupter {
public:
    Corrupter(CorruptionSpec spec, std::shared_ptr<const verbal::Verbalizer> verbalizer,
              std::shared_ptr<const refine::ConfusionLexicon> confusions);

    std::string corrupt(std::string_view spoken, std::span<const std::string> hints, Rng& rng) const;
    const CorruptionSpec& spec() const { return spec_; }
    const std::shared_ptr<const verbal::Verbalizer>& verbalizer() const { return verbalizer_; }

private:
    struct Confusable {
        std::vector<std::string> spoken;  // lowercase spoken form of the intended term
        std::vector<std::vector<std::string>> heard;
    };

    CorruptionSpec spec_;
    std::shared_ptr<const verbal::Verbalizer> verbalizer_;
    std::vector<Confusable> confusables_;
};

/// Fills transcript_raw from verbalized_text for every record that has one.
core::Corpus corrupt_transcripts(const core::Corpus& corpus, const CorruptionSpec& spec,
                                 const verbal::SymbolLexicon& symbols, const refine::ConfusionLexicon& confusions);

}  // namespace codevoice::pipeline
