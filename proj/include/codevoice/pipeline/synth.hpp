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
#include <cstdint>
#include <string>
#include <vector>

#include "codevoice/core/corpus.hpp"

namespace codevoice::pipeline {

struct SynthOptions {
    std::size_t size = 200;
    std::uint64_t seed = 42;
    /// Cycled over the records in order.
    std::vector<std::string> languages = {"en", "hi", "gu", "ta", "bn"};
};

/// Deterministic code-question corpus for offline runs. Every record
/// mentions one identifier unique to it, which also appears in its code
/// snippet; many also mention an operator expression, a commonly misheard
/// code term or a one-word library function. Datasets and programming
/// languages rotate (QA never uses php). verbalized_text is left empty.
core::Corpus synthesize_corpus(const SynthOptions& options = {});

}  // namespace codevoice::pipeline
