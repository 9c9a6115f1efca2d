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

namespace codevoice::core {

/// Edit tallies of one alignment. Used for words (S, D, I, N) and for
/// phonemes alike.
struct EditOps {
    std::size_t substitutions = 0;
    std::size_t deletions = 0;
    std::size_t insertions = 0;
    std::size_t reference_length = 0;

    std::size_t errors() const { return substitutions + deletions + insertions; }
    bool valid() const { return substitutions + deletions <= reference_length; }

    friend bool operator==(const EditOps&, const EditOps&) = default;
};

}  // namespace codevoice::core
