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

namespace codevoice::refine {

/// Phrases a recognizer typically hears in place of a code term
/// ("ask key" for ASCII). Heard phrases are lowercase word sequences;
/// replacement picks the longest phrase at each position.
class ConfusionLexicon {
public:
    struct Entry {
        std::string heard;
        std::vector<std::string> heard_words;
        std::string intended;
    };

    ConfusionLexicon() = default;
    explicit ConfusionLexicon(std::vector<Entry> entries);

    /// heard<TAB>intended lines; '#' starts a comment line.
    static ConfusionLexicon parse(std::string_view tsv, const std::string& source);
    static ConfusionLexicon load(const std::filesystem::path& path);
    static std::shared_ptr<const ConfusionLexicon> builtin();

    /// Longest first, then file order.
    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    /// Entry whose heard phrase matches lowercase `words` at `pos`, longest first.
    const Entry* match(std::span<const std::string> words, std::size_t pos) const;

    /// Replaces heard phrases (case-insensitively) by their intended terms.
    std::string apply(std::string_view text) const;

private:
    std::vector<Entry> entries_;
};

}  // namespace codevoice::refine
