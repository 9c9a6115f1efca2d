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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "codevoice/core/query_record.hpp"

namespace codevoice::core {

enum class CorpusFormat { jsonl };

/// Ordered, immutable collection of records with pairwise-distinct ids.
class Corpus {
public:
    Corpus() = default;
    /// Throws ValidationError on duplicate ids.
    explicit Corpus(std::vector<QueryRecord> records, std::string source_path = {});

    const std::vector<QueryRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    const std::string& source_path() const { return source_path_; }
    const QueryRecord* find(std::string_view id) const;

    auto begin() const { return records_.begin(); }
    auto end() const { return records_.end(); }

    friend bool operator==(const Corpus& a, const Corpus& b) { return a.records_ == b.records_; }

private:
    std::vector<QueryRecord> records_;
    std::string source_path_;
};

/// Parses JSON Lines text. Blank lines are skipped. Errors name the
/// 1-based line: ParseError for malformed JSON, ValidationError for bad
/// fields, duplicate ids or record invariant violations.
Corpus parse_corpus(std::string_view text, const std::string& source = "<memory>");
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format = CorpusFormat::jsonl);

std::string serialize_corpus(const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace codevoice::core
