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
#include "codevoice/core/corpus.hpp"

#include <unordered_map>

#include "codevoice/util/embedded_data.hpp"
#include "codevoice/util/error.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::core {

Corpus::Corpus(std::vector<QueryRecord> records, std::string source_path)
    : records_(std::move(records)), source_path_(std::move(source_path)) {
    std::unordered_map<std::string_view, std::size_t> seen;
    for (std::size_t i = 0; i < records_.size(); ++i) {
        auto [it, inserted] = seen.emplace(records_[i].id, i);
        if (!inserted) {
            throw ValidationError("duplicate id '" + records_[i].id + "' (records " +
                                  std::to_string(it->second + 1) + " and " + std::to_string(i + 1) + ")");
        }
    }
}

const QueryRecord* Corpus::find(std::string_view id) const {
    for (const auto& r : records_) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

Corpus parse_corpus(std::string_view text, const std::string& source) {
    std::vector<QueryRecord> records;
    std::unordered_map<std::string, std::size_t> first_line;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (text::trim(line).empty()) continue;

        nlohmann::ordered_json j;
        try {
            j = nlohmann::ordered_json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(source, line_no, std::string("malformed JSON: ") + e.what());
        }
        QueryRecord r;
        try {
            r = record_from_json(j);
        } catch (const ValidationError& e) {
            throw ValidationError(source + ":" + std::to_string(line_no) + ": " + e.what(), line_no);
        }
        if (auto violations = validate_record(r); !violations.empty()) {
            throw ValidationError(source + ":" + std::to_string(line_no) + ": " + text::join(violations, "; "),
                                  line_no);
        }
        auto [it, inserted] = first_line.emplace(r.id, line_no);
        if (!inserted) {
            throw ValidationError(source + ":" + std::to_string(line_no) + ": duplicate id '" + r.id +
                                      "' (first seen on line " + std::to_string(it->second) + ")",
                                  line_no);
        }
        records.push_back(std::move(r));
    }
    return Corpus(std::move(records), source);
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    if (format != CorpusFormat::jsonl) throw ArgumentError("unsupported corpus format");
    if (!std::filesystem::exists(path)) throw ValidationError("corpus file not found: " + path.string());
    return parse_corpus(data::read_file(path), path.string());
}

std::string serialize_corpus(const Corpus& corpus) {
    std::string out;
    for (const auto& r : corpus) {
        out += record_to_json(r).dump();
        out += '\n';
    }
    return out;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    data::write_file(path, serialize_corpus(corpus));
}

}  // namespace codevoice::core
