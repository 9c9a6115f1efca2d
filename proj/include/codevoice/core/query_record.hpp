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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "codevoice/core/language.hpp"

namespace codevoice::core {

enum class Dataset { CSN, CSk, QA };
enum class ProgLang { python, java, php };

std::string_view to_string(Dataset d);
std::string_view to_string(ProgLang p);
/// Case-insensitive; throws ValidationError on unknown names.
Dataset parse_dataset(std::string_view s);
ProgLang parse_prog_lang(std::string_view s);

/// One corpus item. The field set mirrors the JSONL schema; translated_text,
/// audio_path and flags are written by pipeline stages. Fields the schema
/// does not know are kept verbatim in `extra`.
struct QueryRecord {
    std::string id;
    Dataset dataset = Dataset::CSN;
    ProgLang prog_lang = ProgLang::python;
    LanguageTag nat_lang;
    std::string reference_text;
    std::optional<std::string> verbalized_text;
    std::optional<std::string> transcript_raw;
    std::optional<std::string> transcript_refined;
    std::optional<std::string> code;
    std::optional<std::string> gold_answer;

    std::optional<std::string> translated_text;
    std::optional<std::string> audio_path;
    std::vector<std::string> flags;

    nlohmann::ordered_json extra = nlohmann::ordered_json::object();

    bool has_flag(std::string_view flag) const;
    void add_flag(std::string flag);

    friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

/// Every invariant violation, as human-readable text. Never throws.
std::vector<std::string> validate_record(const QueryRecord& r);

/// Builds a record from one parsed JSONL object; strings are NFC-normalized.
/// Throws ValidationError describing the first bad field.
QueryRecord record_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json record_to_json(const QueryRecord& r);

}  // namespace codevoice::core
