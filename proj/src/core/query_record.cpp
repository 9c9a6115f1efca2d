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
#include "codevoice/core/query_record.hpp"

#include <algorithm>
#include <array>

#include "codevoice/util/error.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::core {

namespace {

constexpr std::array<std::string_view, 10> kSchemaFields = {
    "id", "dataset", "prog_lang", "nat_lang", "reference_text",
    "verbalized_text", "transcript_raw", "transcript_refined", "code", "gold_answer"};
constexpr std::array<std::string_view, 3> kPipelineFields = {"translated_text", "audio_path", "flags"};

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

std::string required_string(const nlohmann::ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) throw ValidationError(std::string("missing field '") + key + "'");
    if (!it->is_string()) throw ValidationError(std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
}

std::optional<std::string> optional_string(const nlohmann::ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw ValidationError(std::string("field '") + key + "' must be a string or null");
    return text::nfc(it->get<std::string>());
}

bool known_field(std::string_view key) {
    return std::find(kSchemaFields.begin(), kSchemaFields.end(), key) != kSchemaFields.end() ||
           std::find(kPipelineFields.begin(), kPipelineFields.end(), key) != kPipelineFields.end();
}

}  // namespace

std::string_view to_string(Dataset d) {
    switch (d) {
        case Dataset::CSN: return "CSN";
        case Dataset::CSk: return "CSk";
        case Dataset::QA: return "QA";
    }
    return "?";
}

std::string_view to_string(ProgLang p) {
    switch (p) {
        case ProgLang::python: return "python";
        case ProgLang::java: return "java";
        case ProgLang::php: return "php";
    }
    return "?";
}

Dataset parse_dataset(std::string_view s) {
    for (Dataset d : {Dataset::CSN, Dataset::CSk, Dataset::QA}) {
        if (iequals(s, to_string(d))) return d;
    }
    throw ValidationError("unknown dataset '" + std::string(s) + "'");
}

ProgLang parse_prog_lang(std::string_view s) {
    for (ProgLang p : {ProgLang::python, ProgLang::java, ProgLang::php}) {
        if (iequals(s, to_string(p))) return p;
    }
    throw ValidationError("unknown prog_lang '" + std::string(s) + "'");
}

bool QueryRecord::has_flag(std::string_view flag) const {
    return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

void QueryRecord::add_flag(std::string flag) {
    if (!has_flag(flag)) flags.push_back(std::move(flag));
}

std::vector<std::string> validate_record(const QueryRecord& r) {
    std::vector<std::string> out;
    if (r.id.empty()) out.emplace_back("id empty");
    if (text::trim(r.reference_text).empty()) out.emplace_back("reference_text empty");
    if (r.dataset == Dataset::QA && r.prog_lang == ProgLang::php) out.emplace_back("QA has no php split");
    if (!LanguageTag::is_registered(r.nat_lang.code())) {
        out.push_back("nat_lang '" + r.nat_lang.code() + "' not registered");
    }
    return out;
}

QueryRecord record_from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object()) throw ValidationError("record must be a JSON object");
    QueryRecord r;
    r.id = text::nfc(required_string(j, "id"));
    r.dataset = parse_dataset(required_string(j, "dataset"));
    r.prog_lang = parse_prog_lang(required_string(j, "prog_lang"));
    r.nat_lang = LanguageTag::parse(required_string(j, "nat_lang"));
    r.reference_text = text::nfc(required_string(j, "reference_text"));
    r.verbalized_text = optional_string(j, "verbalized_text");
    r.transcript_raw = optional_string(j, "transcript_raw");
    r.transcript_refined = optional_string(j, "transcript_refined");
    r.code = optional_string(j, "code");
    r.gold_answer = optional_string(j, "gold_answer");
    r.translated_text = optional_string(j, "translated_text");
    r.audio_path = optional_string(j, "audio_path");
    if (auto it = j.find("flags"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw ValidationError("field 'flags' must be an array of strings");
        for (const auto& f : *it) {
            if (!f.is_string()) throw ValidationError("field 'flags' must be an array of strings");
            r.flags.push_back(f.get<std::string>());
        }
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known_field(it.key())) r.extra[it.key()] = it.value();
    }
    return r;
}

nlohmann::ordered_json record_to_json(const QueryRecord& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["dataset"] = to_string(r.dataset);
    j["prog_lang"] = to_string(r.prog_lang);
    j["nat_lang"] = r.nat_lang.code();
    j["reference_text"] = r.reference_text;
    auto put = [&j](const char* key, const std::optional<std::string>& v) {
        if (v) j[key] = *v;
    };
    put("verbalized_text", r.verbalized_text);
    put("transcript_raw", r.transcript_raw);
    put("transcript_refined", r.transcript_refined);
    put("code", r.code);
    put("gold_answer", r.gold_answer);
    put("translated_text", r.translated_text);
    put("audio_path", r.audio_path);
    if (!r.flags.empty()) j["flags"] = r.flags;
    for (auto it = r.extra.begin(); it != r.extra.end(); ++it) j[it.key()] = it.value();
    return j;
}

}  // namespace codevoice::core
