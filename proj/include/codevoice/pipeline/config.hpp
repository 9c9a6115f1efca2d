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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codevoice/retrieval/evaluation.hpp"

namespace codevoice::pipeline {

enum class StageKind { translate, verbalize, tts, asr, refine, score, retrieval, taxonomy };

inline constexpr StageKind kStageOrder[] = {StageKind::translate, StageKind::verbalize, StageKind::tts,
                                            StageKind::asr,       StageKind::refine,    StageKind::score,
                                            StageKind::retrieval, StageKind::taxonomy};

std::string_view to_string(StageKind s);
StageKind parse_stage_kind(std::string_view s);

enum class CorruptionKind { drop_symbol, split_identifier, confuse_phrase, drop_word };

std::string_view to_string(CorruptionKind k);

struct CorruptionSpec {
    std::uint64_t seed = 42;
    std::map<CorruptionKind, double> probability;

    double p(CorruptionKind k) const;
    /// Throws ConfigError for probabilities outside [0, 1].
    void validate() const;
};

/// Flat "section.key" -> value settings. Every key has a default; a config
/// file and then command-line overrides replace them. Unknown keys and
/// anything that looks like a secret are rejected.
class Settings {
public:
    Settings();

    /// INI file. Relative paths in path-valued keys are resolved against the
    /// file's directory.
    static Settings load(const std::filesystem::path& path);
    static Settings parse(std::string_view ini, const std::filesystem::path& base_dir = {});

    /// "section.key=value" (a leading "--" is accepted).
    void apply_override(std::string_view assignment);
    void set(const std::string& key, const std::string& value);
    const std::string& get(const std::string& key) const;
    const std::map<std::string, std::string>& values() const { return values_; }

    /// One "key = value" line per setting, sorted; hashed into the manifest.
    std::string canonical() const;

    static const std::map<std::string, std::string>& defaults();

private:
    std::map<std::string, std::string> values_;
};

struct Endpoint {
    std::string backend;
    std::string url;
    std::string model;
    std::chrono::milliseconds timeout{60000};
};

struct PipelineConfig {
    std::filesystem::path corpus;
    std::filesystem::path output_dir;
    std::vector<StageKind> stages;  ///< canonical order, no duplicates
    std::uint64_t seed = 42;
    std::size_t parallelism = 4;
    std::vector<std::string> languages;  ///< empty = every language in the corpus

    std::vector<std::string> metrics;  ///< subset of wer, per, wfed
    std::string g2p = "builtin";       ///< builtin | external | passthrough
    std::string g2p_command;
    bool romanized_indic = false;

    std::filesystem::path symbols_path;  ///< empty = bundled
    std::filesystem::path confusions_path;
    std::filesystem::path acronyms_path;
    std::filesystem::path features_path;

    Endpoint asr;        ///< mock | remote
    Endpoint tts;        ///< mock | remote
    std::string tts_voice = "default";
    Endpoint llm;        ///< offline | mock | remote
    Endpoint translate;  ///< mock | remote
    std::size_t llm_concurrency = 4;
    std::size_t llm_max_retries = 2;
    std::chrono::milliseconds llm_backoff{1000};

    CorruptionSpec corruption;

    Endpoint embedding;  ///< offline | remote
    std::size_t embedding_dimension = 512;
    std::vector<std::size_t> ks;
    std::vector<retrieval::QueryStage> retrieval_stages;

    double drift_threshold = 0.3;
    double recall_threshold = 0.5;

    Settings settings;

    bool has_stage(StageKind s) const;

    /// Validates and converts. Throws ConfigError.
    static PipelineConfig from_settings(const Settings& s);
};

/// Bearer token for a backend, read from CODEVOICE_<NAME>_TOKEN.
std::string token_from_env(std::string_view backend_name);

}  // namespace codevoice::pipeline
