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
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "codevoice/core/corpus.hpp"
#include "codevoice/core/metric_report.hpp"
#include "codevoice/phonetics/feature_table.hpp"
#include "codevoice/phonetics/g2p.hpp"
#include "codevoice/pipeline/backends.hpp"
#include "codevoice/pipeline/config.hpp"
#include "codevoice/refinement/confusion_lexicon.hpp"
#include "codevoice/retrieval/embedding.hpp"
#include "codevoice/verbalizer/verbalizer.hpp"

namespace codevoice::pipeline {

struct DataFile {
    std::string name;    ///< bundled path, e.g. "lexicons/symbols.tsv"
    std::string origin;  ///< "bundled:..." or the override path
    std::string sha256;
};

/// Lexicons, feature table and G2P adapter a run uses.
struct Resources {
    std::shared_ptr<const verbal::SymbolLexicon> symbols;
    std::shared_ptr<const refine::ConfusionLexicon> confusions;
    std::shared_ptr<const verbal::Verbalizer> verbalizer;
    std::shared_ptr<const phonetics::ArticulatoryFeatureTable> table;
    std::shared_ptr<const phonetics::G2PAdapter> g2p;
    std::vector<DataFile> data_files;

    static Resources load(const PipelineConfig& config);
};

/// Identifiers in a record's code snippet (keywords dropped). This is the
/// code context handed to refinement.
std::vector<std::string> context_hints(const core::QueryRecord& r);

/// Spoken form the transcripts are scored against: verbalized_text, or the
/// verbalization of translated_text / reference_text.
std::string spoken_reference(const core::QueryRecord& r, const verbal::Verbalizer& verbalizer);

struct ScoreOptions {
    bool wer = true;
    bool per = true;
    bool wfed = true;
};

/// Scores one transcript stage of a record; nullopt when the record has no
/// transcript for that stage. The hypothesis is verbalized first so written
/// code tokens compare with their spoken reference form. PER and WFED stay
/// empty for languages the G2P adapter does not cover.
std::optional<core::RecordScore> score_record(const core::QueryRecord& r, core::Stage stage, const Resources& res,
                                              const ScoreOptions& options = {});

/// Backends that replace the configured ones (tests inject failing mocks).
struct BackendOverrides {
    std::shared_ptr<refine::LLMBackend> llm;
    std::shared_ptr<refine::LLMBackend> translate;
    std::shared_ptr<TTSBackend> tts;
    std::shared_ptr<ASRBackend> asr;
    std::shared_ptr<retrieval::EmbeddingBackend> embedding;
};

struct RunResult {
    core::MetricReport report;
    core::Corpus corpus;
    nlohmann::ordered_json manifest;
    /// Records that gained a flag during this run.
    std::size_t flagged_records = 0;

    int exit_code() const { return flagged_records > 0 ? 2 : 0; }
};

/// Throws ConfigError when the selected stages cannot run on this corpus.
void check_stage_dependencies(const PipelineConfig& config, const core::Corpus& corpus);

/// Runs the selected stages in order and writes, under output_dir:
/// stages/NN-<stage>.jsonl snapshots, corpus.jsonl, report.{json,csv,txt},
/// retrieval-<stage>.json, taxonomy.json and manifest.json. Only config and
/// corpus problems throw; backend failures flag records.
RunResult run_pipeline(const PipelineConfig& config, const BackendOverrides& overrides = {});
RunResult run_pipeline(const PipelineConfig& config, const core::Corpus& corpus,
                       const BackendOverrides& overrides = {});

/// Manifest without its "timing" member, for reproducibility checks.
nlohmann::ordered_json manifest_without_timing(nlohmann::ordered_json manifest);

}  // namespace codevoice::pipeline
