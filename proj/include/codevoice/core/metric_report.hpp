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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codevoice/core/query_record.hpp"

namespace codevoice::core {

/// Transcript stage being scored: raw recognizer output or refined output.
enum class Stage { asr, refined };

std::string_view to_string(Stage s);    // "asr" / "refined"
std::string_view stage_label(Stage s);  // "ASR" / "ASR-R"
Stage parse_stage(std::string_view s);

struct RecordScore {
    std::string id;
    Stage stage = Stage::asr;
    std::optional<double> wer;
    std::optional<double> per;
    std::optional<double> wfed;
    /// Reference was empty while the hypothesis was not.
    bool degenerate = false;
    std::vector<std::string> taxonomy_tags;
};

struct GroupKey {
    Dataset dataset = Dataset::CSN;
    ProgLang prog_lang = ProgLang::python;
    std::string nat_lang;
    Stage stage = Stage::asr;

    friend bool operator==(const GroupKey&, const GroupKey&) = default;
};

/// Lexicographic on the printed names, which is the report row order.
bool operator<(const GroupKey& a, const GroupKey& b);

struct AggregateRow {
    GroupKey key;
    std::optional<double> wer;
    std::optional<double> per;
    std::optional<double> wfed;
    std::size_t n_records = 0;
};

struct RetrievalSummary {
    std::string stage;
    std::size_t k = 0;
    double recall = 0.0;
    double mrr = 0.0;
    std::size_t n_queries = 0;
    std::size_t pool_size = 0;
};

struct MetricReport {
    std::vector<RecordScore> per_record;
    std::vector<AggregateRow> aggregates;
    std::vector<RetrievalSummary> retrieval;
};

}  // namespace codevoice::core
