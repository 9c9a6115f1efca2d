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

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "codevoice/core/metric_report.hpp"

namespace codevoice::metrics {

struct KeyedScore {
    core::GroupKey key;
    core::RecordScore score;
};

/// Mean of each metric per (dataset, prog_lang, nat_lang, stage) group, in
/// group-key order. A metric missing from every record of a group stays
/// unset; groups without records do not appear.
std::vector<core::AggregateRow> aggregate(const std::vector<KeyedScore>& scores);

nlohmann::ordered_json to_json(const core::MetricReport& report);
core::MetricReport report_from_json(const nlohmann::json& j);

/// Aggregates as CSV: dataset,prog_lang,nat_lang,stage,wer,per,wfed,n_records.
/// Ratios are raw; a metric that was not computed is an empty cell.
std::string to_csv(const core::MetricReport& report);

/// Human-readable tables with ratios shown as percentages to one decimal.
std::string to_text(const core::MetricReport& report);

/// "12.3" for 0.1234.
std::string percent(double ratio);

}  // namespace codevoice::metrics
