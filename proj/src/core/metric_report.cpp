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
#include "codevoice/core/metric_report.hpp"

#include <tuple>

#include "codevoice/util/error.hpp"

namespace codevoice::core {

std::string_view to_string(Stage s) { return s == Stage::asr ? "asr" : "refined"; }

std::string_view stage_label(Stage s) { return s == Stage::asr ? "ASR" : "ASR-R"; }

Stage parse_stage(std::string_view s) {
    if (s == "asr" || s == "ASR") return Stage::asr;
    if (s == "refined" || s == "ASR-R") return Stage::refined;
    throw ArgumentError("unknown stage '" + std::string(s) + "' (expected asr or refined)");
}

bool operator<(const GroupKey& a, const GroupKey& b) {
    return std::make_tuple(to_string(a.dataset), to_string(a.prog_lang), std::string_view(a.nat_lang),
                           stage_label(a.stage)) <
           std::make_tuple(to_string(b.dataset), to_string(b.prog_lang), std::string_view(b.nat_lang),
                           stage_label(b.stage));
}

}  // namespace codevoice::core
