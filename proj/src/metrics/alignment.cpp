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

#include "codevoice/metrics/alignment.hpp"

#include "codevoice/util/error.hpp"

namespace codevoice::metrics {

const char* to_string(OpKind k) {
    switch (k) {
        case OpKind::match: return "match";
        case OpKind::sub: return "sub";
        case OpKind::del: return "del";
        case OpKind::ins: return "ins";
    }
    return "match";
}

AlignmentResult align_tokens(std::span<const std::string> ref, std::span<const std::string> hyp) {
    return align(ref, hyp, [](const std::string&, const std::string&) { return 1.0; });
}

std::vector<std::string> replay(std::span<const AlignStep> trace, std::span<const std::string> ref,
                                std::span<const std::string> hyp) {
    std::vector<std::string> out;
    std::ptrdiff_t next_ref = 0;
    for (const auto& step : trace) {
        switch (step.kind) {
            case OpKind::match:
                if (step.ref_index != next_ref++) throw Error("trace skips a reference token");
                out.push_back(ref[static_cast<std::size_t>(step.ref_index)]);
                break;
            case OpKind::sub:
            case OpKind::ins:
                if (step.kind == OpKind::sub && step.ref_index != next_ref++) {
                    throw Error("trace skips a reference token");
                }
                out.push_back(hyp[static_cast<std::size_t>(step.hyp_index)]);
                break;
            case OpKind::del:
                if (step.ref_index != next_ref++) throw Error("trace skips a reference token");
                break;
        }
    }
    if (next_ref != static_cast<std::ptrdiff_t>(ref.size())) throw Error("trace does not consume the reference");
    return out;
}

}  // namespace codevoice::metrics
