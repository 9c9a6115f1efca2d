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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "codevoice/core/edit_ops.hpp"

namespace codevoice::metrics {

enum class OpKind { match, sub, del, ins };

const char* to_string(OpKind k);

/// One alignment column. ref_index / hyp_index are -1 for the side an
/// insertion / deletion does not consume.
struct AlignStep {
    OpKind kind = OpKind::match;
    std::ptrdiff_t ref_index = -1;
    std::ptrdiff_t hyp_index = -1;

    friend bool operator==(const AlignStep&, const AlignStep&) = default;
};

struct AlignmentResult {
    core::EditOps ops;
    double cost = 0.0;
    std::vector<AlignStep> trace;
};

namespace detail {
constexpr double kTieEpsilon = 1e-9;
inline bool same_cost(double a, double b) { return std::fabs(a - b) <= kTieEpsilon; }
}  // namespace detail

/// Minimum-cost edit alignment by dynamic programming. Equal tokens are
/// matched at no cost; sub_cost is only consulted for unequal tokens. When
/// several alignments share the minimum cost the traceback (which walks from
/// the end) prefers match, then substitution, then deletion, then insertion.
template <typename T, typename SubCost>
AlignmentResult align(std::span<const T> ref, std::span<const T> hyp, SubCost&& sub_cost, double ins_cost = 1.0,
                      double del_cost = 1.0) {
    const std::size_t n = ref.size();
    const std::size_t m = hyp.size();
    const std::size_t w = m + 1;
    std::vector<double> d((n + 1) * w, 0.0);
    std::vector<double> sub((n + 1) * w, 0.0);
    auto at = [w](std::size_t i, std::size_t j) { return i * w + j; };
    for (std::size_t j = 1; j <= m; ++j) d[at(0, j)] = d[at(0, j - 1)] + ins_cost;
    for (std::size_t i = 1; i <= n; ++i) {
        d[at(i, 0)] = d[at(i - 1, 0)] + del_cost;
        for (std::size_t j = 1; j <= m; ++j) {
            const bool equal = ref[i - 1] == hyp[j - 1];
            const double s = equal ? 0.0 : static_cast<double>(sub_cost(ref[i - 1], hyp[j - 1]));
            sub[at(i, j)] = s;
            double best = d[at(i - 1, j - 1)] + s;
            best = std::min(best, d[at(i - 1, j)] + del_cost);
            best = std::min(best, d[at(i, j - 1)] + ins_cost);
            d[at(i, j)] = best;
        }
    }

    AlignmentResult result;
    result.cost = d[at(n, m)];
    result.ops.reference_length = n;
    std::size_t i = n, j = m;
    while (i > 0 || j > 0) {
        const double here = d[at(i, j)];
        if (i > 0 && j > 0 && detail::same_cost(here, d[at(i - 1, j - 1)] + sub[at(i, j)])) {
            const bool equal = ref[i - 1] == hyp[j - 1];
            result.trace.push_back({equal ? OpKind::match : OpKind::sub, static_cast<std::ptrdiff_t>(i - 1),
                                    static_cast<std::ptrdiff_t>(j - 1)});
            if (!equal) ++result.ops.substitutions;
            --i;
            --j;
        } else if (i > 0 && detail::same_cost(here, d[at(i - 1, j)] + del_cost)) {
            result.trace.push_back({OpKind::del, static_cast<std::ptrdiff_t>(i - 1), -1});
            ++result.ops.deletions;
            --i;
        } else {
            result.trace.push_back({OpKind::ins, -1, static_cast<std::ptrdiff_t>(j - 1)});
            ++result.ops.insertions;
            --j;
        }
    }
    std::reverse(result.trace.begin(), result.trace.end());
    return result;
}

/// Unit-cost alignment of token sequences (Levenshtein).
AlignmentResult align_tokens(std::span<const std::string> ref, std::span<const std::string> hyp);

/// Applies a trace to ref, producing the hypothesis it describes.
std::vector<std::string> replay(std::span<const AlignStep> trace, std::span<const std::string> ref,
                                std::span<const std::string> hyp);

}  // namespace codevoice::metrics
