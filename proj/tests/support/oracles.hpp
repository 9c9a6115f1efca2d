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
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace codevoice::testing {

/// Minimum edit cost by trying every alignment path (no memoization), so it
/// shares nothing with the dynamic program under test. Exponential; keep the
/// inputs short.
template <typename SubCost>
double brute_force_cost(const std::vector<std::string>& a, const std::vector<std::string>& b, SubCost&& sub,
                        std::size_t i = 0, std::size_t j = 0) {
    if (i == a.size()) return static_cast<double>(b.size() - j);
    if (j == b.size()) return static_cast<double>(a.size() - i);
    const double diag = (a[i] == b[j] ? 0.0 : sub(a[i], b[j])) + brute_force_cost(a, b, sub, i + 1, j + 1);
    const double del = 1.0 + brute_force_cost(a, b, sub, i + 1, j);
    const double ins = 1.0 + brute_force_cost(a, b, sub, i, j + 1);
    return std::min({diag, del, ins});
}

inline double brute_force_levenshtein(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return brute_force_cost(a, b, [](const std::string&, const std::string&) { return 1.0; });
}

}  // namespace codevoice::testing
