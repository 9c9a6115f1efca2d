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

#include <random>
#include <string>
#include <vector>

namespace codevoice::testing {

// None of these collide with a spoken symbol phrase.
inline const std::vector<std::string> kVocab = {"get",   "user",  "info",   "print", "sum",   "data",  "load",  "file",
                                         "parse", "node",  "cache",  "value", "total", "query", "index", "token",
                                         "merge", "sort",  "buffer", "read",  "write", "count", "name",  "path",
                                         "image", "order", "list",   "item",  "build", "score", "fetch", "map"};

inline std::string pick(std::mt19937_64& rng, const std::vector<std::string>& v) { return v[rng() % v.size()]; }

inline std::string cap(std::string w) {
    w[0] = static_cast<char>(w[0] - 'a' + 'A');
    return w;
}

/// camelCase, PascalCase, snake_case, dotted.path, SCREAMING_SNAKE or a call.
inline std::string random_identifier(std::mt19937_64& rng) {
    const std::size_t n = 2 + rng() % 2;
    std::vector<std::string> w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(pick(rng, kVocab));
    std::string id;
    switch (rng() % 6) {
        case 0:
            id = w[0];
            for (std::size_t i = 1; i < n; ++i) id += cap(w[i]);
            break;
        case 1:
            for (auto& x : w) id += cap(x);
            break;
        case 2:
            for (std::size_t i = 0; i < n; ++i) id += (i ? "_" : "") + w[i];
            break;
        case 3:
            for (std::size_t i = 0; i < n; ++i) id += (i ? "." : "") + w[i];
            break;
        case 4:
            for (std::size_t i = 0; i < n; ++i) {
                std::string u = w[i];
                for (auto& c : u) c = static_cast<char>(c - 'a' + 'A');
                id += (i ? "_" : "") + u;
            }
            break;
        default:
            id = w[0] + "_" + w[1] + "()";
            break;
    }
    return id;
}

}  // namespace codevoice::testing
