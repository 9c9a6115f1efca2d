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
#include "codevoice/util/embedded_data.hpp"

#include <fstream>
#include <sstream>

#include "codevoice/util/error.hpp"

namespace codevoice::data {

std::string_view embedded(std::string_view path) {
    for (const auto& f : embedded_files()) {
        if (f.path == path) return f.content;
    }
    throw Error("no bundled data file '" + std::string(path) + "'");
}

Resource load_resource(const std::filesystem::path& override_path, std::string_view bundled) {
    if (!override_path.empty()) return {override_path.string(), read_file(override_path)};
    return {"bundled:" + std::string(bundled), std::string(embedded(bundled))};
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to " + path.string());
}

}  // namespace codevoice::data
