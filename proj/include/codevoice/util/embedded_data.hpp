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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace codevoice::data {

struct EmbeddedFile {
    std::string_view path;
    std::string_view content;
};

/// Every file under data/, compiled into the library.
std::span<const EmbeddedFile> embedded_files();

/// Content of a bundled data file, e.g. "lexicons/symbols.tsv".
/// Throws codevoice::Error if no such file was bundled.
std::string_view embedded(std::string_view path);

/// A data file's text plus where it came from, so run manifests can hash
/// exactly what was used.
struct Resource {
    std::string origin;
    std::string content;
};

/// Reads `override_path` when non-empty, else the bundled file.
Resource load_resource(const std::filesystem::path& override_path, std::string_view bundled);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace codevoice::data
