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

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace codevoice::phonetics {

/// IPA segment -> binary articulatory feature vector. Every row has the same
/// width. Lookups of segments missing from the table are tallied so a run
/// can report how often the maximal fallback cost was used.
class ArticulatoryFeatureTable {
public:
    ArticulatoryFeatureTable(std::vector<std::string> feature_names,
                             std::vector<std::pair<std::string, std::vector<std::uint8_t>>> rows);
    ArticulatoryFeatureTable(const ArticulatoryFeatureTable& other);

    /// CSV with a "segment,<feature>..." header and 0/1 cells.
    static ArticulatoryFeatureTable parse(std::string_view csv, const std::string& source);
    static ArticulatoryFeatureTable load(const std::filesystem::path& path);
    /// The bundled 22-feature table.
    static ArticulatoryFeatureTable bundled();

    const std::vector<std::string>& feature_names() const { return feature_names_; }
    std::size_t width() const { return feature_names_.size(); }
    std::size_t size() const { return order_.size(); }
    /// Segments in file order.
    const std::vector<std::string>& segments() const { return order_; }

    bool contains(std::string_view segment) const;
    /// nullptr when the segment is not in the table.
    const std::vector<std::uint8_t>* find(std::string_view segment) const;

    /// Hamming distance over width(); 1.0 (and a tallied warning) when either
    /// side is unknown. Identical strings are 0 even when unknown.
    double distance(std::string_view a, std::string_view b) const;

    /// Unknown segment -> number of distance() calls that hit it.
    std::map<std::string, std::size_t> unknown_lookups() const;
    std::size_t unknown_lookup_count() const;
    void reset_warnings() const;

private:
    void note_unknown(std::string_view segment) const;

    std::vector<std::string> feature_names_;
    std::vector<std::string> order_;
    std::unordered_map<std::string, std::vector<std::uint8_t>> rows_;
    mutable std::mutex warn_mutex_;
    mutable std::map<std::string, std::size_t> unknown_;
};

double segment_distance(std::string_view a, std::string_view b, const ArticulatoryFeatureTable& table);

}  // namespace codevoice::phonetics
