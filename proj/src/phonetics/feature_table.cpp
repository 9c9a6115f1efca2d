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

#include "codevoice/phonetics/feature_table.hpp"

#include "codevoice/util/embedded_data.hpp"
#include "codevoice/util/error.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::phonetics {

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(text::trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                     : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

}  // namespace

ArticulatoryFeatureTable::ArticulatoryFeatureTable(
    std::vector<std::string> feature_names, std::vector<std::pair<std::string, std::vector<std::uint8_t>>> rows)
    : feature_names_(std::move(feature_names)) {
    if (feature_names_.empty()) throw ValidationError("feature table has no features");
    for (auto& [segment, vec] : rows) {
        auto key = text::nfc(segment);
        if (key.empty()) throw ValidationError("feature table: empty segment");
        if (vec.size() != feature_names_.size()) {
            throw ValidationError("feature table: row '" + key + "' has " + std::to_string(vec.size()) +
                                  " cells, expected " + std::to_string(feature_names_.size()));
        }
        for (auto v : vec) {
            if (v > 1) throw ValidationError("feature table: row '" + key + "' is not binary");
        }
        if (!rows_.emplace(key, std::move(vec)).second) {
            throw ValidationError("feature table: segment '" + key + "' listed twice");
        }
        order_.push_back(std::move(key));
    }
}

ArticulatoryFeatureTable::ArticulatoryFeatureTable(const ArticulatoryFeatureTable& other)
    : feature_names_(other.feature_names_), order_(other.order_), rows_(other.rows_) {}

ArticulatoryFeatureTable ArticulatoryFeatureTable::parse(std::string_view csv, const std::string& source) {
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::vector<std::uint8_t>>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header = true;
    while (pos < csv.size()) {
        auto nl = csv.find('\n', pos);
        auto line = csv.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? csv.size() : nl + 1;
        ++line_no;
        if (text::trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (header) {
            if (cells.size() < 2) throw ParseError(source, line_no, "header needs a segment column and features");
            names.assign(cells.begin() + 1, cells.end());
            header = false;
            continue;
        }
        if (cells.size() != names.size() + 1) {
            throw ParseError(source, line_no,
                             "expected " + std::to_string(names.size() + 1) + " cells, got " +
                                 std::to_string(cells.size()));
        }
        std::vector<std::uint8_t> vec;
        vec.reserve(names.size());
        for (std::size_t i = 1; i < cells.size(); ++i) {
            if (cells[i] != "0" && cells[i] != "1") {
                throw ParseError(source, line_no, "cell '" + cells[i] + "' is not 0 or 1");
            }
            vec.push_back(cells[i] == "1" ? 1 : 0);
        }
        rows.emplace_back(cells[0], std::move(vec));
    }
    if (header) throw ParseError(source, 0, "empty feature table");
    try {
        return ArticulatoryFeatureTable(std::move(names), std::move(rows));
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }
}

ArticulatoryFeatureTable ArticulatoryFeatureTable::load(const std::filesystem::path& path) {
    return parse(data::read_file(path), path.string());
}

ArticulatoryFeatureTable ArticulatoryFeatureTable::bundled() {
    return parse(data::embedded("phonetics/features.csv"), "bundled:phonetics/features.csv");
}

bool ArticulatoryFeatureTable::contains(std::string_view segment) const { return find(segment) != nullptr; }

const std::vector<std::uint8_t>* ArticulatoryFeatureTable::find(std::string_view segment) const {
    auto it = rows_.find(std::string(segment));
    return it == rows_.end() ? nullptr : &it->second;
}

double ArticulatoryFeatureTable::distance(std::string_view a, std::string_view b) const {
    if (a == b) return 0.0;
    const auto* va = find(a);
    const auto* vb = find(b);
    if (!va || !vb) {
        if (!va) note_unknown(a);
        if (!vb) note_unknown(b);
        return 1.0;
    }
    std::size_t diff = 0;
    for (std::size_t i = 0; i < va->size(); ++i) diff += (*va)[i] != (*vb)[i];
    return static_cast<double>(diff) / static_cast<double>(width());
}

void ArticulatoryFeatureTable::note_unknown(std::string_view segment) const {
    std::lock_guard lock(warn_mutex_);
    ++unknown_[std::string(segment)];
}

std::map<std::string, std::size_t> ArticulatoryFeatureTable::unknown_lookups() const {
    std::lock_guard lock(warn_mutex_);
    return unknown_;
}

std::size_t ArticulatoryFeatureTable::unknown_lookup_count() const {
    std::lock_guard lock(warn_mutex_);
    std::size_t total = 0;
    for (const auto& [seg, n] : unknown_) total += n;
    return total;
}

void ArticulatoryFeatureTable::reset_warnings() const {
    std::lock_guard lock(warn_mutex_);
    unknown_.clear();
}

double segment_distance(std::string_view a, std::string_view b, const ArticulatoryFeatureTable& table) {
    return table.distance(a, b);
}

}  // namespace codevoice::phonetics
