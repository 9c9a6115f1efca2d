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

#include "codevoice/metrics/report.hpp"

#include <cstdio>
#include <iomanip>
#include <map>
#include <sstream>

namespace codevoice::metrics {

namespace {

struct Sum {
    double total = 0.0;
    std::size_t n = 0;

    void add(const std::optional<double>& v) {
        if (v) {
            total += *v;
            ++n;
        }
    }
    std::optional<double> mean() const {
        return n ? std::optional<double>(total / static_cast<double>(n)) : std::nullopt;
    }
};

nlohmann::ordered_json opt(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::optional<double> opt_from(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

std::string csv_cell(const std::optional<double>& v) {
    if (!v) return "";
    std::ostringstream os;
    os << std::setprecision(17) << *v;
    return os.str();
}

std::string pct_cell(const std::optional<double>& v) { return v ? percent(*v) : "-"; }

}  // namespace

std::vector<core::AggregateRow> aggregate(const std::vector<KeyedScore>& scores) {
    struct Acc {
        Sum wer, per, wfed;
        std::size_t n = 0;
    };
    std::map<core::GroupKey, Acc> groups;
    for (const auto& s : scores) {
        auto& acc = groups[s.key];
        acc.wer.add(s.score.wer);
        acc.per.add(s.score.per);
        acc.wfed.add(s.score.wfed);
        ++acc.n;
    }
    std::vector<core::AggregateRow> rows;
    for (const auto& [key, acc] : groups) {
        rows.push_back({key, acc.wer.mean(), acc.per.mean(), acc.wfed.mean(), acc.n});
    }
    return rows;
}

std::string percent(double ratio) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", ratio * 100.0);
    return buf;
}

nlohmann::ordered_json to_json(const core::MetricReport& report) {
    nlohmann::ordered_json j;
    auto& per_record = j["per_record"] = nlohmann::ordered_json::object();
    for (const auto& s : report.per_record) {
        nlohmann::ordered_json entry;
        entry["wer"] = opt(s.wer);
        entry["per"] = opt(s.per);
        entry["wfed"] = opt(s.wfed);
        entry["degenerate"] = s.degenerate;
        entry["taxonomy_tags"] = s.taxonomy_tags;
        per_record[s.id][std::string(core::to_string(s.stage))] = std::move(entry);
    }
    auto& aggregates = j["aggregates"] = nlohmann::ordered_json::array();
    for (const auto& row : report.aggregates) {
        aggregates.push_back({{"dataset", core::to_string(row.key.dataset)},
                              {"prog_lang", core::to_string(row.key.prog_lang)},
                              {"nat_lang", row.key.nat_lang},
                              {"stage", core::stage_label(row.key.stage)},
                              {"wer", opt(row.wer)},
                              {"per", opt(row.per)},
                              {"wfed", opt(row.wfed)},
                              {"n_records", row.n_records}});
    }
    auto& retrieval = j["retrieval"] = nlohmann::ordered_json::array();
    for (const auto& r : report.retrieval) {
        retrieval.push_back({{"stage", r.stage},
                             {"k", r.k},
                             {"recall", r.recall},
                             {"mrr", r.mrr},
                             {"n_queries", r.n_queries},
                             {"pool_size", r.pool_size}});
    }
    return j;
}

core::MetricReport report_from_json(const nlohmann::json& j) {
    core::MetricReport report;
    if (j.contains("per_record")) {
        for (const auto& [id, stages] : j.at("per_record").items()) {
            for (const auto& [stage, entry] : stages.items()) {
                core::RecordScore s;
                s.id = id;
                s.stage = core::parse_stage(stage);
                s.wer = opt_from(entry, "wer");
                s.per = opt_from(entry, "per");
                s.wfed = opt_from(entry, "wfed");
                s.degenerate = entry.value("degenerate", false);
                s.taxonomy_tags = entry.value("taxonomy_tags", std::vector<std::string>{});
                report.per_record.push_back(std::move(s));
            }
        }
    }
    if (j.contains("aggregates")) {
        for (const auto& a : j.at("aggregates")) {
            core::AggregateRow row;
            row.key.dataset = core::parse_dataset(a.at("dataset").get<std::string>());
            row.key.prog_lang = core::parse_prog_lang(a.at("prog_lang").get<std::string>());
            row.key.nat_lang = a.at("nat_lang").get<std::string>();
            row.key.stage = core::parse_stage(a.at("stage").get<std::string>());
            row.wer = opt_from(a, "wer");
            row.per = opt_from(a, "per");
            row.wfed = opt_from(a, "wfed");
            row.n_records = a.at("n_records").get<std::size_t>();
            report.aggregates.push_back(std::move(row));
        }
    }
    if (j.contains("retrieval")) {
        for (const auto& r : j.at("retrieval")) {
            report.retrieval.push_back({r.at("stage").get<std::string>(), r.at("k").get<std::size_t>(),
                                        r.at("recall").get<double>(), r.at("mrr").get<double>(),
                                        r.at("n_queries").get<std::size_t>(), r.at("pool_size").get<std::size_t>()});
        }
    }
    return report;
}

std::string to_csv(const core::MetricReport& report) {
    std::ostringstream os;
    os << "dataset,prog_lang,nat_lang,stage,wer,per,wfed,n_records\n";
    for (const auto& row : report.aggregates) {
        os << core::to_string(row.key.dataset) << ',' << core::to_string(row.key.prog_lang) << ','
           << row.key.nat_lang << ',' << core::stage_label(row.key.stage) << ',' << csv_cell(row.wer) << ','
           << csv_cell(row.per) << ',' << csv_cell(row.wfed) << ',' << row.n_records << '\n';
    }
    return os.str();
}

std::string to_text(const core::MetricReport& report) {
    std::ostringstream os;
    if (!report.aggregates.empty()) {
        os << std::left << std::setw(8) << "dataset" << std::setw(8) << "lang" << std::setw(6) << "nat"
           << std::setw(7) << "stage" << std::right << std::setw(8) << "WER%" << std::setw(8) << "PER%"
           << std::setw(8) << "WFED%" << std::setw(8) << "n" << '\n';
        for (const auto& row : report.aggregates) {
            os << std::left << std::setw(8) << core::to_string(row.key.dataset) << std::setw(8)
               << core::to_string(row.key.prog_lang) << std::setw(6) << row.key.nat_lang << std::setw(7)
               << core::stage_label(row.key.stage) << std::right << std::setw(8) << pct_cell(row.wer)
               << std::setw(8) << pct_cell(row.per) << std::setw(8) << pct_cell(row.wfed) << std::setw(8)
               << row.n_records << '\n';
        }
    }
    if (!report.retrieval.empty()) {
        if (!report.aggregates.empty()) os << '\n';
        os << std::left << std::setw(10) << "stage" << std::right << std::setw(4) << "k" << std::setw(10)
           << "Recall%" << std::setw(8) << "MRR%" << std::setw(9) << "queries" << std::setw(7) << "pool" << '\n';
        for (const auto& r : report.retrieval) {
            os << std::left << std::setw(10) << r.stage << std::right << std::setw(4) << r.k << std::setw(10)
               << percent(r.recall) << std::setw(8) << percent(r.mrr) << std::setw(9) << r.n_queries
               << std::setw(7) << r.pool_size << '\n';
        }
    }
    return os.str();
}

}  // namespace codevoice::metrics
