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

#include "codevoice/pipeline/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "codevoice/util/embedded_data.hpp"
#include "codevoice/util/error.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::pipeline {

namespace {

const std::vector<std::string> kPathKeys = {"run.corpus",         "run.output_dir",      "lexicons.symbols",
                                            "lexicons.confusions", "lexicons.acronyms",  "metrics.features"};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            auto t = text::trim(cur);
            if (!t.empty()) out.push_back(std::move(t));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        T out;
        if constexpr (std::is_floating_point_v<T>) {
            out = static_cast<T>(std::stod(value, &used));
        } else {
            if (!value.empty() && value.front() == '-') throw std::invalid_argument("negative");
            out = static_cast<T>(std::stoull(value, &used));
        }
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return out;
    } catch (const std::exception&) {
        throw ConfigError(key + ": '" + value + "' is not a valid number");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    const auto v = text::to_lower(value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(key + ": '" + value + "' is not a boolean");
}

void expect_one_of(const std::string& key, const std::string& value, std::initializer_list<std::string_view> allowed) {
    if (std::find(allowed.begin(), allowed.end(), value) != allowed.end()) return;
    std::string list;
    for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
    throw ConfigError(key + ": '" + value + "' is not one of " + list);
}

bool looks_secret(std::string_view key) {
    const auto k = text::to_lower(key);
    for (const char* word : {"token", "secret", "password", "api_key", "apikey"}) {
        if (k.find(word) != std::string::npos) return true;
    }
    return false;
}

std::filesystem::path opt_path(const std::string& v) { return std::filesystem::path(v); }

}  // namespace

std::string_view to_string(StageKind s) {
    switch (s) {
        case StageKind::translate: return "translate";
        case StageKind::verbalize: return "verbalize";
        case StageKind::tts: return "tts";
        case StageKind::asr: return "asr";
        case StageKind::refine: return "refine";
        case StageKind::score: return "score";
        case StageKind::retrieval: return "retrieval";
        case StageKind::taxonomy: return "taxonomy";
    }
    return "score";
}

StageKind parse_stage_kind(std::string_view s) {
    for (auto k : kStageOrder) {
        if (to_string(k) == s) return k;
    }
    throw ConfigError("unknown stage '" + std::string(s) + "'");
}

std::string_view to_string(CorruptionKind k) {
    switch (k) {
        case CorruptionKind::drop_symbol: return "drop_symbol";
        case CorruptionKind::split_identifier: return "split_identifier";
        case CorruptionKind::confuse_phrase: return "confuse_phrase";
        case CorruptionKind::drop_word: return "drop_word";
    }
    return "drop_word";
}

double CorruptionSpec::p(CorruptionKind k) const {
    auto it = probability.find(k);
    return it == probability.end() ? 0.0 : it->second;
}

void CorruptionSpec::validate() const {
    for (const auto& [k, v] : probability) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ConfigError("corruption." + std::string(to_string(k)) + " must lie in [0, 1]");
        }
    }
}

const std::map<std::string, std::string>& Settings::defaults() {
    static const std::map<std::string, std::string> d = {
        {"run.corpus", ""},
        {"run.output_dir", "codevoice-out"},
        {"run.stages", "verbalize,asr,refine,score,retrieval,taxonomy"},
        {"run.seed", "42"},
        {"run.parallelism", "4"},
        {"run.languages", ""},
        {"metrics.metrics", "wer,per,wfed"},
        {"metrics.g2p", "builtin"},
        {"metrics.g2p_command", ""},
        {"metrics.romanized_indic", "false"},
        {"metrics.features", ""},
        {"lexicons.symbols", ""},
        {"lexicons.confusions", ""},
        {"lexicons.acronyms", ""},
        {"asr.backend", "mock"},
        {"asr.url", ""},
        {"asr.timeout_ms", "60000"},
        {"tts.backend", "mock"},
        {"tts.url", ""},
        {"tts.voice", "default"},
        {"tts.timeout_ms", "60000"},
        {"llm.backend", "offline"},
        {"llm.url", ""},
        {"llm.model", ""},
        {"llm.timeout_ms", "60000"},
        {"llm.concurrency", "4"},
        {"llm.max_retries", "2"},
        {"llm.backoff_ms", "1000"},
        {"translate.backend", "mock"},
        {"translate.url", ""},
        {"translate.model", ""},
        {"translate.timeout_ms", "60000"},
        {"corruption.drop_symbol", "0.5"},
        {"corruption.confuse_phrase", "0.5"},
        {"corruption.split_identifier", "0.3"},
        {"corruption.drop_word", "0"},
        {"retrieval.backend", "offline"},
        {"retrieval.url", ""},
        {"retrieval.model", ""},
        {"retrieval.timeout_ms", "60000"},
        {"retrieval.dimension", "512"},
        {"retrieval.k", "1,5,10"},
        {"retrieval.stages", "original,asr,refined"},
        {"taxonomy.drift_threshold", "0.3"},
        {"taxonomy.recall_threshold", "0.5"},
    };
    return d;
}

Settings::Settings() : values_(defaults()) {}

void Settings::set(const std::string& key, const std::string& value) {
    if (looks_secret(key)) {
        throw ConfigError(key + ": secrets are read from environment variables, not from configuration");
    }
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown configuration key '" + key + "'");
    it->second = text::trim(value);
}

const std::string& Settings::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown configuration key '" + key + "'");
    return it->second;
}

void Settings::apply_override(std::string_view assignment) {
    std::string_view a = assignment;
    if (a.starts_with("--")) a.remove_prefix(2);
    const auto eq = a.find('=');
    if (eq == std::string_view::npos) throw ConfigError("override '" + std::string(assignment) + "' needs key=value");
    const auto key = text::trim(a.substr(0, eq));
    if (key.find('.') == std::string::npos) {
        throw ConfigError("override key '" + key + "' must be written section.key");
    }
    set(key, std::string(a.substr(eq + 1)));
}

Settings Settings::parse(std::string_view ini, const std::filesystem::path& base_dir) {
    boost::property_tree::ptree tree;
    std::istringstream in{std::string(ini)};
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
    }
    Settings s;
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError("config key '" + section + "' is outside a [section]");
        for (const auto& [key, value] : body) {
            const auto full = section + "." + key;
            auto v = value.get_value<std::string>();
            const bool is_path = std::find(kPathKeys.begin(), kPathKeys.end(), full) != kPathKeys.end();
            if (is_path && !v.empty() && !base_dir.empty() && std::filesystem::path(v).is_relative()) {
                v = (base_dir / v).lexically_normal().string();
            }
            s.set(full, v);
        }
    }
    return s;
}

Settings Settings::load(const std::filesystem::path& path) {
    std::string body;
    try {
        body = data::read_file(path);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return parse(body, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

std::string Settings::canonical() const {
    std::string out;
    for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
    return out;
}

bool PipelineConfig::has_stage(StageKind s) const {
    return std::find(stages.begin(), stages.end(), s) != stages.end();
}

PipelineConfig PipelineConfig::from_settings(const Settings& s) {
    PipelineConfig c;
    c.settings = s;
    c.corpus = opt_path(s.get("run.corpus"));
    c.output_dir = opt_path(s.get("run.output_dir"));
    if (c.output_dir.empty()) throw ConfigError("run.output_dir is empty");

    std::vector<StageKind> requested;
    for (const auto& name : split_list(s.get("run.stages"))) requested.push_back(parse_stage_kind(name));
    if (requested.empty()) throw ConfigError("run.stages selects no stage");
    for (auto k : kStageOrder) {
        if (std::find(requested.begin(), requested.end(), k) != requested.end()) c.stages.push_back(k);
    }

    c.seed = parse_number<std::uint64_t>("run.seed", s.get("run.seed"));
    c.parallelism = std::max<std::size_t>(1, parse_number<std::size_t>("run.parallelism", s.get("run.parallelism")));
    c.languages = split_list(s.get("run.languages"));

    c.metrics = split_list(s.get("metrics.metrics"));
    for (const auto& m : c.metrics) expect_one_of("metrics.metrics", m, {"wer", "per", "wfed"});
    c.g2p = s.get("metrics.g2p");
    expect_one_of("metrics.g2p", c.g2p, {"builtin", "external", "passthrough"});
    c.g2p_command = s.get("metrics.g2p_command");
    if (c.g2p == "external" && c.g2p_command.empty()) throw ConfigError("metrics.g2p_command is required for external G2P");
    c.romanized_indic = parse_bool("metrics.romanized_indic", s.get("metrics.romanized_indic"));
    c.features_path = opt_path(s.get("metrics.features"));
    c.symbols_path = opt_path(s.get("lexicons.symbols"));
    c.confusions_path = opt_path(s.get("lexicons.confusions"));
    c.acronyms_path = opt_path(s.get("lexicons.acronyms"));

    auto endpoint = [&](const std::string& section, std::initializer_list<std::string_view> backends) {
        Endpoint e;
        e.backend = s.get(section + ".backend");
        expect_one_of(section + ".backend", e.backend, backends);
        e.url = s.get(section + ".url");
        if (s.values().contains(section + ".model")) e.model = s.get(section + ".model");
        e.timeout = std::chrono::milliseconds(
            parse_number<std::uint64_t>(section + ".timeout_ms", s.get(section + ".timeout_ms")));
        if (e.backend == "remote" && e.url.empty()) throw ConfigError(section + ".url is required for a remote backend");
        return e;
    };
    c.asr = endpoint("asr", {"mock", "remote"});
    c.tts = endpoint("tts", {"mock", "remote"});
    c.tts_voice = s.get("tts.voice");
    c.llm = endpoint("llm", {"offline", "mock", "remote"});
    c.translate = endpoint("translate", {"mock", "remote"});
    c.llm_concurrency = std::max<std::size_t>(1, parse_number<std::size_t>("llm.concurrency", s.get("llm.concurrency")));
    c.llm_max_retries = parse_number<std::size_t>("llm.max_retries", s.get("llm.max_retries"));
    c.llm_backoff = std::chrono::milliseconds(parse_number<std::uint64_t>("llm.backoff_ms", s.get("llm.backoff_ms")));

    c.corruption.seed = c.seed;
    for (auto k : {CorruptionKind::drop_symbol, CorruptionKind::split_identifier, CorruptionKind::confuse_phrase,
                   CorruptionKind::drop_word}) {
        const auto key = "corruption." + std::string(to_string(k));
        c.corruption.probability[k] = parse_number<double>(key, s.get(key));
    }
    c.corruption.validate();

    c.embedding = endpoint("retrieval", {"offline", "remote"});
    c.embedding_dimension = parse_number<std::size_t>("retrieval.dimension", s.get("retrieval.dimension"));
    if (c.embedding_dimension == 0) throw ConfigError("retrieval.dimension must be positive");
    for (const auto& k : split_list(s.get("retrieval.k"))) {
        const auto v = parse_number<std::size_t>("retrieval.k", k);
        if (v == 0) throw ConfigError("retrieval.k values must be at least 1");
        c.ks.push_back(v);
    }
    if (c.ks.empty()) throw ConfigError("retrieval.k is empty");
    std::sort(c.ks.begin(), c.ks.end());
    c.ks.erase(std::unique(c.ks.begin(), c.ks.end()), c.ks.end());
    for (const auto& st : split_list(s.get("retrieval.stages"))) {
        try {
            c.retrieval_stages.push_back(retrieval::parse_query_stage(st));
        } catch (const ArgumentError& e) {
            throw ConfigError(std::string("retrieval.stages: ") + e.what());
        }
    }

    c.drift_threshold = parse_number<double>("taxonomy.drift_threshold", s.get("taxonomy.drift_threshold"));
    c.recall_threshold = parse_number<double>("taxonomy.recall_threshold", s.get("taxonomy.recall_threshold"));
    if (c.drift_threshold >= c.recall_threshold) {
        throw ConfigError("taxonomy.drift_threshold must be below taxonomy.recall_threshold");
    }
    return c;
}

std::string token_from_env(std::string_view backend_name) {
    std::string var = "CODEVOICE_";
    for (char ch : backend_name) var += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    var += "_TOKEN";
    const char* v = std::getenv(var.c_str());
    return v ? v : "";
}

}  // namespace codevoice::pipeline
