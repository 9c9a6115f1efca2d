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

#include "codevoice/pipeline/run.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <mutex>
#include <set>

#include <spdlog/spdlog.h>

#include "codevoice/metrics/metrics.hpp"
#include "codevoice/metrics/report.hpp"
#include "codevoice/refinement/refiner.hpp"
#include "codevoice/retrieval/evaluation.hpp"
#include "codevoice/taxonomy/taxonomy.hpp"
#include "codevoice/util/embedded_data.hpp"
#include "codevoice/util/error.hpp"
#include "codevoice/util/hash.hpp"
#include "codevoice/util/parallel.hpp"
#include "codevoice/util/subprocess.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::pipeline {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

http::Endpoint http_endpoint(const Endpoint& e, std::string_view token_name) {
    return {e.url, token_from_env(token_name), e.timeout};
}

bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

struct LlmUsage {
    std::mutex mutex;
    std::size_t calls = 0;
    std::size_t failures = 0;
    std::size_t prompt_tokens = 0;
    std::size_t completion_tokens = 0;
    std::chrono::milliseconds latency{0};
};

struct Backends {
    std::shared_ptr<refine::LLMBackend> llm;  // null = offline rules
    std::shared_ptr<refine::LLMBackend> translate;
    std::shared_ptr<TTSBackend> tts;
    std::shared_ptr<ASRBackend> asr;
    std::shared_ptr<retrieval::EmbeddingBackend> embedding;
};

Backends make_backends(const PipelineConfig& c, const Resources& res, const BackendOverrides& o) {
    Backends b;
    if (o.llm) {
        b.llm = o.llm;
    } else if (c.llm.backend == "remote") {
        b.llm = std::make_shared<refine::RemoteChatBackend>(http_endpoint(c.llm, "llm"), c.llm.model);
    } else if (c.llm.backend == "mock") {
        // Stands in for a model that applies the offline correction rules.
        auto confusions = res.confusions;
        auto symbols = res.symbols;
        b.llm = std::make_shared<refine::MockLLMBackend>(std::function<std::string(const std::string&)>(
            [confusions, symbols](const std::string& in) { return refine::refine_offline(in, *confusions, *symbols); }));
    }
    if (o.translate) {
        b.translate = o.translate;
    } else if (c.translate.backend == "remote") {
        b.translate = std::make_shared<refine::RemoteChatBackend>(http_endpoint(c.translate, "translate"),
                                                                  c.translate.model);
    } else {
        b.translate = std::make_shared<refine::MockLLMBackend>();
    }
    if (o.tts) {
        b.tts = o.tts;
    } else if (c.tts.backend == "remote") {
        b.tts = std::make_shared<RemoteTTSBackend>(http_endpoint(c.tts, "tts"));
    } else {
        b.tts = std::make_shared<MockTTSBackend>();
    }
    if (o.asr) {
        b.asr = o.asr;
    } else if (c.asr.backend == "remote") {
        b.asr = std::make_shared<RemoteASRBackend>(http_endpoint(c.asr, "asr"));
    } else {
        b.asr = std::make_shared<MockASRBackend>(
            std::make_shared<const Corrupter>(c.corruption, res.verbalizer, res.confusions));
    }
    if (o.embedding) {
        b.embedding = o.embedding;
    } else if (c.embedding.backend == "remote") {
        b.embedding = std::make_shared<retrieval::RemoteEmbeddingBackend>(http_endpoint(c.embedding, "embedding"),
                                                                          c.embedding.model);
    } else {
        b.embedding = std::make_shared<retrieval::OfflineHashEmbedder>(c.embedding_dimension);
    }
    return b;
}

bool every(const core::Corpus& corpus, auto pred) { return std::all_of(corpus.begin(), corpus.end(), pred); }

void snapshot(const fs::path& dir, std::size_t index, StageKind stage, const core::Corpus& corpus) {
    char prefix[8];
    std::snprintf(prefix, sizeof prefix, "%02zu-", index);
    core::save_corpus(corpus, dir / "stages" / (prefix + std::string(to_string(stage)) + ".jsonl"));
}

std::vector<core::QueryRecord> records_of(const core::Corpus& c) { return {c.begin(), c.end()}; }

}  // namespace

Resources Resources::load(const PipelineConfig& config) {
    Resources res;
    const auto sym = data::load_resource(config.symbols_path, "lexicons/symbols.tsv");
    res.symbols = std::make_shared<const verbal::SymbolLexicon>(verbal::SymbolLexicon::parse(sym.content, sym.origin));
    const auto conf = data::load_resource(config.confusions_path, "lexicons/confusions.tsv");
    res.confusions =
        std::make_shared<const refine::ConfusionLexicon>(refine::ConfusionLexicon::parse(conf.content, conf.origin));
    const auto acr = data::load_resource(config.acronyms_path, "lexicons/acronyms.txt");
    res.verbalizer = std::make_shared<const verbal::Verbalizer>(res.symbols, verbal::parse_acronyms(acr.content));
    const auto feat = data::load_resource(config.features_path, "phonetics/features.csv");
    res.table = std::make_shared<const phonetics::ArticulatoryFeatureTable>(
        phonetics::ArticulatoryFeatureTable::parse(feat.content, feat.origin));
    if (config.g2p == "external") {
        res.g2p = std::make_shared<const phonetics::ExternalCommandG2P>(split_command_line(config.g2p_command));
    } else if (config.g2p == "passthrough") {
        res.g2p = std::make_shared<const phonetics::PassthroughG2P>();
    } else {
        res.g2p = std::make_shared<const phonetics::BuiltinRulesG2P>(config.romanized_indic);
    }

    const std::map<std::string, const data::Resource*> overridden = {{"lexicons/symbols.tsv", &sym},
                                                                      {"lexicons/confusions.tsv", &conf},
                                                                      {"lexicons/acronyms.txt", &acr},
                                                                      {"phonetics/features.csv", &feat}};
    for (const auto& f : data::embedded_files()) {
        const std::string name(f.path);
        if (const auto it = overridden.find(name); it != overridden.end()) {
            res.data_files.push_back({name, it->second->origin, hash::sha256_hex(it->second->content)});
        } else {
            res.data_files.push_back({name, "bundled:" + name, hash::sha256_hex(f.content)});
        }
    }
    std::sort(res.data_files.begin(), res.data_files.end(),
              [](const DataFile& a, const DataFile& b) { return a.name < b.name; });
    return res;
}

std::vector<std::string> context_hints(const core::QueryRecord& r) {
    static const auto keywords = taxonomy::bundled_keywords();
    std::vector<std::string> out;
    if (!r.code) return out;
    std::set<std::string> seen;
    const std::string& code = *r.code;
    std::size_t i = 0;
    while (i < code.size()) {
        if (ident_start(code[i]) && (i == 0 || !ident_char(code[i - 1]))) {
            std::size_t j = i;
            while (j < code.size() && ident_char(code[j])) ++j;
            std::string id = code.substr(i, j - i);
            if (id.size() >= 2 && !keywords.contains(text::to_lower(id)) && seen.insert(id).second) {
                out.push_back(std::move(id));
            }
            i = j;
        } else {
            ++i;
        }
    }
    return out;
}

std::string spoken_reference(const core::QueryRecord& r, const verbal::Verbalizer& verbalizer) {
    if (r.verbalized_text) return *r.verbalized_text;
    return verbalizer.verbalize(r.translated_text ? *r.translated_text : r.reference_text);
}

std::optional<core::RecordScore> score_record(const core::QueryRecord& r, core::Stage stage, const Resources& res,
                                              const ScoreOptions& options) {
    const auto& source = stage == core::Stage::asr ? r.transcript_raw : r.transcript_refined;
    if (!source) return std::nullopt;
    const auto ref = spoken_reference(r, *res.verbalizer);
    const auto hyp = res.verbalizer->verbalize(*source);
    core::RecordScore s;
    s.id = r.id;
    s.stage = stage;
    if (options.wer) {
        const auto e = metrics::wer(ref, hyp, *res.symbols);
        s.wer = e.value;
        s.degenerate |= e.degenerate;
    }
    if ((options.per || options.wfed) && res.g2p->supports(r.nat_lang)) {
        if (options.per) {
            const auto e = metrics::per(ref, hyp, r.nat_lang, *res.g2p);
            s.per = e.value;
            s.degenerate |= e.degenerate;
        }
        if (options.wfed) {
            const auto e = metrics::wfed(ref, hyp, r.nat_lang, *res.g2p, *res.table);
            s.wfed = e.value;
            s.degenerate |= e.degenerate;
        }
    }
    return s;
}

void check_stage_dependencies(const PipelineConfig& c, const core::Corpus& corpus) {
    auto require = [&](bool ok, const std::string& what) {
        if (!ok) throw ConfigError(what);
    };
    auto has_verbalized = [](const core::QueryRecord& r) { return r.verbalized_text.has_value(); };
    auto has_raw = [](const core::QueryRecord& r) { return r.transcript_raw.has_value(); };
    auto has_refined = [](const core::QueryRecord& r) { return r.transcript_refined.has_value(); };
    const bool verbalized = c.has_stage(StageKind::verbalize) || every(corpus, has_verbalized);
    if (c.has_stage(StageKind::tts)) {
        require(verbalized, "stage tts needs verbalize or verbalized_text on every record");
    }
    if (c.has_stage(StageKind::asr) && !every(corpus, has_raw)) {
        if (c.asr.backend == "remote") {
            const bool audio = c.has_stage(StageKind::tts) ||
                               every(corpus, [](const core::QueryRecord& r) { return r.audio_path.has_value(); });
            require(audio, "stage asr with a remote backend needs tts or audio_path on every record");
        } else {
            require(verbalized, "stage asr needs verbalize or verbalized_text on every record");
        }
    }
    const bool raw = c.has_stage(StageKind::asr) || every(corpus, has_raw);
    if (c.has_stage(StageKind::refine)) require(raw, "stage refine needs asr or transcript_raw on every record");
    const bool transcripts = raw || c.has_stage(StageKind::refine) || every(corpus, has_refined);
    if (c.has_stage(StageKind::score)) require(transcripts, "stage score needs asr, refine or existing transcripts");
    if (c.has_stage(StageKind::taxonomy)) {
        require(transcripts, "stage taxonomy needs asr, refine or existing transcripts");
        require(c.has_stage(StageKind::score), "stage taxonomy attaches tags to scores and needs stage score");
    }
    if (c.has_stage(StageKind::retrieval)) {
        for (const auto s : c.retrieval_stages) {
            if (s == retrieval::QueryStage::asr) require(raw, "retrieval stage asr needs transcripts");
            if (s == retrieval::QueryStage::refined) {
                require(c.has_stage(StageKind::refine) || every(corpus, has_refined),
                        "retrieval stage refined needs refine or transcript_refined on every record");
            }
        }
    }
}

nlohmann::ordered_json manifest_without_timing(nlohmann::ordered_json manifest) {
    manifest.erase("timing");
    return manifest;
}

RunResult run_pipeline(const PipelineConfig& config, const BackendOverrides& overrides) {
    if (config.corpus.empty()) throw ConfigError("run.corpus is not set");
    return run_pipeline(config, core::load_corpus(config.corpus), overrides);
}

RunResult run_pipeline(const PipelineConfig& config, const core::Corpus& input, const BackendOverrides& overrides) {
    const auto started = utc_now();
    std::vector<core::QueryRecord> selected;
    for (const auto& r : input) {
        if (config.languages.empty() ||
            std::find(config.languages.begin(), config.languages.end(), r.nat_lang.code()) != config.languages.end()) {
            selected.push_back(r);
        }
    }
    core::Corpus corpus(std::move(selected), input.source_path());
    check_stage_dependencies(config, corpus);

    const auto res = Resources::load(config);
    const auto backends = make_backends(config, res, overrides);
    const fs::path out = config.output_dir;
    fs::create_directories(out);

    const auto corpus_sha = hash::sha256_hex(core::serialize_corpus(corpus));
    std::map<std::string, std::size_t> initial_flags;
    for (const auto& r : corpus) initial_flags[r.id] = r.flags.size();

    RunResult result;
    ordered_json timing = {{"started", started}, {"stages_ms", ordered_json::object()}};
    LlmUsage usage;
    std::vector<metrics::KeyedScore> scores;
    std::vector<retrieval::RetrievalRun> runs;
    ordered_json taxonomy_json;
    bool scored = false;
    std::size_t snapshot_index = 0;

    for (const auto stage : kStageOrder) {
        if (!config.has_stage(stage)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        spdlog::info("stage {}: {} records", to_string(stage), corpus.size());
        auto records = records_of(corpus);
        switch (stage) {
            case StageKind::translate: {
                parallel_for(records.size(), config.llm_concurrency, [&](std::size_t i) {
                    auto& r = records[i];
                    if (r.nat_lang.is_english() || r.translated_text) return;
                    try {
                        auto t = translate_query(r.reference_text, r.nat_lang, *backends.translate, *res.verbalizer);
                        r.translated_text = t.text;
                        if (t.identifier_drift()) r.add_flag("identifier_drift");
                    } catch (const BackendError&) {
                        r.add_flag("translate_failed");
                    }
                });
                break;
            }
            case StageKind::verbalize:
                parallel_for(records.size(), config.parallelism, [&](std::size_t i) {
                    auto& r = records[i];
                    if (!r.verbalized_text) {
                        r.verbalized_text = res.verbalizer->verbalize(r.translated_text ? *r.translated_text
                                                                                        : r.reference_text);
                    }
                });
                break;
            case StageKind::tts:
                records = records_of(synthesize_audio(core::Corpus(std::move(records)), *backends.tts, out / "audio",
                                                      config.tts_voice, config.parallelism));
                break;
            case StageKind::asr:
                records = records_of(transcribe_audio(core::Corpus(std::move(records)), *backends.asr,
                                                      config.parallelism));
                break;
            case StageKind::refine: {
                refine::RetryPolicy retry{config.llm_max_retries, config.llm_backoff};
                const std::size_t limit = backends.llm ? config.llm_concurrency : config.parallelism;
                parallel_for(records.size(), limit, [&](std::size_t i) {
                    auto& r = records[i];
                    if (!r.transcript_raw || r.transcript_refined) return;
                    const auto hints = context_hints(r);
                    if (!backends.llm) {
                        r.transcript_refined = refine::refine_offline(*r.transcript_raw, *res.confusions, *res.symbols,
                                                                      hints);
                        return;
                    }
                    if (text::trim(*r.transcript_raw).empty()) {
                        r.transcript_refined = "";
                        return;
                    }
                    const auto prompt = refine::build_refinement_prompt(*r.transcript_raw, r.nat_lang, hints, r.code);
                    try {
                        const auto outcome = refine::refine_remote(prompt, *backends.llm, retry);
                        r.transcript_refined = outcome.text;
                        std::lock_guard lock(usage.mutex);
                        usage.calls += outcome.attempts;
                        usage.prompt_tokens += outcome.prompt_tokens;
                        usage.completion_tokens += outcome.completion_tokens;
                        usage.latency += outcome.latency;
                    } catch (const BackendError&) {
                        r.add_flag("unrefined");
                        std::lock_guard lock(usage.mutex);
                        usage.calls += retry.max_retries + 1;
                        ++usage.failures;
                    }
                });
                break;
            }
            case StageKind::score: {
                ScoreOptions opts;
                opts.wer = std::find(config.metrics.begin(), config.metrics.end(), "wer") != config.metrics.end();
                opts.per = std::find(config.metrics.begin(), config.metrics.end(), "per") != config.metrics.end();
                opts.wfed = std::find(config.metrics.begin(), config.metrics.end(), "wfed") != config.metrics.end();
                std::vector<std::array<std::optional<core::RecordScore>, 2>> slots(records.size());
                const std::size_t limit = res.g2p->concurrent_safe() ? config.parallelism : 1;
                parallel_for(records.size(), limit, [&](std::size_t i) {
                    slots[i][0] = score_record(records[i], core::Stage::asr, res, opts);
                    slots[i][1] = score_record(records[i], core::Stage::refined, res, opts);
                });
                for (std::size_t i = 0; i < records.size(); ++i) {
                    const auto& r = records[i];
                    for (auto& s : slots[i]) {
                        if (s) scores.push_back({{r.dataset, r.prog_lang, r.nat_lang.code(), s->stage}, *s});
                    }
                }
                scored = true;
                break;
            }
            case StageKind::retrieval: {
                std::vector<std::string> doc_ids;
                std::vector<std::string> doc_texts;
                std::map<std::string, std::size_t> doc_index;
                for (const auto& r : records) {
                    if (!r.code) continue;
                    doc_index[r.id] = doc_ids.size();
                    doc_ids.push_back(r.id);
                    doc_texts.push_back(*r.code);
                }
                if (doc_ids.empty()) break;
                retrieval::EmbeddingCache cache;
                const retrieval::EmbedOptions eopts{32, config.parallelism};
                const auto doc_vecs = retrieval::embed_corpus(doc_texts, *backends.embedding, &cache, eopts);
                for (const auto qs : config.retrieval_stages) {
                    std::vector<retrieval::RetrievalQuery> queries;
                    std::vector<std::string> texts;
                    for (const auto& r : records) {
                        const auto gold = doc_index.find(r.id);
                        if (gold == doc_index.end()) continue;
                        std::optional<std::string> q;
                        switch (qs) {
                            case retrieval::QueryStage::original:
                                q = r.translated_text ? *r.translated_text : r.reference_text;
                                break;
                            case retrieval::QueryStage::asr: q = r.transcript_raw; break;
                            case retrieval::QueryStage::refined: q = r.transcript_refined; break;
                        }
                        if (!q) continue;
                        queries.push_back({r.id, *q, gold->second});
                        texts.push_back(*q);
                    }
                    const auto qvecs = retrieval::embed_corpus(texts, *backends.embedding, &cache, eopts);
                    runs.push_back(
                        retrieval::evaluate_retrieval(qs, queries, doc_ids, doc_vecs, qvecs, config.ks));
                }
                break;
            }
            case StageKind::taxonomy: {
                taxonomy::Detector detector;
                detector.verbalizer = res.verbalizer;
                detector.adapter = res.g2p;
                detector.table = res.table;
                detector.drift_threshold = config.drift_threshold;
                detector.recall_threshold = config.recall_threshold;
                std::map<std::string, const core::QueryRecord*> by_id;
                for (const auto& r : records) by_id[r.id] = &r;
                std::vector<std::vector<taxonomy::TaxonomyTag>> tags(scores.size());
                const std::size_t limit = res.g2p->concurrent_safe() ? config.parallelism : 1;
                parallel_for(scores.size(), limit, [&](std::size_t i) {
                    const auto& r = *by_id.at(scores[i].score.id);
                    const auto& hyp = scores[i].score.stage == core::Stage::asr ? r.transcript_raw
                                                                                 : r.transcript_refined;
                    const auto hints = identifier_hints(r, *res.verbalizer);
                    tags[i] = detector.detect(spoken_reference(r, *res.verbalizer), res.verbalizer->verbalize(*hyp),
                                              r.nat_lang, hints);
                });
                ordered_json per_record = ordered_json::object();
                std::map<core::Stage, std::vector<std::vector<taxonomy::TaxonomyTag>>> by_stage;
                for (std::size_t i = 0; i < scores.size(); ++i) {
                    auto& s = scores[i].score;
                    s.taxonomy_tags.clear();
                    ordered_json list = ordered_json::array();
                    for (const auto& t : tags[i]) {
                        s.taxonomy_tags.emplace_back(to_string(t.kind));
                        list.push_back(taxonomy::to_json(t));
                    }
                    per_record[s.id][std::string(core::to_string(s.stage))] = std::move(list);
                    by_stage[s.stage].push_back(tags[i]);
                }
                ordered_json dist = ordered_json::object();
                for (const auto& [st, lists] : by_stage) {
                    dist[std::string(core::to_string(st))] = taxonomy::to_json(taxonomy::tag_distribution(lists));
                }
                taxonomy_json = {{"distribution", dist}, {"per_record", per_record}};
                break;
            }
        }
        corpus = core::Corpus(std::move(records), corpus.source_path());
        snapshot(out, snapshot_index++, stage, corpus);
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        timing["stages_ms"][std::string(to_string(stage))] = ms;
        spdlog::debug("stage {} took {} ms", to_string(stage), ms);
    }

    // Reports: single writer, after every stage has finished.
    core::save_corpus(corpus, out / "corpus.jsonl");
    std::vector<std::string> outputs = {"corpus.jsonl"};
    std::set<std::string> failed_ids;
    for (const auto& r : corpus) {
        if (r.has_flag("asr_failed") || r.has_flag("unrefined") || r.has_flag("tts_failed") ||
            r.has_flag("translate_failed")) {
            failed_ids.insert(r.id);
        }
    }
    for (const auto& k : scores) {
        if (!failed_ids.contains(k.score.id)) result.report.per_record.push_back(k.score);
    }
    if (scored) {
        std::vector<metrics::KeyedScore> kept;
        for (const auto& k : scores) {
            if (!failed_ids.contains(k.score.id)) kept.push_back(k);
        }
        result.report.aggregates = metrics::aggregate(kept);
    }
    for (const auto& run : runs) {
        for (auto& s : run.summaries()) result.report.retrieval.push_back(std::move(s));
        const auto name = "retrieval-" + std::string(retrieval::to_string(run.stage)) + ".json";
        data::write_file(out / name, retrieval::to_json(run).dump(2) + "\n");
        outputs.push_back(name);
    }
    if (scored || !runs.empty()) {
        data::write_file(out / "report.json", metrics::to_json(result.report).dump(2) + "\n");
        data::write_file(out / "report.csv", metrics::to_csv(result.report));
        data::write_file(out / "report.txt", metrics::to_text(result.report));
        outputs.insert(outputs.end(), {"report.json", "report.csv", "report.txt"});
    }
    if (!taxonomy_json.is_null()) {
        data::write_file(out / "taxonomy.json", taxonomy_json.dump(2) + "\n");
        outputs.push_back("taxonomy.json");
    }

    std::map<std::string, std::size_t> flag_counts;
    for (const auto& r : corpus) {
        const auto before = initial_flags[r.id];
        if (r.flags.size() > before) ++result.flagged_records;
        for (std::size_t i = before; i < r.flags.size(); ++i) ++flag_counts[r.flags[i]];
    }

    ordered_json m;
    m["tool"] = "codevoice";
    m["config_sha256"] = hash::sha256_hex(config.settings.canonical());
    m["config"] = ordered_json::object();
    for (const auto& [k, v] : config.settings.values()) m["config"][k] = v;
    m["seed"] = config.seed;
    m["stages"] = ordered_json::array();
    for (const auto s : config.stages) m["stages"].push_back(to_string(s));
    m["corpus"] = {{"path", config.corpus.string()}, {"records", corpus.size()}, {"sha256", corpus_sha}};
    m["backends"] = {{"asr", backends.asr->id()},
                     {"tts", backends.tts->id()},
                     {"llm", backends.llm ? backends.llm->id() : std::string("offline-rules")},
                     {"translate", backends.translate->id()},
                     {"embedding", backends.embedding->id()},
                     {"g2p", res.g2p->id()}};
    m["data_files"] = ordered_json::array();
    for (const auto& f : res.data_files) {
        m["data_files"].push_back({{"name", f.name}, {"origin", f.origin}, {"sha256", f.sha256}});
    }
    m["flagged_records"] = result.flagged_records;
    m["flags"] = ordered_json::object();
    for (const auto& [flag, n] : flag_counts) m["flags"][flag] = n;
    m["skipped_in_aggregates"] = failed_ids.size();
    m["unknown_segments"] = {{"lookups", res.table->unknown_lookup_count()},
                             {"segments", res.table->unknown_lookups()}};
    m["llm_usage"] = {{"calls", usage.calls},
                      {"failures", usage.failures},
                      {"prompt_tokens", usage.prompt_tokens},
                      {"completion_tokens", usage.completion_tokens}};
    m["outputs"] = outputs;
    if (res.table->unknown_lookup_count() > 0) {
        spdlog::warn("{} phoneme lookups hit segments missing from the feature table",
                     res.table->unknown_lookup_count());
    }
    if (result.flagged_records > 0) spdlog::warn("{} records flagged during this run", result.flagged_records);
    timing["finished"] = utc_now();
    timing["llm_latency_ms"] = usage.latency.count();
    m["timing"] = timing;
    data::write_file(out / "manifest.json", m.dump(2) + "\n");

    result.manifest = std::move(m);
    result.corpus = std::move(corpus);
    return result;
}

}  // namespace codevoice::pipeline
