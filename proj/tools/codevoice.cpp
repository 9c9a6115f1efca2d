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

// codevoice command-line driver.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "codevoice/metrics/metrics.hpp"
#include "codevoice/metrics/report.hpp"
#include "codevoice/phonetics/g2p.hpp"
#include "codevoice/pipeline/corruption.hpp"
#include "codevoice/pipeline/run.hpp"
#include "codevoice/pipeline/synth.hpp"
#include "codevoice/refinement/refiner.hpp"
#include "codevoice/retrieval/evaluation.hpp"
#include "codevoice/taxonomy/taxonomy.hpp"
#include "codevoice/util/error.hpp"
#include "codevoice/util/text.hpp"

namespace cv = codevoice;
using nlohmann::ordered_json;

namespace {

constexpr int kExitError = 1;

/// Options shared by every command that drives the pipeline over a corpus.
struct RunOptions {
    std::string config;
    std::string corpus;
    std::string output_dir;
    std::string seed;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
    cmd->add_option("-c,--config", o.config, "INI configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--corpus", o.corpus, "JSONL corpus (overrides run.corpus)");
    cmd->add_option("-o,--output-dir", o.output_dir, "Output directory (overrides run.output_dir)");
    cmd->add_option("--seed", o.seed, "Random seed (overrides run.seed)");
    cmd->allow_extras();
    cmd->footer("Any setting can be overridden with --section.key=value, e.g. --corruption.drop_symbol=0.2");
}

/// Turns leftover "--section.key=value" / "--section.key value" arguments
/// into settings overrides.
void apply_extras(cv::pipeline::Settings& s, const std::vector<std::string>& extras) {
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const auto& a = extras[i];
        if (a.rfind("--", 0) != 0 || a.find('.') == std::string::npos) {
            throw cv::ArgumentError("unexpected argument '" + a + "'");
        }
        if (a.find('=') != std::string::npos) {
            s.apply_override(a);
        } else if (i + 1 < extras.size()) {
            s.apply_override(a + "=" + extras[++i]);
        } else {
            throw cv::ArgumentError("override '" + a + "' has no value");
        }
    }
}

cv::pipeline::Settings build_settings(const RunOptions& o, const std::vector<std::string>& extras) {
    auto s = o.config.empty() ? cv::pipeline::Settings() : cv::pipeline::Settings::load(o.config);
    if (!o.corpus.empty()) s.set("run.corpus", o.corpus);
    if (!o.output_dir.empty()) s.set("run.output_dir", o.output_dir);
    if (!o.seed.empty()) s.set("run.seed", o.seed);
    apply_extras(s, extras);
    return s;
}

int run_stages(const RunOptions& o, const std::vector<std::string>& extras, const std::string& stages) {
    auto s = build_settings(o, extras);
    if (!stages.empty()) s.set("run.stages", stages);
    const auto config = cv::pipeline::PipelineConfig::from_settings(s);
    const auto result = cv::pipeline::run_pipeline(config);
    if (!result.report.aggregates.empty() || !result.report.retrieval.empty()) {
        std::cout << cv::metrics::to_text(result.report);
    }
    std::cout << "outputs written to " << config.output_dir.string() << "\n";
    return result.exit_code();
}

/// The positional text, or every stdin line when none was given.
std::vector<std::string> inputs(const std::string& text) {
    if (!text.empty()) return {text};
    std::vector<std::string> lines;
    for (std::string line; std::getline(std::cin, line);) lines.push_back(line);
    return lines;
}

ordered_json rate_json(const cv::metrics::ErrorRate& e) {
    return {{"value", e.value},
            {"cost", e.cost},
            {"substitutions", e.ops.substitutions},
            {"deletions", e.ops.deletions},
            {"insertions", e.ops.insertions},
            {"reference_length", e.ops.reference_length},
            {"degenerate", e.degenerate}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Speech-to-code cascade toolkit: verbalization, phonetic scoring, refinement and retrieval."};
    app.require_subcommand(1);
    std::string log_level = "info";
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
        ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

    // run
    RunOptions run_opts;
    auto* run = app.add_subcommand("run", "Run the configured pipeline stages over a corpus");
    add_run_options(run, run_opts);

    // synth
    std::string synth_out;
    cv::pipeline::SynthOptions synth_opts;
    std::string synth_langs = "en,hi,gu,ta,bn";
    auto* synth = app.add_subcommand("synth", "Write a deterministic synthetic corpus");
    synth->add_option("-o,--out", synth_out, "Output JSONL file")->required();
    synth->add_option("--size", synth_opts.size, "Number of records")->capture_default_str();
    synth->add_option("--seed", synth_opts.seed, "Generator seed")->capture_default_str();
    synth->add_option("--languages", synth_langs, "Comma-separated language codes")->capture_default_str();

    // verbalize / deverbalize / phonemize
    std::string text;
    RunOptions verb_opts;
    auto* verbalize = app.add_subcommand("verbalize", "Spoken form of text (or fill verbalized_text of a corpus)");
    verbalize->add_option("text", text, "Text; read line by line from stdin when omitted");
    add_run_options(verbalize, verb_opts);

    std::vector<std::string> hints;
    auto* deverbalize = app.add_subcommand("deverbalize", "Written form of spoken text");
    deverbalize->add_option("text", text, "Spoken text; stdin when omitted");
    deverbalize->add_option("--hint", hints, "Identifier that may occur (repeatable)");

    std::string lang = "en";
    bool romanized = false;
    auto* phonemize = app.add_subcommand("phonemize", "Phoneme segments of text");
    phonemize->add_option("text", text, "Text; stdin when omitted");
    phonemize->add_option("-l,--lang", lang, "Language code")->capture_default_str();
    phonemize->add_flag("--romanized-indic", romanized, "Read Latin-script words with the Indic romanization rules");

    // score
    std::string ref, hyp;
    RunOptions score_opts;
    auto* score = app.add_subcommand("score", "WER/PER/WFED of one pair, or of a corpus's transcripts");
    score->add_option("--ref", ref, "Reference text");
    score->add_option("--hyp", hyp, "Hypothesis text");
    score->add_option("-l,--lang", lang, "Language code")->capture_default_str();
    add_run_options(score, score_opts);

    // refine
    RunOptions refine_opts;
    auto* refine = app.add_subcommand("refine", "Offline refinement of a transcript, or of a corpus");
    refine->add_option("text", text, "Transcript; stdin when omitted");
    refine->add_option("--hint", hints, "Identifier that may occur (repeatable)");
    add_run_options(refine, refine_opts);

    // corrupt
    std::string corrupt_in, corrupt_out;
    cv::pipeline::Settings corrupt_defaults;
    cv::pipeline::CorruptionSpec spec;
    spec.seed = 42;
    double p_symbol = std::stod(corrupt_defaults.get("corruption.drop_symbol"));
    double p_confuse = std::stod(corrupt_defaults.get("corruption.confuse_phrase"));
    double p_split = std::stod(corrupt_defaults.get("corruption.split_identifier"));
    double p_drop = std::stod(corrupt_defaults.get("corruption.drop_word"));
    auto* corrupt = app.add_subcommand("corrupt", "Fill transcript_raw with synthetic recognition errors");
    corrupt->add_option("--corpus", corrupt_in, "Input JSONL with verbalized_text")->required()->check(
        CLI::ExistingFile);
    corrupt->add_option("-o,--out", corrupt_out, "Output JSONL")->required();
    corrupt->add_option("--seed", spec.seed, "Seed")->capture_default_str();
    corrupt->add_option("--drop-symbol", p_symbol, "Probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    corrupt->add_option("--confuse-phrase", p_confuse, "Probability")->capture_default_str()->check(
        CLI::Range(0.0, 1.0));
    corrupt->add_option("--split-identifier", p_split, "Probability")->capture_default_str()->check(
        CLI::Range(0.0, 1.0));
    corrupt->add_option("--drop-word", p_drop, "Probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));

    // retrieval-eval
    RunOptions retr_opts;
    auto* retrieval = app.add_subcommand("retrieval-eval", "Recall@k and MRR of code retrieval per query stage");
    add_run_options(retrieval, retr_opts);

    // taxonomy
    RunOptions tax_opts;
    auto* taxonomy = app.add_subcommand("taxonomy", "Error tags of one pair, or of a corpus's transcripts");
    taxonomy->add_option("--ref", ref, "Reference (spoken or written)");
    taxonomy->add_option("--hyp", hyp, "Hypothesis");
    taxonomy->add_option("-l,--lang", lang, "Language code")->capture_default_str();
    taxonomy->add_option("--hint", hints, "Identifier in the reference (repeatable)");
    add_run_options(taxonomy, tax_opts);

    // judge
    std::string original, candidate;
    auto* judge = app.add_subcommand("judge", "Deviation class (A/B/C) between two answers, offline");
    judge->add_option("--original", original, "Answer to the original query")->required();
    judge->add_option("--candidate", candidate, "Answer to the transcribed query")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    auto logger = spdlog::stderr_color_mt("codevoice");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::from_str(log_level));

    try {
        if (*run) return run_stages(run_opts, run->remaining(), "");

        if (*synth) {
            synth_opts.languages.clear();
            for (auto& l : cv::text::split_whitespace(
                     [&] {
                         auto s = synth_langs;
                         for (auto& c : s) c = c == ',' ? ' ' : c;
                         return s;
                     }())) {
                cv::core::LanguageTag::parse(l);
                synth_opts.languages.push_back(l);
            }
            if (synth_opts.languages.empty()) throw cv::ArgumentError("--languages is empty");
            cv::core::save_corpus(cv::pipeline::synthesize_corpus(synth_opts), synth_out);
            std::cout << "wrote " << synth_opts.size << " records to " << synth_out << "\n";
            return 0;
        }

        if (*verbalize) {
            if (!verb_opts.corpus.empty() || !verb_opts.config.empty()) {
                return run_stages(verb_opts, verbalize->remaining(), "verbalize");
            }
            for (const auto& line : inputs(text)) std::cout << cv::verbal::verbalize(line) << "\n";
            return 0;
        }

        if (*deverbalize) {
            for (const auto& line : inputs(text)) {
                std::cout << cv::verbal::deverbalize(line, *cv::verbal::SymbolLexicon::builtin(), hints) << "\n";
            }
            return 0;
        }

        if (*phonemize) {
            const auto tag = cv::core::LanguageTag::parse(lang);
            const cv::phonetics::BuiltinRulesG2P g2p(romanized);
            for (const auto& line : inputs(text)) {
                std::cout << cv::text::join(cv::phonetics::phonemize(line, tag, g2p).segments, " ") << "\n";
            }
            return 0;
        }

        if (*score) {
            if (ref.empty() && hyp.empty()) return run_stages(score_opts, score->remaining(), "score");
            const auto tag = cv::core::LanguageTag::parse(lang);
            const cv::phonetics::BuiltinRulesG2P g2p;
            const auto table = cv::phonetics::ArticulatoryFeatureTable::bundled();
            ordered_json out = {{"wer", rate_json(cv::metrics::wer(ref, hyp))},
                                {"per", rate_json(cv::metrics::per(ref, hyp, tag, g2p))},
                                {"wfed", rate_json(cv::metrics::wfed(ref, hyp, tag, g2p, table))}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (*refine) {
            if (!refine_opts.corpus.empty() || !refine_opts.config.empty()) {
                return run_stages(refine_opts, refine->remaining(), "refine");
            }
            const auto confusions = cv::refine::ConfusionLexicon::builtin();
            for (const auto& line : inputs(text)) {
                std::cout << cv::refine::refine_offline(line, *confusions, *cv::verbal::SymbolLexicon::builtin(),
                                                        hints)
                          << "\n";
            }
            return 0;
        }

        if (*corrupt) {
            spec.probability = {{cv::pipeline::CorruptionKind::drop_symbol, p_symbol},
                                {cv::pipeline::CorruptionKind::confuse_phrase, p_confuse},
                                {cv::pipeline::CorruptionKind::split_identifier, p_split},
                                {cv::pipeline::CorruptionKind::drop_word, p_drop}};
            const auto corpus = cv::core::load_corpus(corrupt_in);
            const auto out = cv::pipeline::corrupt_transcripts(corpus, spec, *cv::verbal::SymbolLexicon::builtin(),
                                                               *cv::refine::ConfusionLexicon::builtin());
            cv::core::save_corpus(out, corrupt_out);
            std::size_t missing = 0;
            for (const auto& r : out) missing += r.transcript_raw ? 0 : 1;
            if (missing > 0) spdlog::warn("{} records have no verbalized_text and were left as is", missing);
            std::cout << "wrote " << out.size() << " records to " << corrupt_out << "\n";
            return 0;
        }

        if (*retrieval) return run_stages(retr_opts, retrieval->remaining(), "retrieval");

        if (*taxonomy) {
            if (ref.empty() && hyp.empty()) return run_stages(tax_opts, taxonomy->remaining(), "score,taxonomy");
            const auto detector = cv::taxonomy::Detector::with_defaults();
            ordered_json out = ordered_json::array();
            for (const auto& tag : detector.detect(ref, hyp, cv::core::LanguageTag::parse(lang), hints)) {
                out.push_back(cv::taxonomy::to_json(tag));
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (*judge) {
            const auto c = cv::retrieval::judge_deviation(original, candidate);
            std::cout << cv::retrieval::to_string(c) << " (" << cv::retrieval::describe(c) << " deviation)\n";
            return 0;
        }
    } catch (const cv::Error& e) {
        spdlog::error("{}", e.what());
        return kExitError;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kExitError;
    }
    return 0;
}
