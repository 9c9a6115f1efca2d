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

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "codevoice/pipeline/backends.hpp"
#include "codevoice/pipeline/config.hpp"
#include "codevoice/pipeline/corruption.hpp"
#include "codevoice/pipeline/run.hpp"
#include "codevoice/pipeline/synth.hpp"
#include "codevoice/util/error.hpp"
#include "support/test_support.hpp"

namespace codevoice::pipeline {
namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

core::QueryRecord record(std::string id, std::string ref, std::optional<std::string> code = std::nullopt) {
    core::QueryRecord r;
    r.id = std::move(id);
    r.nat_lang = core::LanguageTag::parse("en");
    r.reference_text = std::move(ref);
    r.code = std::move(code);
    return r;
}

PipelineConfig config_for(const std::filesystem::path& out, std::vector<std::string> overrides = {}) {
    Settings s;
    s.set("run.output_dir", out.string());
    s.set("run.parallelism", "2");
    for (const auto& o : overrides) s.apply_override(o);
    return PipelineConfig::from_settings(s);
}

// ---- config ---------------------------------------------------------------

TEST(ConfigTest, DefaultsAreValid) {
    const auto c = PipelineConfig::from_settings(Settings());
    EXPECT_EQ(c.seed, 42u);
    EXPECT_EQ(c.ks, (std::vector<std::size_t>{1, 5, 10}));
    EXPECT_TRUE(c.has_stage(StageKind::refine));
    EXPECT_FALSE(c.has_stage(StageKind::tts));
    EXPECT_EQ(c.llm.backend, "offline");
    EXPECT_DOUBLE_EQ(c.corruption.p(CorruptionKind::drop_symbol), 0.5);
}

TEST(ConfigTest, IniParsingAndPathResolution) {
    const auto s = Settings::parse("; comment\n[run]\ncorpus = data/c.jsonl\nseed = 7\n[retrieval]\nk = 3, 1\n",
                                   "/base/dir");
    EXPECT_EQ(s.get("run.corpus"), "/base/dir/data/c.jsonl");
    const auto c = PipelineConfig::from_settings(s);
    EXPECT_EQ(c.seed, 7u);
    EXPECT_EQ(c.corruption.seed, 7u);
    EXPECT_EQ(c.ks, (std::vector<std::size_t>{1, 3}));
}

TEST(ConfigTest, StagesAreCanonicallyOrdered) {
    Settings s;
    s.set("run.stages", "score, asr,verbalize,asr");
    const auto c = PipelineConfig::from_settings(s);
    EXPECT_EQ(c.stages, (std::vector<StageKind>{StageKind::verbalize, StageKind::asr, StageKind::score}));
}

TEST(ConfigTest, OverridesAndErrors) {
    Settings s;
    s.apply_override("--run.seed=9");
    EXPECT_EQ(s.get("run.seed"), "9");
    EXPECT_THROW(s.apply_override("run.nope=1"), ConfigError);
    EXPECT_THROW(s.apply_override("seed=1"), ConfigError);
    EXPECT_THROW(s.apply_override("run.seed"), ConfigError);
    EXPECT_THROW(Settings::parse("[llm]\napi_key = abc\n"), ConfigError);
    EXPECT_THROW(Settings::parse("[run]\nnot a pair\n"), ConfigError);
    s.set("corruption.drop_symbol", "1.5");
    EXPECT_THROW(PipelineConfig::from_settings(s), ConfigError);
    Settings r;
    r.set("asr.backend", "remote");
    EXPECT_THROW(PipelineConfig::from_settings(r), ConfigError);
    Settings t;
    t.set("taxonomy.drift_threshold", "0.6");
    EXPECT_THROW(PipelineConfig::from_settings(t), ConfigError);
}

TEST(ConfigTest, CanonicalFormIsSortedAndStable) {
    Settings a, b;
    a.set("run.seed", "5");
    b.set("run.seed", "5");
    EXPECT_EQ(a.canonical(), b.canonical());
    EXPECT_NE(a.canonical().find("run.seed = 5\n"), std::string::npos);
}

TEST(ConfigTest, TokenFromEnvironment) {
    ::setenv("CODEVOICE_ASR_TOKEN", "tok", 1);
    EXPECT_EQ(token_from_env("asr"), "tok");
    ::unsetenv("CODEVOICE_ASR_TOKEN");
    EXPECT_EQ(token_from_env("asr"), "");
}

// ---- corruption -----------------------------------------------------------

std::shared_ptr<const Corrupter> corrupter(std::map<CorruptionKind, double> p) {
    return std::make_shared<Corrupter>(CorruptionSpec{1, std::move(p)},
                                       std::make_shared<verbal::Verbalizer>(verbal::SymbolLexicon::builtin()),
                                       refine::ConfusionLexicon::builtin());
}

TEST(CorruptionTest, ZeroProbabilitiesAreIdentity) {
    const auto c = corrupter({});
    Rng rng(3);
    EXPECT_EQ(c->corrupt("print underscore sum of ascii", {}, rng), "print underscore sum of ascii");
}

TEST(CorruptionTest, ForcedKinds) {
    Rng rng(3);
    EXPECT_EQ(corrupter({{CorruptionKind::drop_symbol, 1.0}})->corrupt("print underscore sum", {}, rng), "print sum");
    EXPECT_EQ(corrupter({{CorruptionKind::confuse_phrase, 1.0}})->corrupt("call realloc", {}, rng),
              "call real lock");
    const std::vector<std::string> hints = {"realloc"};
    EXPECT_EQ(corrupter({{CorruptionKind::split_identifier, 1.0}})->corrupt("call realloc", hints, rng),
              "call rea lloc");
    EXPECT_EQ(corrupter({{CorruptionKind::drop_word, 1.0}})->corrupt("a b c", {}, rng), "");
}

TEST(CorruptionTest, PerRecordDeterminism) {
    const auto c = corrupter({{CorruptionKind::drop_word, 0.5}});
    const std::string text = "one two three four five six seven eight nine ten";
    auto a = record_rng(42, "q1"), b = record_rng(42, "q1"), other = record_rng(42, "q2");
    const auto ta = c->corrupt(text, {}, a);
    EXPECT_EQ(ta, c->corrupt(text, {}, b));
    EXPECT_NE(ta, c->corrupt(text, {}, other));
}

TEST(CorruptionTest, RngMatchesRecurrence) {
    Rng rng(1);
    const std::uint64_t expected = 6364136223846793005ULL * 1ULL + 1442695040888963407ULL;
    EXPECT_EQ(rng.next(), expected);
    Rng u(9);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        ASSERT_GE(x, 0.0);
        ASSERT_LT(x, 1.0);
    }
}

TEST(CorruptionTest, IdentifierHints) {
    const verbal::Verbalizer v(verbal::SymbolLexicon::builtin());
    const auto r = record("q", "why does getUserInfo fail with realloc", "x = realloc(getUserInfo(u))");
    const auto hints = identifier_hints(r, v);
    EXPECT_NE(std::find(hints.begin(), hints.end(), "getUserInfo"), hints.end());
    EXPECT_NE(std::find(hints.begin(), hints.end(), "realloc"), hints.end());
    EXPECT_EQ(std::find(hints.begin(), hints.end(), "why"), hints.end());
}

// ---- backends -------------------------------------------------------------

TEST(TranslateTest, EchoKeepsCodeTokens) {
    refine::MockLLMBackend echo;
    const verbal::Verbalizer v(verbal::SymbolLexicon::builtin());
    const auto r = translate_query("why does print_sum fail", core::LanguageTag::parse("hi"), echo, v);
    EXPECT_EQ(r.text, "why does print_sum fail");
    EXPECT_FALSE(r.identifier_drift());
    EXPECT_NE(translation_instructions(core::LanguageTag::parse("hi")).find("Hindi"), std::string::npos);
}

TEST(TranslateTest, DroppedIdentifierIsDrift) {
    refine::MockLLMBackend lossy([](const std::string&) { return "why does the sum fail"; });
    const verbal::Verbalizer v(verbal::SymbolLexicon::builtin());
    const auto r = translate_query("why does print_sum fail", core::LanguageTag::parse("en"), lossy, v);
    EXPECT_EQ(r.missing, (std::vector<std::string>{"print_sum"}));
}

TEST(TTSTest, MockWritesStubsAndFlagsFailures) {
    testing::TempDir dir;
    auto a = record("q/1", "print x");
    a.verbalized_text = "print x";
    auto b = record("q2", "fail here");
    b.verbalized_text = "fail here";
    const auto c = record("q3", "no spoken text");
    MockTTSBackend tts;
    tts.fail_on("fail");
    const auto out = synthesize_audio(core::Corpus({a, b, c}), tts, dir.path(), "v1", 2);
    ASSERT_TRUE(out.records()[0].audio_path);
    EXPECT_TRUE(std::filesystem::exists(*out.records()[0].audio_path));
    EXPECT_NE(slurp(*out.records()[0].audio_path).find("print x"), std::string::npos);
    EXPECT_TRUE(out.records()[1].has_flag("tts_failed"));
    EXPECT_TRUE(out.records()[2].has_flag("tts_failed"));
    const auto reqs = tts.requests();
    ASSERT_FALSE(reqs.empty());
    EXPECT_EQ(reqs[0].voice, "v1");
}

TEST(TTSTest, FileStemsAreSafeAndDistinct) {
    EXPECT_EQ(audio_file_stem("syn-en-0001"), "syn-en-0001");
    const auto a = audio_file_stem("a/b"), b = audio_file_stem("a?b");
    EXPECT_EQ(a.find('/'), std::string::npos);
    EXPECT_NE(a, b);
}

TEST(TTSTest, RemotePostsJsonAndReturnsBytes) {
    nlohmann::json seen;
    testing::LocalServer server([&](httplib::Server& s) {
        s.Post("/tts", [&](const httplib::Request& req, httplib::Response& res) {
            seen = nlohmann::json::parse(req.body);
            res.set_content(std::string("RIFF\0\1", 6), "audio/wav");
        });
    });
    RemoteTTSBackend tts({server.url("/tts"), ""});
    EXPECT_EQ(tts.synthesize("hello", core::LanguageTag::parse("ta"), "v"), std::string("RIFF\0\1", 6));
    EXPECT_EQ(seen["language"], "ta");
    EXPECT_EQ(seen["voice"], "v");
}

TEST(ASRTest, MockMatchesCorruptTranscripts) {
    auto corpus = synthesize_corpus({20, 3, {"en", "hi"}});
    std::vector<core::QueryRecord> recs(corpus.begin(), corpus.end());
    const verbal::Verbalizer v(verbal::SymbolLexicon::builtin());
    for (auto& r : recs) r.verbalized_text = v.verbalize(r.translated_text.value_or(r.reference_text));
    const core::Corpus spoken(recs);
    CorruptionSpec spec{3, {{CorruptionKind::drop_symbol, 0.5}, {CorruptionKind::confuse_phrase, 0.5}}};
    const auto expected = corrupt_transcripts(spoken, spec, *verbal::SymbolLexicon::builtin(),
                                              *refine::ConfusionLexicon::builtin());
    MockASRBackend asr(std::make_shared<Corrupter>(spec, std::make_shared<verbal::Verbalizer>(verbal::SymbolLexicon::builtin()),
                                                   refine::ConfusionLexicon::builtin()));
    EXPECT_EQ(transcribe_audio(spoken, asr, 3), expected);
}

TEST(ASRTest, RemoteUploadsAudio) {
    testing::TempDir dir;
    std::string got_file, got_lang;
    testing::LocalServer server([&](httplib::Server& s) {
        s.Post("/asr", [&](const httplib::Request& req, httplib::Response& res) {
            got_file = req.get_file_value("file").content;
            got_lang = req.get_file_value("language").content;
            res.set_content(R"({"text": "print sum"})", "application/json");
        });
    });
    {
        std::ofstream(dir / "a.wav") << "AUDIO";
    }
    auto r = record("q1", "print sum");
    r.audio_path = (dir / "a.wav").string();
    auto missing = record("q2", "x");
    missing.audio_path = (dir / "none.wav").string();
    RemoteASRBackend asr({server.url("/asr"), ""});
    const auto out = transcribe_audio(core::Corpus({r, missing}), asr);
    EXPECT_EQ(out.records()[0].transcript_raw, "print sum");
    EXPECT_EQ(got_file, "AUDIO");
    EXPECT_EQ(got_lang, "en");
    EXPECT_FALSE(out.records()[1].transcript_raw);
    EXPECT_TRUE(out.records()[1].has_flag("asr_failed"));
}

// ---- whole runs -----------------------------------------------------------

TEST(RunTest, IdentityCorruptionScoresZero) {
    testing::TempDir dir;
    const auto cfg = config_for(dir.path(), {"corruption.drop_symbol=0", "corruption.confuse_phrase=0",
                                             "corruption.split_identifier=0", "run.stages=verbalize,asr,score"});
    const auto result = run_pipeline(cfg, synthesize_corpus({30, 1, {"en", "hi"}}));
    ASSERT_EQ(result.report.per_record.size(), 30u);
    for (const auto& s : result.report.per_record) {
        EXPECT_EQ(*s.wer, 0.0) << s.id;
        if (s.per) EXPECT_EQ(*s.per, 0.0) << s.id;
    }
    EXPECT_EQ(result.exit_code(), 0);
}

TEST(RunTest, RepeatedRunsAreByteIdentical) {
    testing::TempDir a, b;
    const auto corpus = synthesize_corpus({40, 5, {"en", "ta"}});
    const auto ra = run_pipeline(config_for(a.path()), corpus);
    const auto rb = run_pipeline(config_for(b.path()), corpus);
    for (const char* f : {"report.json", "report.csv", "report.txt", "corpus.jsonl", "taxonomy.json",
                          "retrieval-refined.json"}) {
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    }
    auto ma = manifest_without_timing(ra.manifest), mb = manifest_without_timing(rb.manifest);
    ma.erase("config");
    mb.erase("config");
    ma.erase("config_sha256");
    mb.erase("config_sha256");
    ma.erase("outputs");
    mb.erase("outputs");
    EXPECT_EQ(ma.dump(), mb.dump());
    EXPECT_TRUE(ra.manifest.contains("timing"));
}

TEST(RunTest, RefinementImprovesSyntheticCorpus) {
    testing::TempDir dir;
    const auto r = run_pipeline(config_for(dir.path()), synthesize_corpus({60, 8, {"en", "hi", "bn"}}));
    double asr = 0, refined = 0;
    for (const auto& s : r.report.per_record) (s.stage == core::Stage::asr ? asr : refined) += *s.wer;
    EXPECT_LT(refined, asr);
    EXPECT_TRUE(std::filesystem::exists(dir / "stages" / "00-verbalize.jsonl"));
    EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
}

TEST(RunTest, MissingPrerequisiteIsConfigError) {
    testing::TempDir dir;
    const core::Corpus corpus({record("q1", "print x")});
    EXPECT_THROW(run_pipeline(config_for(dir.path(), {"run.stages=score"}), corpus), ConfigError);
    EXPECT_THROW(run_pipeline(config_for(dir.path(), {"run.stages=asr"}), corpus), ConfigError);
    EXPECT_THROW(run_pipeline(config_for(dir.path(), {"run.stages=verbalize,asr,taxonomy"}), corpus), ConfigError);
    auto spoken = record("q1", "print x");
    spoken.transcript_raw = "print x";
    EXPECT_NO_THROW(run_pipeline(config_for(dir.path(), {"run.stages=score"}), core::Corpus({spoken})));
}

class FailingASR : public ASRBackend {
public:
    std::string id() const override { return "failing"; }
    std::string transcribe(const core::QueryRecord& r) override {
        if (r.id == "q2") throw BackendError("down", "");
        return *r.verbalized_text;
    }
};

TEST(RunTest, BackendFailureFlagsAndExitsTwo) {
    testing::TempDir dir;
    const core::Corpus corpus({record("q1", "print x"), record("q2", "print y"), record("q3", "print z")});
    BackendOverrides o;
    o.asr = std::make_shared<FailingASR>();
    const auto r = run_pipeline(config_for(dir.path(), {"run.stages=verbalize,asr,refine,score"}), corpus, o);
    EXPECT_EQ(r.flagged_records, 1u);
    EXPECT_EQ(r.exit_code(), 2);
    EXPECT_TRUE(r.corpus.find("q2")->has_flag("asr_failed"));
    for (const auto& s : r.report.per_record) EXPECT_NE(s.id, "q2");
    EXPECT_EQ(r.manifest["flagged_records"], 1);
}

TEST(RunTest, FailingRefinementFlagsUnrefined) {
    testing::TempDir dir;
    auto a = record("q1", "print x");
    a.transcript_raw = "print x";
    auto llm = std::make_shared<refine::MockLLMBackend>();
    llm->fail_next(100);
    BackendOverrides o;
    o.llm = llm;
    const auto r = run_pipeline(
        config_for(dir.path(), {"run.stages=refine", "llm.backend=mock", "llm.max_retries=1", "llm.backoff_ms=1"}),
        core::Corpus({a}), o);
    EXPECT_TRUE(r.corpus.records()[0].has_flag("unrefined"));
    EXPECT_EQ(r.exit_code(), 2);
}

TEST(RunTest, StagesOnlyAddFields) {
    testing::TempDir dir;
    const auto input = synthesize_corpus({25, 2, {"en", "gu"}});
    const auto r = run_pipeline(config_for(dir.path()), input);
    ASSERT_EQ(r.corpus.size(), input.size());
    for (std::size_t i = 0; i < input.size(); ++i) {
        const auto before = core::record_to_json(input.records()[i]);
        const auto after = core::record_to_json(r.corpus.records()[i]);
        for (const auto& [key, value] : before.items()) {
            if (key == "flags") continue;
            EXPECT_EQ(after.at(key), value) << key;
        }
        EXPECT_TRUE(r.corpus.records()[i].transcript_refined.has_value());
    }
}

TEST(RunTest, ScoreRecordUsesSpokenReference) {
    const auto res = Resources::load(PipelineConfig::from_settings(Settings()));
    auto r = record("q1", "print_sum");
    r.transcript_raw = "print_sum";
    r.transcript_refined = "print sum";
    EXPECT_EQ(spoken_reference(r, *res.verbalizer), "print underscore sum");
    EXPECT_EQ(*score_record(r, core::Stage::asr, res)->wer, 0.0);
    EXPECT_NEAR(*score_record(r, core::Stage::refined, res)->wer, 1.0 / 3.0, 1e-12);
    r.transcript_refined.reset();
    EXPECT_FALSE(score_record(r, core::Stage::refined, res));
}

TEST(RunTest, UnsupportedLanguageLeavesPhoneticMetricsEmpty) {
    core::LanguageTag::register_language("xx", "Testish");
    const auto res = Resources::load(PipelineConfig::from_settings(Settings()));
    auto r = record("q1", "hello");
    r.nat_lang = core::LanguageTag::parse("xx");
    r.transcript_raw = "hello";
    const auto s = score_record(r, core::Stage::asr, res);
    EXPECT_EQ(*s->wer, 0.0);
    EXPECT_FALSE(s->per);
    EXPECT_FALSE(s->wfed);
}

TEST(SynthTest, DeterministicAndWellFormed) {
    const auto a = synthesize_corpus({50, 4, {"en", "hi"}});
    EXPECT_EQ(a, synthesize_corpus({50, 4, {"en", "hi"}}));
    EXPECT_NE(a, synthesize_corpus({50, 5, {"en", "hi"}}));
    for (const auto& r : a) {
        EXPECT_TRUE(core::validate_record(r).empty()) << r.id;
        EXPECT_TRUE(r.code.has_value());
        if (r.dataset == core::Dataset::QA) {
            EXPECT_NE(r.prog_lang, core::ProgLang::php);
            EXPECT_TRUE(r.gold_answer.has_value());
        }
    }
}

}  // namespace
}  // namespace codevoice::pipeline
