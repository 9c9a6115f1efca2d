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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "codevoice/metrics/alignment.hpp"
#include "codevoice/metrics/metrics.hpp"
#include "codevoice/metrics/report.hpp"
#include "codevoice/phonetics/feature_table.hpp"
#include "codevoice/phonetics/g2p.hpp"
#include "codevoice/util/error.hpp"
#include "support/oracles.hpp"
#include "support/test_support.hpp"

namespace codevoice::metrics {
namespace {

using Tokens = std::vector<std::string>;

const phonetics::BuiltinRulesG2P& g2p() {
    static const phonetics::BuiltinRulesG2P instance;
    return instance;
}

const phonetics::ArticulatoryFeatureTable& table() {
    static const auto instance = phonetics::ArticulatoryFeatureTable::bundled();
    return instance;
}

TEST(AlignTest, MatchesBruteForceOnRandomPairs) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 300; ++i) {
        const auto a = testing::random_tokens(rng, 4, 6);
        const auto b = testing::random_tokens(rng, 4, 6);
        ASSERT_EQ(align_tokens(a, b).cost, testing::brute_force_levenshtein(a, b));
    }
}

TEST(AlignTest, WeightedMatchesBruteForce) {
    std::mt19937_64 rng(2);
    const auto& segs = table().segments();
    auto sub = [](const std::string& x, const std::string& y) { return table().distance(x, y); };
    for (int i = 0; i < 200; ++i) {
        Tokens a(rng() % 6), b(rng() % 6);
        for (auto& s : a) s = segs[rng() % 12];
        for (auto& s : b) s = segs[rng() % 12];
        const auto r = align(std::span<const std::string>(a), std::span<const std::string>(b), sub);
        ASSERT_NEAR(r.cost, testing::brute_force_cost(a, b, sub), 1e-12);
    }
}

TEST(AlignTest, TraceIsConsistent) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        const auto a = testing::random_tokens(rng, 5, 8);
        const auto b = testing::random_tokens(rng, 5, 8);
        const auto r = align_tokens(a, b);
        ASSERT_EQ(replay(r.trace, a, b), b);
        std::size_t s = 0, d = 0, n = 0;
        for (const auto& st : r.trace) {
            s += st.kind == OpKind::sub;
            d += st.kind == OpKind::del;
            n += st.kind == OpKind::ins;
        }
        ASSERT_EQ(r.ops.substitutions, s);
        ASSERT_EQ(r.ops.deletions, d);
        ASSERT_EQ(r.ops.insertions, n);
        ASSERT_EQ(static_cast<double>(r.ops.errors()), r.cost);
        ASSERT_TRUE(r.ops.valid());
    }
}

TEST(AlignTest, EmptySides) {
    const Tokens none, two = {"a", "b"};
    EXPECT_EQ(align_tokens(none, none).cost, 0.0);
    EXPECT_EQ(align_tokens(two, none).ops.deletions, 2u);
    EXPECT_EQ(align_tokens(none, two).ops.insertions, 2u);
}

TEST(WerTest, HandDerivedCases) {
    // print=print, underscore->under, sum->school, +some: S=2, I=1, N=3.
    const auto e = wer("print underscore sum", "print under school some");
    EXPECT_EQ(e.value, 1.0);
    EXPECT_EQ(e.ops.substitutions + e.ops.insertions + e.ops.deletions, 3u);
    EXPECT_EQ(wer("a b c d", "a b d").value, 0.25);
    EXPECT_EQ(wer("get user info", "get user info").value, 0.0);
}

TEST(WerTest, CaseAndSentencePunctuationIgnored) {
    EXPECT_EQ(wer("Print the sum.", "print the sum").value, 0.0);
    // Operators are tokens, not punctuation.
    EXPECT_EQ(wer("a == b", "a b").value, 1.0 / 3.0);
}

TEST(WerTest, EmptyReference) {
    const auto e = wer("", "extra words");
    EXPECT_EQ(e.value, 2.0);
    EXPECT_TRUE(e.degenerate);
    EXPECT_FALSE(wer("", "").degenerate);
    EXPECT_EQ(wer("", "").value, 0.0);
}

TEST(PerTest, MatchesSegmentLevelComputation) {
    const core::LanguageTag en;
    const auto ref = phonetics::phonemize("print sum", en, g2p()).segments;
    const auto hyp = phonetics::phonemize("print some", en, g2p()).segments;
    EXPECT_EQ(per("print sum", "print some", en, g2p()).value, per_segments(ref, hyp).value);
    EXPECT_EQ(per("ship", "ship", en, g2p()).value, 0.0);
}

TEST(WfedTest, VoicingSubstitutionIsCheap) {
    // sip vs zip: one substitution s->z of cost 1/22 over three phonemes.
    const auto e = wfed_segments({"s", "ɪ", "p"}, {"z", "ɪ", "p"}, table());
    EXPECT_DOUBLE_EQ(e.cost, 1.0 / 22.0);
    EXPECT_DOUBLE_EQ(e.value, 1.0 / 66.0);
    EXPECT_DOUBLE_EQ(per_segments({"s", "ɪ", "p"}, {"z", "ɪ", "p"}).value, 1.0 / 3.0);
}

TEST(WfedTest, NeverExceedsPer) {
    std::mt19937_64 rng(9);
    const core::LanguageTag en;
    const Tokens words = {"print", "sum", "some", "under", "score", "school", "get", "user", "your", "info",
                          "real",  "lock", "ask",  "key",   "data",  "dot",    "map", "nap",  "zip",  "ship"};
    for (int i = 0; i < 1000; ++i) {
        std::string a, b;
        for (std::size_t k = rng() % 5; k > 0; --k) a += words[rng() % words.size()] + " ";
        for (std::size_t k = rng() % 5; k > 0; --k) b += words[rng() % words.size()] + " ";
        ASSERT_LE(wfed(a, b, en, g2p(), table()).value, per(a, b, en, g2p()).value + 1e-12) << a << "|" << b;
    }
}

TEST(WfedTest, UnnormalizedCostIsSymmetric) {
    std::mt19937_64 rng(10);
    const auto& segs = table().segments();
    for (int i = 0; i < 500; ++i) {
        Tokens a(rng() % 8), b(rng() % 8);
        for (auto& s : a) s = segs[rng() % segs.size()];
        for (auto& s : b) s = segs[rng() % segs.size()];
        ASSERT_NEAR(wfed_segments(a, b, table()).cost, wfed_segments(b, a, table()).cost, 1e-12);
    }
}

TEST(TokenizeTest, KeepsOperatorLiterals) {
    EXPECT_EQ(tokenize_words("If x == 0, stop."), (Tokens{"if", "x", "==", "0", "stop"}));
}

core::RecordScore score(const std::string& id, core::Stage stage, double w, std::optional<double> p) {
    core::RecordScore s;
    s.id = id;
    s.stage = stage;
    s.wer = w;
    s.per = p;
    s.wfed = p;
    return s;
}

TEST(ReportTest, AggregateAveragesPresentValues) {
    const core::GroupKey k{core::Dataset::CSN, core::ProgLang::python, "en", core::Stage::asr};
    const std::vector<KeyedScore> scores = {{k, score("a", core::Stage::asr, 0.5, 0.2)},
                                            {k, score("b", core::Stage::asr, 0.0, std::nullopt)},
                                            {k, score("c", core::Stage::asr, 0.25, 0.4)}};
    const auto rows = aggregate(scores);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_DOUBLE_EQ(*rows[0].wer, 0.75 / 3.0);
    EXPECT_DOUBLE_EQ(*rows[0].per, 0.3);
    EXPECT_EQ(rows[0].n_records, 3u);
}

TEST(ReportTest, RowsOrderedByKey) {
    const core::GroupKey hi{core::Dataset::CSN, core::ProgLang::python, "hi", core::Stage::refined};
    const core::GroupKey en{core::Dataset::CSN, core::ProgLang::python, "en", core::Stage::asr};
    const auto rows = aggregate({{hi, score("a", core::Stage::refined, 0, 0)}, {en, score("b", core::Stage::asr, 0, 0)}});
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].key.nat_lang, "en");
}

core::MetricReport sample_report() {
    core::MetricReport r;
    auto s = score("q1", core::Stage::asr, 0.125, 0.1);
    s.taxonomy_tags = {"symbol_loss"};
    r.per_record = {s, score("q1", core::Stage::refined, 0.0, 0.0)};
    r.aggregates = aggregate({{{core::Dataset::QA, core::ProgLang::java, "hi", core::Stage::asr}, s}});
    r.retrieval = {{"refined", 5, 0.9, 0.8, 10, 10}};
    return r;
}

TEST(ReportTest, JsonRoundTrip) {
    const auto r = sample_report();
    const auto j = to_json(r);
    EXPECT_EQ(j["per_record"]["q1"]["asr"]["wer"], 0.125);
    EXPECT_EQ(j["aggregates"][0]["stage"], "ASR");
    const auto back = report_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(to_json(back).dump(), j.dump());
}

TEST(ReportTest, CsvLayout) {
    const auto csv = to_csv(sample_report());
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "dataset,prog_lang,nat_lang,stage,wer,per,wfed,n_records");
    EXPECT_NE(csv.find("QA,java,hi,ASR,0.125,0.10000000000000001,0.10000000000000001,1"), std::string::npos);
}

TEST(ReportTest, TextTablesUsePercent) {
    const auto text = to_text(sample_report());
    EXPECT_NE(text.find("12.5"), std::string::npos);
    EXPECT_NE(text.find("ASR"), std::string::npos);
    EXPECT_EQ(percent(0.2095), "20.9");
}

}  // namespace
}  // namespace codevoice::metrics
