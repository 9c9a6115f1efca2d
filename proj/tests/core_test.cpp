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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "codevoice/core/corpus.hpp"
#include "codevoice/core/edit_ops.hpp"
#include "codevoice/core/metric_report.hpp"
#include "codevoice/util/error.hpp"
#include "support/test_support.hpp"

namespace codevoice::core {
namespace {

const char* kTwoRecords =
    R"({"id":"q1","dataset":"CSN","prog_lang":"python","nat_lang":"en","reference_text":"How do I call print_sum?"})"
    "\n\n"
    R"({"id":"q2","dataset":"QA","prog_lang":"java","nat_lang":"hi","reference_text":"x","code":"int x;","note":7})"
    "\n";

TEST(LanguageTagTest, BuiltinsAndDefault) {
    EXPECT_EQ(LanguageTag().code(), "en");
    EXPECT_TRUE(LanguageTag().is_english());
    EXPECT_EQ(LanguageTag::parse("ta").display_name(), "Tamil");
    for (const char* c : {"en", "hi", "gu", "ta", "bn"}) EXPECT_TRUE(LanguageTag::is_registered(c));
}

TEST(LanguageTagTest, RejectsMalformedAndUnknown) {
    EXPECT_THROW(LanguageTag::parse(""), ValidationError);
    EXPECT_THROW(LanguageTag::parse("EN"), ValidationError);
    EXPECT_THROW(LanguageTag::parse("xx"), ValidationError);
}

TEST(LanguageTagTest, RegistrationIsIdempotent) {
    LanguageTag::register_language("mr", "Marathi");
    LanguageTag::register_language("mr", "Marathi");
    EXPECT_EQ(LanguageTag::parse("mr").display_name(), "Marathi");
    const auto all = LanguageTag::registered();
    EXPECT_EQ(std::count(all.begin(), all.end(), LanguageTag::parse("mr")), 1);
}

TEST(QueryRecordTest, JsonRoundTripKeepsUnknownFields) {
    const auto corpus = parse_corpus(kTwoRecords);
    ASSERT_EQ(corpus.size(), 2u);
    const auto& r = corpus.records()[1];
    EXPECT_EQ(r.dataset, Dataset::QA);
    EXPECT_EQ(r.prog_lang, ProgLang::java);
    EXPECT_EQ(r.nat_lang.code(), "hi");
    EXPECT_EQ(r.code, "int x;");
    EXPECT_EQ(r.extra["note"], 7);
    EXPECT_EQ(record_from_json(record_to_json(r)), r);
}

TEST(QueryRecordTest, FlagsAreAppendedOnce) {
    QueryRecord r;
    r.add_flag("asr_failed");
    r.add_flag("asr_failed");
    EXPECT_EQ(r.flags.size(), 1u);
    EXPECT_TRUE(r.has_flag("asr_failed"));
}

TEST(QueryRecordTest, ValidationCatchesInvariants) {
    QueryRecord r;
    r.id = "a";
    r.reference_text = "  ";
    r.dataset = Dataset::QA;
    r.prog_lang = ProgLang::php;
    const auto v = validate_record(r);
    EXPECT_EQ(v.size(), 2u);
}

TEST(QueryRecordTest, NamesAreCaseInsensitive) {
    EXPECT_EQ(parse_dataset("csk"), Dataset::CSk);
    EXPECT_EQ(parse_prog_lang("PHP"), ProgLang::php);
    EXPECT_THROW(parse_dataset("xyz"), ValidationError);
}

TEST(CorpusTest, ErrorsNameTheLine) {
    try {
        parse_corpus("{\"id\":\"a\"}\n{oops\n", "c.jsonl");
        FAIL();
    } catch (const ValidationError& e) {
        // line 1 misses required fields before the malformed line is reached
        EXPECT_NE(std::string(e.what()).find("c.jsonl:1"), std::string::npos);
    }
    try {
        parse_corpus(std::string(kTwoRecords) + "{oops\n", "c.jsonl");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(CorpusTest, DuplicateIdsRejected) {
    const std::string line =
        R"({"id":"q1","dataset":"CSN","prog_lang":"python","nat_lang":"en","reference_text":"a"})";
    EXPECT_THROW(parse_corpus(line + "\n" + line + "\n"), ValidationError);
}

TEST(CorpusTest, QaPhpRejected) {
    EXPECT_THROW(
        parse_corpus(R"({"id":"q","dataset":"QA","prog_lang":"php","nat_lang":"en","reference_text":"a"})"),
        ValidationError);
}

TEST(CorpusTest, SaveLoadRoundTrip) {
    testing::TempDir dir;
    const auto corpus = parse_corpus(kTwoRecords);
    save_corpus(corpus, dir / "c.jsonl");
    EXPECT_EQ(load_corpus(dir / "c.jsonl"), corpus);
    EXPECT_EQ(serialize_corpus(parse_corpus(serialize_corpus(corpus))), serialize_corpus(corpus));
    EXPECT_THROW(load_corpus(dir / "missing.jsonl"), ValidationError);
}

TEST(CorpusTest, FindById) {
    const auto corpus = parse_corpus(kTwoRecords);
    ASSERT_NE(corpus.find("q2"), nullptr);
    EXPECT_EQ(corpus.find("zz"), nullptr);
}

TEST(MetricReportTest, StageNames) {
    EXPECT_EQ(stage_label(Stage::refined), "ASR-R");
    EXPECT_EQ(parse_stage("asr"), Stage::asr);
    EXPECT_THROW(parse_stage("final"), ArgumentError);
}

TEST(MetricReportTest, GroupKeyOrderIsStrictWeak) {
    std::mt19937_64 rng(5);
    std::vector<GroupKey> keys;
    const char* langs[] = {"en", "hi", "ta"};
    for (int i = 0; i < 60; ++i) {
        keys.push_back({static_cast<Dataset>(rng() % 3), static_cast<ProgLang>(rng() % 3), langs[rng() % 3],
                        static_cast<Stage>(rng() % 2)});
    }
    for (const auto& a : keys) {
        EXPECT_FALSE(a < a);
        for (const auto& b : keys) {
            if (a < b) EXPECT_FALSE(b < a);
            if (!(a < b) && !(b < a)) EXPECT_EQ(a, b);
        }
    }
}

TEST(EditOpsTest, Validity) {
    EditOps ops{1, 1, 3, 2};
    EXPECT_EQ(ops.errors(), 5u);
    EXPECT_TRUE(ops.valid());
    ops.deletions = 2;
    EXPECT_FALSE(ops.valid());
}

}  // namespace
}  // namespace codevoice::core
