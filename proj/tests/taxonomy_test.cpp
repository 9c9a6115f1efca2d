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

#include <set>

#include <gtest/gtest.h>

#include "codevoice/taxonomy/taxonomy.hpp"
#include "codevoice/util/error.hpp"
#include "support/taxonomy_cases.hpp"

namespace codevoice::taxonomy {
namespace {

const Detector& detector() {
    static const Detector d = Detector::with_defaults();
    return d;
}

std::set<TagKind> kinds(const std::vector<TaxonomyTag>& tags) {
    std::set<TagKind> out;
    for (const auto& t : tags) out.insert(t.kind);
    return out;
}

std::set<TagKind> detect_kinds(std::string_view ref, std::string_view hyp, std::vector<std::string> ids = {}) {
    return kinds(detector().detect(ref, hyp, {}, ids));
}

TEST(TaxonomyTest, LabeledSuiteExact) {
    for (const auto& c : testing::labeled_taxonomy_cases()) {
        EXPECT_EQ(detect_kinds(c.ref, c.hyp, c.identifiers), std::set<TagKind>{c.label}) << c.ref << " | " << c.hyp;
    }
}

TEST(TaxonomyTest, IdenticalPairHasNoTags) {
    EXPECT_TRUE(detector().detect("print_sum of x", "print_sum of x").empty());
    EXPECT_TRUE(detector().detect("Print the sum.", "print the sum").empty());
}

TEST(TaxonomyTest, MergeOfSpokenIdentifier) {
    EXPECT_EQ(detect_kinds("call get user info now", "call getuserinfo now", {"getUserInfo"}),
              std::set<TagKind>{TagKind::identifier_merge});
}

TEST(TaxonomyTest, KeywordAmbiguity) {
    EXPECT_EQ(detect_kinds("if x is none", "if x his none"), std::set<TagKind>{TagKind::keyword_ambiguity});
}

TEST(TaxonomyTest, RecallFailureNeedsDistantSpan) {
    const auto tags = detector().detect("the parseHTTPResponse function", "the banana function");
    ASSERT_EQ(tags.size(), 1u);
    EXPECT_EQ(tags[0].kind, TagKind::identifier_recall_failure);
    EXPECT_EQ(tags[0].ref_begin, 1u);
    EXPECT_EQ(tags[0].hyp_end, 2u);
    // A plain word swapped for another is neither drift nor recall failure.
    EXPECT_TRUE(detect_kinds("the big function", "the banana function").empty());
}

TEST(TaxonomyTest, SymbolLossSpansPointAtSymbolWords) {
    const auto tags = detector().detect("print underscore sum", "print sum");
    ASSERT_EQ(tags.size(), 1u);
    EXPECT_EQ(tags[0].ref_begin, 1u);
    EXPECT_EQ(tags[0].ref_end, 2u);
    EXPECT_EQ(to_json(tags[0])["kind"], "symbol_loss");
}

TEST(TaxonomyTest, ThresholdsMoveTheDriftBoundary) {
    Detector strict = Detector::with_defaults();
    strict.drift_threshold = 0.1;
    // wfed of ascii vs "ask key" is about 0.25: drift by default, not under 0.1.
    EXPECT_EQ(detect_kinds("what is ascii", "what is ask key"), std::set<TagKind>{TagKind::phonetic_drift});
    EXPECT_FALSE(kinds(strict.detect("what is ascii", "what is ask key")).count(TagKind::phonetic_drift));
    Detector loose = Detector::with_defaults();
    loose.recall_threshold = 0.9;
    EXPECT_TRUE(loose.detect("the parseHTTPResponse function", "the banana function").empty());
}

TEST(TaxonomyTest, TagKindNamesRoundTrip) {
    for (auto k : kAllTagKinds) EXPECT_EQ(parse_tag_kind(to_string(k)), k);
    EXPECT_THROW(parse_tag_kind("typo"), ArgumentError);
}

TEST(TaxonomyTest, WordLists) {
    const auto w = parse_word_list("# c\nIf\n\nwhile\n");
    EXPECT_EQ(w, (WordSet{"if", "while"}));
    const auto py = core::ProgLang::python;
    EXPECT_TRUE(bundled_keywords(&py).count("def"));
    EXPECT_TRUE(bundled_keywords().count("function"));
    EXPECT_TRUE(bundled_function_words().count("the"));
}

TaxonomyTag tag(TagKind k) { return TaxonomyTag{k, 0, 0, 0, 0, ""}; }

TEST(DistributionTest, CountsSharesAndFractions) {
    const std::vector<std::vector<TaxonomyTag>> per = {
        {tag(TagKind::symbol_loss), tag(TagKind::symbol_loss), tag(TagKind::phonetic_drift)},
        {},
        {tag(TagKind::phonetic_drift)},
        {}};
    const auto d = tag_distribution(per);
    EXPECT_EQ(d.n_records, 4u);
    EXPECT_EQ(d.total_tags, 4u);
    EXPECT_DOUBLE_EQ(d.tagged_fraction, 0.5);
    EXPECT_EQ(d.kinds.at(TagKind::symbol_loss).count, 2u);
    EXPECT_DOUBLE_EQ(d.kinds.at(TagKind::symbol_loss).tag_share, 0.5);
    EXPECT_DOUBLE_EQ(d.kinds.at(TagKind::symbol_loss).record_fraction, 0.25);
    EXPECT_DOUBLE_EQ(d.kinds.at(TagKind::phonetic_drift).record_fraction, 0.5);
    EXPECT_EQ(d.kinds.at(TagKind::identifier_merge).count, 0u);
    const auto j = to_json(d);
    EXPECT_EQ(j["kinds"]["symbol_loss"]["count"], 2);
}

TEST(DistributionTest, EmptyInput) {
    const auto d = tag_distribution({});
    EXPECT_EQ(d.total_tags, 0u);
    EXPECT_EQ(d.tagged_fraction, 0.0);
}

}  // namespace
}  // namespace codevoice::taxonomy
