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
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "codevoice/core/language.hpp"
#include "codevoice/phonetics/feature_table.hpp"
#include "codevoice/phonetics/g2p.hpp"
#include "codevoice/util/error.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::phonetics {
namespace {

using Segments = std::vector<std::string>;

/// Independent reading of the shipped CSV: segment -> feature string.
std::map<std::string, std::string> raw_rows() {
    std::ifstream in(std::string(CODEVOICE_DATA_DIR) + "/phonetics/features.csv");
    std::map<std::string, std::string> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string seg, cell, bits;
        std::getline(ss, seg, ',');
        while (std::getline(ss, cell, ',')) bits += cell;
        rows[seg] = bits;
    }
    return rows;
}

double hamming(const std::string& a, const std::string& b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return static_cast<double>(d) / static_cast<double>(a.size());
}

TEST(FeatureTableTest, BundledShape) {
    const auto t = ArticulatoryFeatureTable::bundled();
    EXPECT_EQ(t.width(), 22u);
    EXPECT_EQ(t.size(), raw_rows().size());
    EXPECT_TRUE(t.contains("t̪"));
}

TEST(FeatureTableTest, DistanceMatchesIndependentHamming) {
    const auto t = ArticulatoryFeatureTable::bundled();
    const auto rows = raw_rows();
    for (const auto& [a, fa] : rows) {
        for (const auto& [b, fb] : rows) ASSERT_DOUBLE_EQ(t.distance(a, b), hamming(fa, fb)) << a << " " << b;
    }
}

TEST(FeatureTableTest, VoicingCostsLessThanPlaceAndManner) {
    const auto t = ArticulatoryFeatureTable::bundled();
    // s/z differ in voicing only; s/b also in continuancy, stridency, coronality and labiality.
    EXPECT_DOUBLE_EQ(segment_distance("s", "z", t), 1.0 / 22.0);
    EXPECT_DOUBLE_EQ(segment_distance("s", "b", t), 5.0 / 22.0);
    EXPECT_LT(segment_distance("s", "z", t), segment_distance("s", "b", t));
}

TEST(FeatureTableTest, MetricAxiomsOnRandomTriples) {
    const auto t = ArticulatoryFeatureTable::bundled();
    const auto& segs = t.segments();
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10000; ++i) {
        const auto& a = segs[rng() % segs.size()];
        const auto& b = segs[rng() % segs.size()];
        const auto& c = segs[rng() % segs.size()];
        ASSERT_EQ(t.distance(a, b), t.distance(b, a));
        ASSERT_LE(t.distance(a, c), t.distance(a, b) + t.distance(b, c) + 1e-12);
        ASSERT_EQ(t.distance(a, a), 0.0);
        ASSERT_GE(t.distance(a, b), 0.0);
        ASSERT_LE(t.distance(a, b), 1.0);
    }
}

TEST(FeatureTableTest, UnknownSegmentsCostOneAndAreTallied) {
    const auto t = ArticulatoryFeatureTable::bundled();
    EXPECT_EQ(t.distance("ʘ", "p"), 1.0);
    EXPECT_EQ(t.distance("p", "ʘ"), 1.0);
    EXPECT_EQ(t.distance("ʘ", "ʘ"), 0.0);
    EXPECT_EQ(t.unknown_lookup_count(), 2u);
    EXPECT_EQ(t.unknown_lookups().at("ʘ"), 2u);
    t.reset_warnings();
    EXPECT_EQ(t.unknown_lookup_count(), 0u);
}

TEST(FeatureTableTest, ParseRejectsBadInput) {
    EXPECT_NO_THROW(ArticulatoryFeatureTable::parse("segment,a,b\np,0,1\n", "t"));
    EXPECT_THROW(ArticulatoryFeatureTable::parse("segment,a,b\np,0\n", "t"), ParseError);
    EXPECT_THROW(ArticulatoryFeatureTable::parse("segment,a,b\np,0,2\n", "t"), ParseError);
    EXPECT_THROW(ArticulatoryFeatureTable::parse("segment,a,b\np,0,1\np,1,1\n", "t"), ValidationError);
    EXPECT_THROW(ArticulatoryFeatureTable::parse("", "t"), ParseError);
}

TEST(RuleSetTest, GreedyLongestMatch) {
    const auto rules = RuleSet::parse("# test\nsh\tʃ\ns\ts\nh\th\ni\tɪ\np\tp\ne$\t∅\n", "test");
    EXPECT_EQ(rules.apply(U"ship"), (Segments{"ʃ", "ɪ", "p"}));
    EXPECT_EQ(rules.apply(U"hip"), (Segments{"h", "ɪ", "p"}));
    EXPECT_EQ(rules.apply(U"pipe"), (Segments{"p", "ɪ", "p"}));
}

TEST(RuleSetTest, InherentVowelOfAbugida) {
    // Toy script: K/M consonants, A a vowel sign, X the virama.
    const auto rules = RuleSet::parse("#!inherent\tə\n#!drop_final_inherent\t1\nK\tk\tC\nM\tm\tC\nA\taː\tM\nX\t∅\tV\n",
                                      "toy");
    EXPECT_EQ(rules.apply(U"KM"), (Segments{"k", "ə", "m"}));
    EXPECT_EQ(rules.apply(U"KAM"), (Segments{"k", "aː", "m"}));
    EXPECT_EQ(rules.apply(U"KXM"), (Segments{"k", "m"}));
    EXPECT_EQ(rules.apply(U"K"), (Segments{"k", "ə"}));
}

TEST(BuiltinG2PTest, EnglishRulesAndExceptions) {
    const BuiltinRulesG2P g2p;
    const core::LanguageTag en;
    EXPECT_EQ(phonemize("ship", en, g2p).segments, (Segments{"ʃ", "ɪ", "p"}));
    EXPECT_EQ(phonemize("sum", en, g2p).segments, (Segments{"s", "ʌ", "m"}));
    // Single capitals are letter names, so spelled acronyms sound as spoken.
    EXPECT_EQ(phonemize("A P I", en, g2p).segments, (Segments{"e", "ɪ", "p", "iː", "a", "ɪ"}));
    EXPECT_EQ(phonemize("42", en, g2p).segments, (Segments{"f", "ɔː", "ɹ", "t", "uː"}));
    EXPECT_TRUE(phonemize("", en, g2p).segments.empty());
}

TEST(BuiltinG2PTest, IndicScripts) {
    const BuiltinRulesG2P g2p;
    const auto hi = core::LanguageTag::parse("hi");
    EXPECT_EQ(phonemize("कमल", hi, g2p).segments, (Segments{"k", "ə", "m", "ə", "l"}));
    EXPECT_EQ(phonemize("नमस्ते", hi, g2p).segments, (Segments{"n", "ə", "m", "ə", "s", "t̪", "eː"}));
    // English code words inside a Hindi sentence use the English rules.
    EXPECT_EQ(phonemize("कमल sum", hi, g2p).segments, (Segments{"k", "ə", "m", "ə", "l", "s", "ʌ", "m"}));
    for (const char* code : {"gu", "ta", "bn"}) EXPECT_TRUE(g2p.supports(core::LanguageTag::parse(code)));
}

TEST(BuiltinG2PTest, RomanizedIndic) {
    const BuiltinRulesG2P roman(true);
    // Short "a" is the schwa in the romanization rules, "aa" the long vowel.
    EXPECT_EQ(phonemize("kamal", core::LanguageTag::parse("hi"), roman).segments,
              (Segments{"k", "ə", "m", "ə", "l"}));
    EXPECT_EQ(phonemize("naam", core::LanguageTag::parse("hi"), roman).segments, (Segments{"n", "aː", "m"}));
}

TEST(BuiltinG2PTest, EveryBundledOutputIsInTheFeatureTable) {
    const BuiltinRulesG2P g2p;
    const auto table = ArticulatoryFeatureTable::bundled();
    const std::vector<std::pair<const char*, const char*>> samples = {
        {"en", "the quick brown fox jumps over the lazy dog 0123456789 A B C D E F G H I J K L M N O P Q R S T U V W X Y Z"},
        {"hi", "यह फ़ंक्शन शून्य होने पर क्यों लौटता है"},
        {"gu", "ભૂલમાં દેખાય છે કેવી રીતે કૉલ કરવું"},
        {"ta", "பிழையில் வருகிறது எப்படி அழைப்பது"},
        {"bn", "ত্রুটিতে দেখা যায় কীভাবে কল করব"}};
    for (const auto& [lang, text] : samples) {
        const auto seq = phonemize(text, core::LanguageTag::parse(lang), g2p);
        EXPECT_FALSE(seq.segments.empty());
        EXPECT_TRUE(unknown_segments(seq, table).empty()) << lang << ": " << text::join(unknown_segments(seq, table));
    }
}

TEST(BuiltinG2PTest, UnsupportedLanguageIsConfigError) {
    core::LanguageTag::register_language("xq", "Test");
    const BuiltinRulesG2P g2p;
    EXPECT_THROW(phonemize("abc", core::LanguageTag::parse("xq"), g2p), ConfigError);
}

TEST(ExternalG2PTest, SubstitutesLanguageAndSplitsOutput) {
    const ExternalCommandG2P g2p({"sh", "-c", "read line; echo \"k $0 t\"", "{lang}"}, {"hi"});
    EXPECT_TRUE(g2p.supports(core::LanguageTag::parse("hi")));
    EXPECT_FALSE(g2p.supports(core::LanguageTag()));
    EXPECT_EQ(phonemize("anything", core::LanguageTag::parse("hi"), g2p).segments, (Segments{"k", "hi", "t"}));
}

TEST(ExternalG2PTest, FailureCarriesTranscript) {
    const ExternalCommandG2P g2p({"sh", "-c", "echo broken >&2; exit 4"});
    try {
        g2p.segments("x", core::LanguageTag());
        FAIL();
    } catch (const BackendError& e) {
        EXPECT_NE(e.transcript().find("broken"), std::string::npos);
    }
}

TEST(PassthroughG2PTest, SplitsOnWhitespace) {
    const PassthroughG2P g2p;
    EXPECT_EQ(phonemize(" p  ɪ n ", core::LanguageTag(), g2p).segments, (Segments{"p", "ɪ", "n"}));
}

}  // namespace
}  // namespace codevoice::phonetics
