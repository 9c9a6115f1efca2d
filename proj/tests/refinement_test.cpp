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

#include <random>

#include <gtest/gtest.h>

#include "codevoice/refinement/confusion_lexicon.hpp"
#include "codevoice/refinement/llm_backend.hpp"
#include "codevoice/refinement/refiner.hpp"
#include "codevoice/util/error.hpp"
#include "support/test_support.hpp"

namespace codevoice::refine {
namespace {

const ConfusionLexicon& confusions() { return *ConfusionLexicon::builtin(); }
const verbal::SymbolLexicon& symbols() { return *verbal::SymbolLexicon::builtin(); }

std::string offline(std::string_view s, std::vector<std::string> hints = {}) {
    return refine_offline(s, confusions(), symbols(), hints);
}

TEST(ConfusionLexiconTest, ParsesAndSortsLongestFirst) {
    const auto lex = ConfusionLexicon::parse("# c\na b\tX\na b c\tY\n", "t.tsv");
    ASSERT_EQ(lex.entries().size(), 2u);
    EXPECT_EQ(lex.entries()[0].intended, "Y");
    EXPECT_EQ(lex.apply("so a b c d"), "so Y d");
    EXPECT_EQ(lex.apply("A B d"), "X d");
}

TEST(ConfusionLexiconTest, RejectsMalformedLines) {
    EXPECT_THROW(ConfusionLexicon::parse("no tab here\n", "t.tsv"), ParseError);
    EXPECT_THROW(ConfusionLexicon::parse("a\tX\na\tY\n", "t.tsv"), ValidationError);
}

TEST(ConfusionLexiconTest, MatchOnlyOnWholeWords) {
    EXPECT_EQ(confusions().apply("basking keyboard"), "basking keyboard");
    const std::vector<std::string> words = {"the", "ask", "key", "code"};
    const auto* e = confusions().match(words, 1);
    ASSERT_NE(e, nullptr);
    EXPECT_EQ(e->intended, "ASCII");
    EXPECT_EQ(confusions().match(words, 0), nullptr);
}

TEST(RefineOfflineTest, CorrectsKnownConfusions) {
    EXPECT_EQ(offline("why am i getting ask key error"), "why am i getting ASCII error");
    EXPECT_EQ(offline("real lock open close parentheses"), "realloc()");
    EXPECT_EQ(offline("cache include stdio dot h"), "#include stdio.h");
    EXPECT_EQ(offline("make it a sink"), "make it async");
}

TEST(RefineOfflineTest, RejoinsSymbolsAndHintedIdentifiers) {
    EXPECT_EQ(offline("print underscore sum"), "print_sum");
    EXPECT_EQ(offline("call get user info", {"getUserInfo"}), "call getUserInfo");
}

TEST(RefineOfflineTest, IdempotentOnGeneratedTranscripts) {
    std::mt19937_64 rng(5);
    const std::vector<std::string> vocab = {"ask",  "key",   "real",  "lock",       "open", "close", "parentheses",
                                            "dot",  "equal", "underscore", "get",  "user",  "info",  "print",
                                            "sum",  "a",     "sink",  "cache",      "include", "the", "x", "plus"};
    for (int i = 0; i < 1000; ++i) {
        std::string s;
        for (std::size_t k = 1 + rng() % 8; k > 0; --k) s += vocab[rng() % vocab.size()] + " ";
        const auto once = offline(s);
        ASSERT_EQ(offline(once), once) << s;
    }
}

TEST(PromptTest, CarriesTranscriptHintsAndCode) {
    const std::vector<std::string> hints = {"getUserInfo", "print_sum"};
    const auto p = build_refinement_prompt("call get your info", core::LanguageTag::parse("hi"), hints, "def f(): pass");
    const auto m = p.messages();
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[0].role, "system");
    EXPECT_EQ(m[1].role, "user");
    EXPECT_EQ(m[1].content, "call get your info");
    EXPECT_NE(m[0].content.find("getUserInfo"), std::string::npos);
    EXPECT_NE(m[0].content.find("print_sum"), std::string::npos);
    EXPECT_NE(m[0].content.find("def f(): pass"), std::string::npos);
    EXPECT_NE(m[0].content.find(default_refinement_instructions().substr(0, 40)), std::string::npos);
}

TEST(PromptTest, EmptyTranscriptRejected) {
    EXPECT_THROW(build_refinement_prompt("  ", core::LanguageTag::parse("en")), ArgumentError);
}

TEST(StripWrapperTest, RemovesCommonWrappers) {
    EXPECT_EQ(strip_wrapper("```\nprint_sum\n```"), "print_sum");
    EXPECT_EQ(strip_wrapper("```text\ncall  foo\n```"), "call foo");
    EXPECT_EQ(strip_wrapper("Corrected: \"x == y\""), "x == y");
    EXPECT_EQ(strip_wrapper("  a\n b  "), "a b");
    EXPECT_EQ(strip_wrapper("ratio: 3"), "ratio: 3");
}

TEST(RefineRemoteTest, RetriesThenSucceeds) {
    MockLLMBackend backend(std::map<std::string, std::string>{{"ask key", "Corrected: ASCII"}});
    backend.fail_next(2);
    const auto out = refine_remote(build_refinement_prompt("ask key", core::LanguageTag::parse("en")), backend,
                                   RetryPolicy{2, std::chrono::milliseconds(1)});
    EXPECT_EQ(out.text, "ASCII");
    EXPECT_EQ(out.attempts, 3u);
    EXPECT_EQ(backend.calls(), 3u);
}

TEST(RefineRemoteTest, GivesUpAfterRetries) {
    MockLLMBackend backend;
    backend.fail_next(5);
    EXPECT_THROW(refine_remote(build_refinement_prompt("x", core::LanguageTag::parse("en")), backend,
                               RetryPolicy{1, std::chrono::milliseconds(1)}),
                 BackendError);
    EXPECT_EQ(backend.calls(), 2u);
}

TEST(MockLLMTest, Modes) {
    MockLLMBackend echo;
    EXPECT_EQ(echo.complete({{"system", "s"}, {"user", "hello"}}).text, "hello");
    MockLLMBackend rule([](const std::string& s) { return s + "!"; });
    EXPECT_EQ(rule.complete({{"user", "hi"}}).text, "hi!");
    MockLLMBackend canned(std::map<std::string, std::string>{{"a", "b"}});
    EXPECT_EQ(canned.complete({{"user", "a"}}).text, "b");
    EXPECT_EQ(canned.complete({{"user", "z"}}).text, "z");
}

TEST(RemoteChatTest, PostsMessagesAndReadsChoice) {
    nlohmann::json seen;
    std::string auth;
    testing::LocalServer server([&](httplib::Server& s) {
        s.Post("/v1/chat", [&](const httplib::Request& req, httplib::Response& res) {
            seen = nlohmann::json::parse(req.body);
            auth = req.get_header_value("Authorization");
            nlohmann::json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "```\nprint_sum\n```"}}}}}},
                                    {"usage", {{"prompt_tokens", 17}, {"completion_tokens", 3}}}};
            res.set_content(reply.dump(), "application/json");
        });
    });
    RemoteChatBackend backend({server.url("/v1/chat"), "secret"}, "tiny-model");
    const auto out = refine_remote(build_refinement_prompt("print underscore sum", core::LanguageTag::parse("en")), backend);
    EXPECT_EQ(out.text, "print_sum");
    EXPECT_EQ(out.prompt_tokens, 17u);
    EXPECT_EQ(out.completion_tokens, 3u);
    EXPECT_EQ(seen["model"], "tiny-model");
    EXPECT_EQ(seen["messages"][1]["content"], "print underscore sum");
    EXPECT_EQ(auth, "Bearer secret");
}

TEST(RemoteChatTest, ServerErrorIsBackendError) {
    testing::LocalServer server([](httplib::Server& s) {
        s.Post("/v1/chat", [](const httplib::Request&, httplib::Response& res) {
            res.status = 503;
            res.set_content("busy", "text/plain");
        });
    });
    RemoteChatBackend backend({server.url("/v1/chat"), ""}, "m");
    try {
        backend.complete({{"user", "x"}});
        FAIL() << "expected BackendError";
    } catch (const BackendError& e) {
        EXPECT_NE(std::string(e.what()).find("503"), std::string::npos);
        EXPECT_NE(e.transcript().find("busy"), std::string::npos);
    }
}

}  // namespace
}  // namespace codevoice::refine
