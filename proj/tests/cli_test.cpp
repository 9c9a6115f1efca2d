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

#include <cstdlib>
#include <fstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "codevoice/util/subprocess.hpp"
#include "support/test_support.hpp"

namespace codevoice {
namespace {

CommandResult cli(std::vector<std::string> args) {
    const char* exe = std::getenv("CODEVOICE_CLI");
    if (!exe) throw std::runtime_error("CODEVOICE_CLI is not set");
    args.insert(args.begin(), exe);
    return run_command(args, "");
}

TEST(CliTest, VerbalizeText) {
    const auto r = cli({"verbalize", "print_sum(a)"});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(r.out, "print underscore sum open parenthesis a close parenthesis\n");
}

TEST(CliTest, DeverbalizeText) {
    const auto r = cli({"deverbalize", "print underscore sum"});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(r.out, "print_sum\n");
}

TEST(CliTest, ScorePairPrintsJson) {
    const auto r = cli({"score", "--ref", "print underscore sum", "--hyp", "print under school some"});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["wer"]["value"], 1.0);
}

TEST(CliTest, TaxonomyPair) {
    const auto r = cli({"taxonomy", "--ref", "print underscore sum", "--hyp", "print sum"});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_NE(r.out.find("symbol_loss"), std::string::npos);
}

TEST(CliTest, UnknownConfigKeyExitsOne) {
    testing::TempDir dir;
    const auto r = cli({"run", "-o", dir.path().string(), "--run.nonsense=1"});
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_NE(r.err.find("nonsense"), std::string::npos);
}

TEST(CliTest, MissingCorpusExitsOne) {
    testing::TempDir dir;
    EXPECT_EQ(cli({"run", "--corpus", (dir / "none.jsonl").string(), "-o", dir.path().string()}).exit_code, 1);
}

TEST(CliTest, SynthThenRunExitsZero) {
    testing::TempDir dir;
    const auto corpus = (dir / "c.jsonl").string();
    ASSERT_EQ(cli({"synth", "-o", corpus, "--size", "20"}).exit_code, 0);
    const auto r = cli({"run", "--corpus", corpus, "-o", (dir / "out").string()});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_TRUE(std::filesystem::exists(dir / "out" / "report.json"));
    EXPECT_TRUE(std::filesystem::exists(dir / "out" / "manifest.json"));
}

TEST(CliTest, UnreachableRemoteASRExitsTwo) {
    testing::TempDir dir;
    const auto corpus = (dir / "c.jsonl").string();
    ASSERT_EQ(cli({"synth", "-o", corpus, "--size", "3"}).exit_code, 0);
    const auto r = cli({"run", "--corpus", corpus, "-o", (dir / "out").string(), "--run.stages=verbalize,tts,asr",
                        "--asr.backend=remote", "--asr.url=http://127.0.0.1:9/asr", "--asr.timeout_ms=500"});
    EXPECT_EQ(r.exit_code, 2) << r.err;
}

TEST(CliTest, HelpExitsZero) { EXPECT_EQ(cli({"--help"}).exit_code, 0); }

}  // namespace
}  // namespace codevoice
