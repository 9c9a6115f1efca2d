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

#include "codevoice/pipeline/synth.hpp"

#include <array>
#include <map>
#include <string_view>

#include "codevoice/pipeline/corruption.hpp"

namespace codevoice::pipeline {

namespace {

constexpr std::array<std::string_view, 20> kVerbs = {"get",   "set",    "load",   "save",  "parse", "compute", "update",
                                                     "fetch", "build",  "render", "read",  "write", "find",    "sort",
                                                     "merge", "count",  "print",  "check", "apply", "format"};
constexpr std::array<std::string_view, 20> kNouns = {"user",  "config", "item",   "order",  "price", "file",  "record",
                                                     "token", "buffer", "matrix", "score",  "name",  "list",  "path",
                                                     "image", "cache",  "node",   "query",  "result", "message"};
constexpr std::array<std::string_view, 10> kTails = {"info", "count", "total", "list", "map",
                                                     "data", "size",  "index", "id",   "value"};
constexpr std::array<std::string_view, 8> kVars = {"count", "limit",  "user_id", "max_size",
                                                   "file_path", "items", "offset", "retries"};
constexpr std::array<std::string_view, 4> kFields = {"data.user", "self.cache", "config.timeout", "request.body"};
// Code terms the bundled confusion lexicon knows a mishearing for.
constexpr std::array<std::string_view, 6> kTerms = {"ASCII", "async", "realloc", "default", "machine", "#include"};
constexpr std::array<std::string_view, 10> kJoined = {"strlen",   "malloc",  "memcpy",    "readline",   "hashmap",
                                                      "namespace", "getattr", "enumerate", "isinstance", "dataframe"};

struct LanguagePhrases {
    std::vector<std::string_view> questions;  // slots: {id} {expr} {var} {plang}
    std::string_view term;                    // slot: {term}
    std::string_view joined;                  // slots: {joined} {var}
};

const std::map<std::string, LanguagePhrases>& phrases() {
    static const std::map<std::string, LanguagePhrases> table = {
        {"en",
         {{"Why does {id} return None when {expr}?", "How do I call {id}() with {var} in {plang}?",
           "What happens in {id} if {expr}?", "How can I fix {id} so that {expr} holds?"},
          "The error mentions {term}.",
          "It calls {joined} on {var}."}},
        {"hi",
         {{"{id} फ़ंक्शन में {expr} होने पर None क्यों लौटता है?", "{plang} में {var} के साथ {id}() कैसे कॉल करें?",
           "अगर {expr} हो तो {id} में क्या होता है?"},
          "त्रुटि में {term} दिखता है।",
          "यह {var} पर {joined} चलाता है।"}},
        {"gu",
         {{"{expr} હોય ત્યારે {id} None કેમ પરત કરે છે?", "{plang} માં {var} સાથે {id}() કેવી રીતે કૉલ કરવું?",
           "જો {expr} હોય તો {id} માં શું થાય છે?"},
          "ભૂલમાં {term} દેખાય છે.",
          "તે {var} પર {joined} ચલાવે છે."}},
        {"ta",
         {{"{expr} ஆக இருக்கும்போது {id} ஏன் None தருகிறது?", "{plang} இல் {var} உடன் {id}() ஐ எப்படி அழைப்பது?",
           "{expr} என்றால் {id} இல் என்ன நடக்கும்?"},
          "பிழையில் {term} வருகிறது.",
          "இது {var} மீது {joined} இயக்குகிறது."}},
        {"bn",
         {{"{expr} হলে {id} কেন None ফেরত দেয়?", "{plang} এ {var} দিয়ে {id}() কীভাবে কল করব?",
           "যদি {expr} হয় তাহলে {id} এ কী হয়?"},
          "ত্রুটিতে {term} দেখা যায়।",
          "এটি {var} এর উপর {joined} চালায়।"}},
    };
    return table;
}

std::string fill(std::string_view pattern, const std::map<std::string, std::string>& slots) {
    std::string out;
    std::size_t i = 0;
    while (i < pattern.size()) {
        if (pattern[i] == '{') {
            const auto close = pattern.find('}', i);
            if (close != std::string_view::npos) {
                const auto it = slots.find(std::string(pattern.substr(i + 1, close - i - 1)));
                if (it != slots.end()) {
                    out += it->second;
                    i = close + 1;
                    continue;
                }
            }
        }
        out += pattern[i++];
    }
    return out;
}

std::string capitalized(std::string_view w) {
    std::string s(w);
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

template <typename Seq>
std::string_view pick(const Seq& seq, Rng& rng) {
    return seq[rng.next() % seq.size()];
}

std::string code_snippet(core::ProgLang lang, const std::string& id, const std::string& var, const std::string& expr,
                         const std::string& helper) {
    switch (lang) {
        case core::ProgLang::python:
            return "def " + id + "(" + var + "):\n    if " + expr + ":\n        return None\n    return " + helper +
                   "(" + var + ")\n";
        case core::ProgLang::java:
            return "public static Object " + id + "(Object " + var + ") {\n    if (" + expr +
                   ") {\n        return null;\n    }\n    return " + helper + "(" + var + ");\n}\n";
        case core::ProgLang::php:
            break;
    }
    std::string php_expr = expr;
    if (php_expr.rfind(var, 0) == 0) php_expr = "$" + php_expr;
    return "function " + id + "($" + var + ") {\n    if (" + php_expr + ") {\n        return null;\n    }\n    return " +
           helper + "($" + var + ");\n}\n";
}

}  // namespace

core::Corpus synthesize_corpus(const SynthOptions& options) {
    Rng rng(options.seed);
    std::vector<std::array<std::size_t, 3>> combos;
    for (std::size_t v = 0; v < kVerbs.size(); ++v) {
        for (std::size_t n = 0; n < kNouns.size(); ++n) {
            for (std::size_t t = 0; t < kTails.size(); ++t) combos.push_back({v, n, t});
        }
    }
    for (std::size_t i = combos.size(); i > 1; --i) std::swap(combos[i - 1], combos[rng.next() % i]);

    const std::array<core::Dataset, 3> datasets = {core::Dataset::CSN, core::Dataset::CSk, core::Dataset::QA};
    const std::array<core::ProgLang, 3> plangs = {core::ProgLang::python, core::ProgLang::java, core::ProgLang::php};
    std::vector<core::QueryRecord> records;
    std::size_t next_combo = 0;
    for (std::size_t i = 0; i < options.size; ++i) {
        const auto& lang_code = options.languages[i % options.languages.size()];
        const auto lang = core::LanguageTag::parse(lang_code);
        const auto found = phrases().find(lang_code);
        const auto& ph = found != phrases().end() ? found->second : phrases().at("en");

        std::string id;
        do {
            const auto& c = combos[next_combo++ % combos.size()];
            if (rng.next() % 2 == 0) {
                id = std::string(kVerbs[c[0]]) + capitalized(kNouns[c[1]]) + capitalized(kTails[c[2]]);
            } else {
                id = std::string(kVerbs[c[0]]) + "_" + std::string(kNouns[c[1]]) + "_" + std::string(kTails[c[2]]);
            }
        } while (id == "getUserInfo");

        core::QueryRecord r;
        r.dataset = datasets[i % 3];
        r.prog_lang = plangs[(i / 3) % 3];
        if (r.dataset == core::Dataset::QA && r.prog_lang == core::ProgLang::php) r.prog_lang = core::ProgLang::python;
        r.nat_lang = lang;
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04zu", i);
        r.id = "syn-" + lang_code + "-" + buf;

        const std::string var(pick(kVars, rng));
        std::string expr;
        switch (rng.next() % 4) {
            case 0: expr = var + " == 0"; break;
            case 1: expr = var + " != 0"; break;
            case 2: expr = var + " >= 10"; break;
            default: expr = std::string(pick(kFields, rng)) + " == 0"; break;
        }
        const std::string plang = r.prog_lang == core::ProgLang::php
                                      ? "PHP"
                                      : capitalized(core::to_string(r.prog_lang));
        std::map<std::string, std::string> slots = {{"id", id}, {"expr", expr}, {"var", var}, {"plang", plang}};
        std::string text = fill(pick(ph.questions, rng), slots);
        if (rng.uniform() < 0.6) {
            slots["term"] = std::string(pick(kTerms, rng));
            text += " " + fill(ph.term, slots);
        }
        std::string helper = "process";
        if (rng.uniform() < 0.5) {
            helper = std::string(pick(kJoined, rng));
            slots["joined"] = helper;
            text += " " + fill(ph.joined, slots);
        }
        r.reference_text = text;
        r.code = code_snippet(r.prog_lang, id, var, expr, helper);
        if (r.dataset == core::Dataset::QA) r.gold_answer = "Check " + var + " before calling " + id + ".";
        records.push_back(std::move(r));
    }
    return core::Corpus(std::move(records), "<synthetic>");
}

}  // namespace codevoice::pipeline
