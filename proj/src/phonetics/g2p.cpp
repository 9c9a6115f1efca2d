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

#include "codevoice/phonetics/g2p.hpp"

#include <algorithm>
#include <set>

#include "codevoice/util/embedded_data.hpp"
#include "codevoice/util/error.hpp"
#include "codevoice/util/subprocess.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::phonetics {

namespace {

constexpr std::string_view kSilent = "∅";

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    return out;
}

template <typename Fn>
void for_each_line(std::string_view body, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < body.size()) {
        auto nl = body.find('\n', pos);
        auto line = body.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? body.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        fn(line, line_no);
    }
}

std::vector<std::string> parse_phones(std::string_view field) {
    std::vector<std::string> phones;
    for (auto& p : text::split_whitespace(field)) {
        if (p != kSilent) phones.push_back(text::nfc(p));
    }
    return phones;
}

}  // namespace

std::vector<std::string> unknown_segments(const PhonemeSequence& seq, const ArticulatoryFeatureTable& table) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& s : seq.segments) {
        if (!table.contains(s) && seen.insert(s).second) out.push_back(s);
    }
    return out;
}

PhonemeSequence phonemize(std::string_view text, const core::LanguageTag& lang, const G2PAdapter& adapter) {
    if (!adapter.supports(lang)) {
        throw ConfigError("G2P adapter '" + adapter.id() + "' does not support language '" + lang.code() + "'");
    }
    return PhonemeSequence{adapter.segments(text::nfc(text), lang), lang};
}

RuleSet RuleSet::parse(std::string_view tsv, const std::string& source) {
    RuleSet rs;
    for_each_line(tsv, [&](std::string_view line, std::size_t line_no) {
        if (text::trim(line).empty()) return;
        const auto fields = split_tabs(line);
        if (line.starts_with("#!")) {
            const auto name = text::trim(fields[0].substr(2));
            const auto value = fields.size() > 1 ? text::trim(fields[1]) : std::string();
            if (name == "inherent") {
                rs.inherent = text::nfc(value);
            } else if (name == "drop_final_inherent") {
                rs.drop_final_inherent = value == "1";
            } else {
                throw ParseError(source, line_no, "unknown directive '" + name + "'");
            }
            return;
        }
        if (line.front() == '#') return;
        if (fields.size() < 2 || fields.size() > 3) {
            throw ParseError(source, line_no, "expected grapheme<TAB>phones[<TAB>class]");
        }
        auto key = text::decode(text::nfc(text::trim(fields[0])));
        if (key.empty()) throw ParseError(source, line_no, "empty grapheme");
        Rule rule;
        rule.phones = parse_phones(fields[1]);
        if (fields.size() == 3) {
            const auto cls = text::trim(fields[2]);
            if (cls.size() != 1 || std::string_view("CMV").find(cls[0]) == std::string_view::npos) {
                throw ParseError(source, line_no, "class must be C, M or V");
            }
            rule.cls = cls[0];
        }
        auto* target = &rs.rules;
        if (key.size() > 1 && key.back() == U'$') {
            key.pop_back();
            target = &rs.final_rules;
        }
        rs.max_key = std::max(rs.max_key, key.size());
        (*target)[key] = std::move(rule);
    });
    return rs;
}

std::vector<std::string> RuleSet::apply(std::u32string_view word) const {
    std::vector<std::string> out;
    bool pending = false;
    std::size_t consonants = 0;
    std::size_t i = 0;
    while (i < word.size()) {
        const Rule* best = nullptr;
        std::size_t len = std::min(max_key, word.size() - i);
        for (; len > 0; --len) {
            const std::u32string key(word.substr(i, len));
            if (i + len == word.size()) {
                if (auto it = final_rules.find(key); it != final_rules.end()) {
                    best = &it->second;
                    break;
                }
            }
            if (auto it = rules.find(key); it != rules.end()) {
                best = &it->second;
                break;
            }
        }
        if (!best) {
            ++i;
            continue;
        }
        switch (best->cls) {
            case 'C':
                if (pending) out.push_back(inherent);
                pending = !inherent.empty();
                ++consonants;
                break;
            case 'M':
            case 'V':
                pending = false;
                break;
            default:
                // Anusvara, visarga and independent vowels follow a spoken
                // inherent vowel; silent marks such as the nukta do not.
                if (!best->phones.empty()) {
                    if (pending) out.push_back(inherent);
                    pending = false;
                }
                break;
        }
        out.insert(out.end(), best->phones.begin(), best->phones.end());
        i += len;
    }
    if (pending && !(drop_final_inherent && consonants > 1)) out.push_back(inherent);
    return out;
}

ExceptionLexicon ExceptionLexicon::parse(std::string_view tsv, const std::string& source) {
    ExceptionLexicon lex;
    for_each_line(tsv, [&](std::string_view line, std::size_t line_no) {
        if (text::trim(line).empty() || line.front() == '#') return;
        const auto fields = split_tabs(line);
        if (fields.size() != 2) throw ParseError(source, line_no, "expected word<TAB>phones");
        auto word = text::nfc(text::trim(fields[0]));
        auto phones = parse_phones(fields[1]);
        if (word.empty() || phones.empty()) throw ParseError(source, line_no, "empty field");
        lex.entries_[word] = std::move(phones);
    });
    return lex;
}

const std::vector<std::string>* ExceptionLexicon::find(std::string_view word) const {
    if (auto it = entries_.find(word); it != entries_.end()) return &it->second;
    if (auto it = entries_.find(text::to_lower(word)); it != entries_.end()) return &it->second;
    return nullptr;
}

BuiltinRulesG2P::BuiltinRulesG2P(bool romanized_indic)
    : romanized_(romanized_indic),
      english_(RuleSet::parse(data::embedded("g2p/en.tsv"), "bundled:g2p/en.tsv")),
      romanized_rules_(RuleSet::parse(data::embedded("g2p/indic_latn.tsv"), "bundled:g2p/indic_latn.tsv")),
      exceptions_(ExceptionLexicon::parse(data::embedded("g2p/en_exceptions.tsv"), "bundled:g2p/en_exceptions.tsv")) {
    add_language("hi", RuleSet::parse(data::embedded("g2p/hi.tsv"), "bundled:g2p/hi.tsv"), 0x0900, 0x097F);
    add_language("bn", RuleSet::parse(data::embedded("g2p/bn.tsv"), "bundled:g2p/bn.tsv"), 0x0980, 0x09FF);
    add_language("gu", RuleSet::parse(data::embedded("g2p/gu.tsv"), "bundled:g2p/gu.tsv"), 0x0A80, 0x0AFF);
    add_language("ta", RuleSet::parse(data::embedded("g2p/ta.tsv"), "bundled:g2p/ta.tsv"), 0x0B80, 0x0BFF);
}

std::string BuiltinRulesG2P::id() const { return romanized_ ? "builtin-rules+romanized" : "builtin-rules"; }

bool BuiltinRulesG2P::supports(const core::LanguageTag& lang) const {
    return lang.is_english() || native_.contains(lang.code());
}

void BuiltinRulesG2P::add_language(const std::string& code, RuleSet rules, char32_t first, char32_t last) {
    native_[code] = std::move(rules);
    std::erase_if(scripts_, [&](const Script& s) { return s.code == code; });
    scripts_.push_back({code, first, last});
}

std::vector<std::string> BuiltinRulesG2P::segments(std::string_view text, const core::LanguageTag& lang) const {
    std::vector<std::string> out;
    for (const auto& token : text::split_whitespace(text)) {
        for (const auto& piece : text::identifier_words(token)) phonemize_word(piece, lang, out);
    }
    return out;
}

void BuiltinRulesG2P::phonemize_word(const std::string& word, const core::LanguageTag& lang,
                                     std::vector<std::string>& out) const {
    const auto cps = text::decode(word);
    auto script_of = [this](char32_t c) -> const Script* {
        for (const auto& s : scripts_) {
            if (c >= s.first && c <= s.last) return &s;
        }
        return nullptr;
    };
    // A word can mix scripts ("APIको"); each run gets its own rules.
    std::size_t i = 0;
    while (i < cps.size()) {
        const Script* script = script_of(cps[i]);
        std::size_t j = i + 1;
        while (j < cps.size() && script_of(cps[j]) == script) ++j;
        const auto run = std::u32string_view(cps).substr(i, j - i);
        if (script) {
            const auto phones = native_.at(script->code).apply(run);
            out.insert(out.end(), phones.begin(), phones.end());
        } else {
            const auto spelled = text::encode(run);
            if (const auto* exc = exceptions_.find(spelled)) {
                out.insert(out.end(), exc->begin(), exc->end());
            } else {
                const RuleSet& rules = romanized_ && !lang.is_english() ? romanized_rules_ : english_;
                const auto phones = rules.apply(text::decode(text::to_lower(spelled)));
                out.insert(out.end(), phones.begin(), phones.end());
            }
        }
        i = j;
    }
}

ExternalCommandG2P::ExternalCommandG2P(std::vector<std::string> argv, std::vector<std::string> languages)
    : argv_(std::move(argv)), languages_(std::move(languages)) {
    if (argv_.empty()) throw ConfigError("external G2P command is empty");
}

std::string ExternalCommandG2P::id() const { return "external-command:" + argv_.front(); }

bool ExternalCommandG2P::supports(const core::LanguageTag& lang) const {
    return languages_.empty() || std::find(languages_.begin(), languages_.end(), lang.code()) != languages_.end();
}

std::vector<std::string> ExternalCommandG2P::segments(std::string_view text, const core::LanguageTag& lang) const {
    std::vector<std::string> argv = argv_;
    for (auto& arg : argv) {
        for (auto pos = arg.find("{lang}"); pos != std::string::npos; pos = arg.find("{lang}", pos)) {
            arg.replace(pos, 6, lang.code());
            pos += lang.code().size();
        }
    }
    const std::string input = std::string(text) + "\n";
    CommandResult result;
    {
        std::lock_guard lock(mutex_);
        result = run_command(argv, input);
    }
    if (result.exit_code != 0) {
        throw BackendError("G2P command exited with status " + std::to_string(result.exit_code),
                           "command: " + text::join(argv, " ") + "\nstdin: " + input + "stdout: " + result.out +
                               "\nstderr: " + result.err);
    }
    std::vector<std::string> segs;
    for (auto& s : text::split_whitespace(result.out)) segs.push_back(text::nfc(s));
    return segs;
}

std::vector<std::string> PassthroughG2P::segments(std::string_view text, const core::LanguageTag&) const {
    std::vector<std::string> segs;
    for (auto& s : text::split_whitespace(text)) segs.push_back(text::nfc(s));
    return segs;
}

}  // namespace codevoice::phonetics
