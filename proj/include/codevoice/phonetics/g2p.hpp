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
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "codevoice/core/language.hpp"
#include "codevoice/phonetics/feature_table.hpp"

namespace codevoice::phonetics {

struct PhonemeSequence {
    std::vector<std::string> segments;
    core::LanguageTag source_lang;

    bool operator==(const PhonemeSequence&) const = default;
};

/// Segments of the sequence that the table does not know, in order of first use.
std::vector<std::string> unknown_segments(const PhonemeSequence& seq, const ArticulatoryFeatureTable& table);

class G2PAdapter {
public:
    virtual ~G2PAdapter() = default;
    virtual std::string id() const = 0;
    virtual bool supports(const core::LanguageTag& lang) const = 0;
    /// Whether segments() may be called from several threads at once.
    virtual bool concurrent_safe() const = 0;
    /// Utterance-level segments for NFC text. Word boundaries are not kept.
    virtual std::vector<std::string> segments(std::string_view text, const core::LanguageTag& lang) const = 0;
};

/// Throws ConfigError when the adapter does not support .
PhonemeSequence phonemize(std::string_view text, const core::LanguageTag& lang, const G2PAdapter& adapter);

/// One grapheme rule file. Class letters drive abugida handling: C is a
/// consonant carrying the inherent vowel, M a dependent vowel sign that
/// replaces it, V a virama that suppresses it.
struct RuleSet {
    struct Rule {
        std::vector<std::string> phones;
        char cls = 0;
    };

    std::map<std::u32string, Rule> rules;
    std::map<std::u32string, Rule> final_rules;  ///< keys written with a trailing '$'
    std::string inherent;
    bool drop_final_inherent = false;
    std::size_t max_key = 0;

    static RuleSet parse(std::string_view tsv, const std::string& source);
    /// Applies the rules to one word. Characters without a rule are skipped.
    std::vector<std::string> apply(std::u32string_view word) const;
};

/// Whole-word pronunciations tried before the rules.
class ExceptionLexicon {
public:
    static ExceptionLexicon parse(std::string_view tsv, const std::string& source);
    /// Exact spelling first, then the lowercased word.
    const std::vector<std::string>* find(std::string_view word) const;

private:
    std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

/// Offline rule-based G2P over the bundled rule files. Latin-script words use
/// the English rules and exception list; words in an Indic script use that
/// script's rules. With romanized_indic set, Latin words in a non-English
/// record go through the romanized Indic rules instead.
class BuiltinRulesG2P : public G2PAdapter {
public:
    explicit BuiltinRulesG2P(bool romanized_indic = false);

    std::string id() const override;
    bool supports(const core::LanguageTag& lang) const override;
    bool concurrent_safe() const override { return true; }
    std::vector<std::string> segments(std::string_view text, const core::LanguageTag& lang) const override;

    /// Registers native-script rules for a language and the script block
    /// [first, last] its words are recognized by.
    void add_language(const std::string& code, RuleSet rules, char32_t first, char32_t last);

private:
    const RuleSet* rules_for_word(std::u32string_view word, const core::LanguageTag& lang) const;
    void phonemize_word(const std::string& word, const core::LanguageTag& lang, std::vector<std::string>& out) const;

    struct Script {
        std::string code;
        char32_t first;
        char32_t last;
    };

    bool romanized_;
    RuleSet english_;
    RuleSet romanized_rules_;
    ExceptionLexicon exceptions_;
    std::map<std::string, RuleSet> native_;
    std::vector<Script> scripts_;
};

/// Runs an external G2P program: the text goes to its standard input and
/// space-separated IPA is read from standard output. "{lang}" in the
/// command is replaced by the language code. Calls are serialized.
class ExternalCommandG2P : public G2PAdapter {
public:
    ExternalCommandG2P(std::vector<std::string> argv, std::vector<std::string> languages = {});

    std::string id() const override;
    bool supports(const core::LanguageTag& lang) const override;
    bool concurrent_safe() const override { return false; }
    std::vector<std::string> segments(std::string_view text, const core::LanguageTag& lang) const override;

private:
    std::vector<std::string> argv_;
    std::vector<std::string> languages_;
    mutable std::mutex mutex_;
};

/// Input is already space-separated IPA.
class PassthroughG2P : public G2PAdapter {
public:
    std::string id() const override { return "passthrough-ipa"; }
    bool supports(const core::LanguageTag&) const override { return true; }
    bool concurrent_safe() const override { return true; }
    std::vector<std::string> segments(std::string_view text, const core::LanguageTag& lang) const override;
};

}  // namespace codevoice::phonetics
