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
#include "codevoice/verbalizer/verbalizer.hpp"

#include <algorithm>

#include "codevoice/util/embedded_data.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::verbal {

namespace {

constexpr std::size_t kMaxHintWords = 8;

bool single_capital(const std::string& w) { return w.size() == 1 && w[0] >= 'A' && w[0] <= 'Z'; }
bool single_digit(const std::string& w) { return w.size() == 1 && w[0] >= '0' && w[0] <= '9'; }

bool all_word_chars(std::string_view s) {
    const auto cps = text::decode(s);
    return !cps.empty() && std::all_of(cps.begin(), cps.end(), text::is_word_char);
}

std::shared_ptr<const SymbolLexicon> borrow(const SymbolLexicon& lexicon) {
    return std::shared_ptr<const SymbolLexicon>(std::shared_ptr<void>(), &lexicon);
}

struct Piece {
    std::string text;
    const SymbolEntry* symbol = nullptr;
};

struct HintPattern {
    std::string spelling;
    std::vector<std::string> spoken;
    std::string key;
};

}  // namespace

std::string_view to_string(TokenClass c) {
    switch (c) {
        case TokenClass::acronym: return "acronym";
        case TokenClass::camel_case: return "camelCase";
        case TokenClass::snake_case: return "snake_case";
        case TokenClass::dotted_path: return "dotted-path";
        case TokenClass::symbolic_operator: return "symbolic-operator";
        case TokenClass::plain: return "plain";
    }
    return "plain";
}

AcronymList parse_acronyms(std::string_view text) {
    AcronymList out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text::trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (!line.empty() && line.front() != '#') out.insert(line);
    }
    return out;
}

const AcronymList& builtin_acronyms() {
    static const AcronymList list = parse_acronyms(data::embedded("lexicons/acronyms.txt"));
    return list;
}

Verbalizer::Verbalizer() : Verbalizer(SymbolLexicon::builtin()) {}

Verbalizer::Verbalizer(std::shared_ptr<const SymbolLexicon> lexicon, AcronymList long_acronyms)
    : lexicon_(std::move(lexicon)), long_acronyms_(std::move(long_acronyms)) {}

bool Verbalizer::spelled_acronym(std::string_view word) const {
    if (text::is_ascii_upper_word(word) && word.size() >= 2 && word.size() <= 5) return true;
    return long_acronyms_.contains(word);
}

TokenClass Verbalizer::classify(std::string_view token) const {
    const auto cps = text::decode(token);
    if (cps.empty()) return TokenClass::plain;
    const bool has_word = std::any_of(cps.begin(), cps.end(), text::is_word_char);
    if (!has_word) return lexicon_->is_symbol_sequence(token) ? TokenClass::symbolic_operator : TokenClass::plain;

    bool underscore = false;
    bool inner_dot = false;
    bool operator_symbol = false;
    std::size_t i = 0;
    while (i < cps.size()) {
        if (text::is_word_char(cps[i])) {
            ++i;
            continue;
        }
        const std::size_t run_start = i;
        while (i < cps.size() && !text::is_word_char(cps[i])) ++i;
        const bool inner = run_start > 0 && i < cps.size();
        const auto run = std::u32string_view(cps).substr(run_start, i - run_start);
        std::size_t p = 0;
        while (p < run.size()) {
            const auto* m = lexicon_->match_literal(run, p);
            if (!m) {
                ++p;
                continue;
            }
            if (m->literal == "_") {
                underscore = true;
            } else if (m->literal == ".") {
                inner_dot = inner_dot || inner;
            } else {
                operator_symbol = true;
            }
            p += text::decode(m->literal).size();
        }
    }
    if (operator_symbol) return TokenClass::symbolic_operator;
    if (underscore) return TokenClass::snake_case;
    if (inner_dot) return TokenClass::dotted_path;
    if (spelled_acronym(token)) return TokenClass::acronym;
    if (all_word_chars(token) && text::identifier_words(token).size() >= 2) return TokenClass::camel_case;
    return TokenClass::plain;
}

std::string Verbalizer::strip_sentence_punctuation(std::string_view token) const {
    const auto cps = text::decode(token);
    std::size_t b = 0, e = cps.size();
    while (b < e && text::is_punctuation(cps[b]) && !lexicon_->uses_char(cps[b])) ++b;
    while (e > b && text::is_punctuation(cps[e - 1]) && (!lexicon_->uses_char(cps[e - 1]) || cps[e - 1] == U'.')) --e;
    return text::encode(std::u32string_view(cps).substr(b, e - b));
}

void Verbalizer::verbalize_word_run(std::u32string_view run, std::vector<std::string>& out) const {
    const std::string word = text::encode(run);
    auto spell = [&out](std::string_view letters) {
        for (char c : letters) out.emplace_back(1, c);
    };
    if (spelled_acronym(word)) {
        spell(word);
        return;
    }
    const auto pieces = text::identifier_words(word);
    if (pieces.size() <= 1) {
        out.push_back(word);
        return;
    }
    for (const auto& piece : pieces) {
        if (spelled_acronym(piece)) spell(piece); else out.push_back(text::to_lower(piece));
    }
}

void Verbalizer::verbalize_token(std::string_view token, std::vector<std::string>& out) const {
    const std::string core = strip_sentence_punctuation(token);
    if (core.empty()) return;
    const auto cps = text::decode(core);
    const TokenClass cls = classify(core);

    if (cls == TokenClass::plain) {
        std::string kept;
        for (char32_t c : cps) {
            if (text::is_word_char(c)) text::append(kept, c);
        }
        if (!kept.empty()) out.push_back(std::move(kept));
        return;
    }

    // Hyphenated prose ("well-known") is two words, not a subtraction.
    if (cls == TokenClass::symbolic_operator) {
        bool prose = true;
        std::size_t letters_in_run = 0;
        for (std::size_t i = 0; i <= cps.size() && prose; ++i) {
            if (i == cps.size() || cps[i] == U'-') {
                prose = letters_in_run >= 2;
                letters_in_run = 0;
            } else if (text::is_letter(cps[i]) || text::is_mark(cps[i])) {
                ++letters_in_run;
            } else {
                prose = false;
            }
        }
        if (prose) {
            std::string spaced = core;
            std::replace(spaced.begin(), spaced.end(), '-', ' ');
            for (const auto& w : text::split_whitespace(spaced)) verbalize_word_run(text::decode(w), out);
            return;
        }
    }

    std::size_t i = 0;
    while (i < cps.size()) {
        const std::size_t start = i;
        if (text::is_word_char(cps[i])) {
            while (i < cps.size() && text::is_word_char(cps[i])) ++i;
            verbalize_word_run(std::u32string_view(cps).substr(start, i - start), out);
            continue;
        }
        while (i < cps.size() && !text::is_word_char(cps[i])) ++i;
        const auto run = std::u32string_view(cps).substr(start, i - start);
        std::size_t p = 0;
        while (p < run.size()) {
            if (const auto* m = lexicon_->match_literal(run, p)) {
                out.insert(out.end(), m->spoken_words.begin(), m->spoken_words.end());
                p += text::decode(m->literal).size();
            } else {
                ++p;  // symbols outside the lexicon are not spoken
            }
        }
    }
}

std::string Verbalizer::verbalize(std::string_view text) const {
    std::vector<std::string> out;
    for (const auto& token : text::split_whitespace(text)) verbalize_token(token, out);
    return text::join(out, " ");
}

std::vector<std::string> Verbalizer::spoken_words(std::string_view identifier) const {
    auto words = text::split_whitespace(verbalize(identifier));
    for (auto& w : words) w = text::to_lower(w);
    return words;
}

std::string Verbalizer::deverbalize(std::string_view spoken, std::span<const std::string> hints) const {
    const auto words = text::split_whitespace(spoken);
    std::vector<std::string> lower;
    lower.reserve(words.size());
    for (const auto& w : words) lower.push_back(text::to_lower(w));

    std::vector<HintPattern> patterns;
    for (const auto& h : hints) {
        if (h.empty()) continue;
        patterns.push_back({h, spoken_words(h), text::fold_key(h)});
    }

    std::vector<Piece> pieces;
    std::size_t i = 0;
    while (i < words.size()) {
        std::size_t best_len = 0;
        const std::string* best = nullptr;
        for (const auto& p : patterns) {
            const auto n = p.spoken.size();
            if (n > best_len && i + n <= words.size() &&
                std::equal(p.spoken.begin(), p.spoken.end(), lower.begin() + static_cast<std::ptrdiff_t>(i))) {
                best_len = n;
                best = &p.spelling;
            }
            if (p.key.empty()) continue;
            std::string joined;
            for (std::size_t n2 = 1; n2 <= kMaxHintWords && i + n2 <= words.size(); ++n2) {
                const auto& w = lower[i + n2 - 1];
                if (!all_word_chars(w)) break;
                joined += text::fold_key(w);
                if (joined.size() > p.key.size()) break;
                if (joined == p.key && n2 > best_len) {
                    best_len = n2;
                    best = &p.spelling;
                }
            }
        }
        if (best) {
            pieces.push_back({*best, nullptr});
            i += best_len;
            continue;
        }
        if (const auto* sym = lexicon_->match_spoken(lower, i)) {
            pieces.push_back({sym->literal, sym});
            i += sym->spoken_words.size();
            continue;
        }
        std::size_t j = i;
        while (j < words.size() && (single_capital(words[j]) || (j > i && single_digit(words[j])))) ++j;
        if (j - i >= 2) {
            std::string acronym;
            for (std::size_t k = i; k < j; ++k) acronym += words[k];
            pieces.push_back({std::move(acronym), nullptr});
            i = j;
            continue;
        }
        pieces.push_back({words[i], nullptr});
        ++i;
    }

    std::string out;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        if (k > 0) {
            const auto* prev = pieces[k - 1].symbol;
            const auto* cur = pieces[k].symbol;
            const bool glue = (prev && (prev->attach == Attach::right || prev->attach == Attach::both)) ||
                              (cur && (cur->attach == Attach::left || cur->attach == Attach::both));
            if (!glue) out += ' ';
        }
        out += pieces[k].text;
    }
    return out;
}

std::vector<std::string> Verbalizer::code_tokens(std::string_view text) const {
    std::vector<std::string> out;
    for (const auto& token : text::split_whitespace(text)) {
        auto core = strip_sentence_punctuation(token);
        if (!core.empty() && classify(core) != TokenClass::plain) out.push_back(std::move(core));
    }
    return out;
}

TokenClass classify_token(std::string_view token, const SymbolLexicon& lexicon) {
    return Verbalizer(borrow(lexicon)).classify(token);
}

std::string verbalize(std::string_view text, const SymbolLexicon& lexicon) {
    return Verbalizer(borrow(lexicon)).verbalize(text);
}

std::string deverbalize(std::string_view spoken, const SymbolLexicon& lexicon,
                        std::span<const std::string> identifier_hints) {
    return Verbalizer(borrow(lexicon)).deverbalize(spoken, identifier_hints);
}

}  // namespace codevoice::verbal
