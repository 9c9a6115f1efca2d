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
#include "codevoice/verbalizer/symbol_lexicon.hpp"

#include <algorithm>
#include <map>

#include "codevoice/util/embedded_data.hpp"
#include "codevoice/util/error.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::verbal {

namespace {

Attach default_attach(std::string_view literal) {
    static const std::map<std::string_view, Attach> kDefaults = {
        {"_", Attach::both},  {".", Attach::both},  {"->", Attach::both}, {"(", Attach::both},
        {"[", Attach::both},  {")", Attach::left},  {"]", Attach::left},  {"()", Attach::left},
        {"[]", Attach::left}, {"#", Attach::right}, {"::", Attach::both},
    };
    auto it = kDefaults.find(literal);
    return it == kDefaults.end() ? Attach::none : it->second;
}

Attach parse_attach(std::string_view s, const std::string& where) {
    if (s == "none") return Attach::none;
    if (s == "left") return Attach::left;
    if (s == "right") return Attach::right;
    if (s == "both") return Attach::both;
    throw Error(where + ": unknown attach mode '" + std::string(s) + "'");
}

bool lowercase_ascii_words(const std::vector<std::string>& words) {
    if (words.empty()) return false;
    return std::all_of(words.begin(), words.end(), [](const std::string& w) {
        return std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; });
    });
}

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

}  // namespace

SymbolLexicon::SymbolLexicon(std::vector<SymbolEntry> entries) : entries_(std::move(entries)) {
    std::map<std::string, std::string> by_phrase;
    std::map<std::string, std::string> by_literal;
    for (auto& e : entries_) {
        if (e.literal.empty()) throw ValidationError("symbol lexicon: empty literal");
        if (e.spoken_words.empty()) e.spoken_words = text::split_whitespace(e.spoken);
        e.spoken = text::join(e.spoken_words, " ");
        if (!lowercase_ascii_words(e.spoken_words)) {
            throw ValidationError("symbol lexicon: phrase for '" + e.literal + "' must be lowercase ASCII words");
        }
        if (!by_literal.emplace(e.literal, e.spoken).second) {
            throw ValidationError("symbol lexicon: literal '" + e.literal + "' listed twice");
        }
        // Two literals sharing a phrase would make longest-match inversion ambiguous.
        if (auto [it, ok] = by_phrase.emplace(e.spoken, e.literal); !ok) {
            throw ValidationError("symbol lexicon: phrase '" + e.spoken + "' used by both '" + it->second +
                                  "' and '" + e.literal + "'");
        }
        literals32_.push_back(text::decode(e.literal));
        for (char32_t c : literals32_.back()) {
            if (literal_chars_.find(c) == std::u32string::npos) literal_chars_.push_back(c);
        }
    }
}

SymbolLexicon SymbolLexicon::parse(std::string_view tsv, const std::string& source) {
    std::vector<SymbolEntry> entries;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < tsv.size()) {
        auto nl = tsv.find('\n', pos);
        auto line = tsv.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? tsv.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (text::trim(line).empty()) continue;
        // "#<TAB>hash" is an entry for the '#' literal; "# ..." is a comment.
        if (line.front() == '#' && (line.size() == 1 || line[1] != '\t')) continue;
        const auto fields = split_tabs(line);
        if (fields.size() < 2 || fields.size() > 3) {
            throw ParseError(source, line_no, "expected literal<TAB>phrase[<TAB>attach]");
        }
        SymbolEntry e;
        e.literal = text::nfc(text::trim(fields[0]));
        e.spoken = text::trim(fields[1]);
        e.spoken_words = text::split_whitespace(e.spoken);
        const std::string where = source + ":" + std::to_string(line_no);
        e.attach = fields.size() == 3 ? parse_attach(text::trim(fields[2]), where) : default_attach(e.literal);
        if (e.literal.empty() || e.spoken_words.empty()) throw ParseError(source, line_no, "empty field");
        entries.push_back(std::move(e));
    }
    try {
        return SymbolLexicon(std::move(entries));
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }
}

SymbolLexicon SymbolLexicon::load(const std::filesystem::path& path) {
    return parse(data::read_file(path), path.string());
}

std::shared_ptr<const SymbolLexicon> SymbolLexicon::builtin() {
    static const auto lexicon = std::make_shared<const SymbolLexicon>(
        parse(data::embedded("lexicons/symbols.tsv"), "bundled:lexicons/symbols.tsv"));
    return lexicon;
}

const SymbolEntry* SymbolLexicon::find_literal(std::string_view literal) const {
    for (const auto& e : entries_) {
        if (e.literal == literal) return &e;
    }
    return nullptr;
}

bool SymbolLexicon::uses_char(char32_t c) const { return literal_chars_.find(c) != std::u32string::npos; }

const SymbolEntry* SymbolLexicon::match_literal(std::u32string_view s, std::size_t pos) const {
    const SymbolEntry* best = nullptr;
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& lit = literals32_[i];
        if (lit.size() > best_len && s.substr(pos, lit.size()) == lit) {
            best = &entries_[i];
            best_len = lit.size();
        }
    }
    return best;
}

const SymbolEntry* SymbolLexicon::match_spoken(std::span<const std::string> words, std::size_t pos) const {
    const SymbolEntry* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& e : entries_) {
        const auto n = e.spoken_words.size();
        if (n <= best_len || pos + n > words.size()) continue;
        if (std::equal(e.spoken_words.begin(), e.spoken_words.end(), words.begin() + static_cast<std::ptrdiff_t>(pos))) {
            best = &e;
            best_len = n;
        }
    }
    return best;
}

bool SymbolLexicon::is_symbol_sequence(std::string_view s) const {
    const auto cps = text::decode(s);
    if (cps.empty()) return false;
    std::size_t pos = 0;
    while (pos < cps.size()) {
        const auto* m = match_literal(cps, pos);
        if (!m) return false;
        pos += text::decode(m->literal).size();
    }
    return true;
}

}  // namespace codevoice::verbal
