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

#include "codevoice/refinement/confusion_lexicon.hpp"

#include <algorithm>
#include <set>

#include "codevoice/util/embedded_data.hpp"
#include "codevoice/util/error.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::refine {

ConfusionLexicon::ConfusionLexicon(std::vector<Entry> entries) : entries_(std::move(entries)) {
    std::set<std::string> seen;
    for (auto& e : entries_) {
        e.heard_words = text::split_whitespace(text::to_lower(e.heard));
        e.heard = text::join(e.heard_words, " ");
        e.intended = text::trim(e.intended);
        if (e.heard_words.empty() || e.intended.empty()) throw ValidationError("confusion lexicon: empty entry");
        if (!seen.insert(e.heard).second) {
            throw ValidationError("confusion lexicon: heard phrase '" + e.heard + "' listed twice");
        }
    }
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const Entry& a, const Entry& b) { return a.heard_words.size() > b.heard_words.size(); });
}

ConfusionLexicon ConfusionLexicon::parse(std::string_view tsv, const std::string& source) {
    std::vector<Entry> entries;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < tsv.size()) {
        auto nl = tsv.find('\n', pos);
        auto line = tsv.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? tsv.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (text::trim(line).empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
            throw ParseError(source, line_no, "expected heard<TAB>intended");
        }
        Entry e;
        e.heard = text::nfc(line.substr(0, tab));
        e.intended = text::nfc(line.substr(tab + 1));
        if (text::trim(e.heard).empty() || text::trim(e.intended).empty()) {
            throw ParseError(source, line_no, "empty field");
        }
        entries.push_back(std::move(e));
    }
    try {
        return ConfusionLexicon(std::move(entries));
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }
}

ConfusionLexicon ConfusionLexicon::load(const std::filesystem::path& path) {
    return parse(data::read_file(path), path.string());
}

std::shared_ptr<const ConfusionLexicon> ConfusionLexicon::builtin() {
    static const auto lexicon = std::make_shared<const ConfusionLexicon>(
        parse(data::embedded("lexicons/confusions.tsv"), "bundled:lexicons/confusions.tsv"));
    return lexicon;
}

const ConfusionLexicon::Entry* ConfusionLexicon::match(std::span<const std::string> words, std::size_t pos) const {
    for (const auto& e : entries_) {
        const auto n = e.heard_words.size();
        if (pos + n <= words.size() &&
            std::equal(e.heard_words.begin(), e.heard_words.end(), words.begin() + static_cast<std::ptrdiff_t>(pos))) {
            return &e;
        }
    }
    return nullptr;
}

std::string ConfusionLexicon::apply(std::string_view input) const {
    const auto words = text::split_whitespace(input);
    std::vector<std::string> lower;
    lower.reserve(words.size());
    for (const auto& w : words) lower.push_back(text::to_lower(w));
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < words.size()) {
        if (const auto* e = match(lower, i)) {
            out.push_back(e->intended);
            i += e->heard_words.size();
        } else {
            out.push_back(words[i++]);
        }
    }
    return text::join(out, " ");
}

}  // namespace codevoice::refine
