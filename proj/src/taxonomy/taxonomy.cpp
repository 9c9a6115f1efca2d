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

#include "codevoice/taxonomy/taxonomy.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>

#include "codevoice/metrics/alignment.hpp"
#include "codevoice/metrics/metrics.hpp"
#include "codevoice/util/embedded_data.hpp"
#include "codevoice/util/error.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::taxonomy {

namespace {

using metrics::OpKind;

struct Unit {
    std::size_t begin = 0;
    std::size_t end = 0;
    bool code = false;
    std::string identifier;  // written form when the unit came from a hint
};

struct SymbolSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    const verbal::SymbolEntry* entry = nullptr;
};

bool single_letter(const std::string& w) {
    return w.size() == 1 && ((w[0] >= 'a' && w[0] <= 'z') || (w[0] >= 'A' && w[0] <= 'Z'));
}

// Spelled-out letters are compared as the word they spell ("a s c i i"
// sounds like "ascii", not like five letter names).
std::string collapse_letters(const std::vector<std::string>& words) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < words.size()) {
        std::size_t j = i;
        while (j < words.size() && single_letter(words[j])) ++j;
        if (j - i >= 2) {
            std::string joined;
            for (std::size_t k = i; k < j; ++k) joined += words[k];
            out.push_back(text::to_lower(joined));
            i = j;
        } else {
            out.push_back(words[i++]);
        }
    }
    return text::join(out, " ");
}

std::string quoted(const std::vector<std::string>& tokens, std::size_t b, std::size_t e) {
    std::vector<std::string> part(tokens.begin() + static_cast<std::ptrdiff_t>(b),
                                  tokens.begin() + static_cast<std::ptrdiff_t>(e));
    return "'" + text::join(part, " ") + "'";
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string_view to_string(TagKind k) {
    switch (k) {
        case TagKind::phonetic_drift: return "phonetic_drift";
        case TagKind::identifier_split: return "identifier_split";
        case TagKind::identifier_merge: return "identifier_merge";
        case TagKind::keyword_ambiguity: return "keyword_ambiguity";
        case TagKind::symbol_loss: return "symbol_loss";
        case TagKind::identifier_recall_failure: return "identifier_recall_failure";
    }
    return "phonetic_drift";
}

TagKind parse_tag_kind(std::string_view s) {
    for (auto k : kAllTagKinds) {
        if (to_string(k) == s) return k;
    }
    throw ArgumentError("unknown taxonomy tag '" + std::string(s) + "'");
}

nlohmann::ordered_json to_json(const TaxonomyTag& tag) {
    return {{"kind", to_string(tag.kind)},
            {"ref_span", {tag.ref_begin, tag.ref_end}},
            {"hyp_span", {tag.hyp_begin, tag.hyp_end}},
            {"evidence", tag.evidence}};
}

WordSet parse_word_list(std::string_view body) {
    WordSet out;
    std::size_t pos = 0;
    while (pos < body.size()) {
        auto nl = body.find('\n', pos);
        auto line = text::trim(body.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
        pos = nl == std::string_view::npos ? body.size() : nl + 1;
        if (!line.empty() && line.front() != '#') out.insert(text::to_lower(line));
    }
    return out;
}

WordSet bundled_keywords(const core::ProgLang* lang) {
    WordSet out;
    for (auto p : {core::ProgLang::python, core::ProgLang::java, core::ProgLang::php}) {
        if (lang && *lang != p) continue;
        auto words = parse_word_list(data::embedded("lexicons/keywords_" + std::string(core::to_string(p)) + ".txt"));
        out.insert(words.begin(), words.end());
    }
    return out;
}

WordSet bundled_function_words() {
    auto out = parse_word_list(data::embedded("lexicons/function_words_en.txt"));
    auto indic = parse_word_list(data::embedded("lexicons/function_words_indic_latn.txt"));
    out.insert(indic.begin(), indic.end());
    return out;
}

Detector Detector::with_defaults() {
    Detector d;
    d.verbalizer = std::make_shared<const verbal::Verbalizer>();
    d.adapter = std::make_shared<const phonetics::BuiltinRulesG2P>();
    d.table = std::make_shared<const phonetics::ArticulatoryFeatureTable>(phonetics::ArticulatoryFeatureTable::bundled());
    return d;
}

std::vector<std::string> Detector::tokenize(std::string_view s) const {
    std::vector<std::string> out;
    for (const auto& raw : text::split_whitespace(text::nfc(s))) {
        auto t = verbalizer->strip_sentence_punctuation(raw);
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

std::vector<TaxonomyTag> Detector::detect(std::string_view ref, std::string_view hyp, const core::LanguageTag& lang,
                                          std::span<const std::string> identifiers) const {
    const auto rt = tokenize(ref);
    const auto ht = tokenize(hyp);
    std::vector<std::string> rk, hk;
    for (const auto& t : rt) rk.push_back(text::to_lower(t));
    for (const auto& t : ht) hk.push_back(text::to_lower(t));
    const auto alignment = metrics::align_tokens(rk, hk);
    if (alignment.ops.errors() == 0 || rt.empty()) return {};
    const auto& trace = alignment.trace;
    const auto& lexicon = verbalizer->lexicon();

    // Reference units: identifier hints (by spoken form) and single tokens.
    struct Hint {
        std::string written;
        std::vector<std::string> spoken;
        std::string key;
    };
    std::vector<Hint> hints;
    for (const auto& id : identifiers) {
        if (!id.empty()) hints.push_back({id, verbalizer->spoken_words(id), text::fold_key(id)});
    }
    std::vector<Unit> units;
    std::vector<std::size_t> unit_of(rt.size());
    for (std::size_t i = 0; i < rt.size();) {
        const Hint* best = nullptr;
        for (const auto& h : hints) {
            const auto n = h.spoken.size();
            if (n > 0 && i + n <= rk.size() && (!best || n > best->spoken.size()) &&
                std::equal(h.spoken.begin(), h.spoken.end(), rk.begin() + static_cast<std::ptrdiff_t>(i))) {
                best = &h;
            }
        }
        Unit u;
        u.begin = i;
        if (best) {
            u.end = i + best->spoken.size();
            u.code = true;
            u.identifier = best->written;
        } else {
            u.end = i + 1;
            const auto key = text::fold_key(rt[i]);
            u.code = verbalizer->classify(rt[i]) != verbal::TokenClass::plain ||
                     std::any_of(hints.begin(), hints.end(), [&](const Hint& h) { return h.key == key; });
            if (lexicon.is_literal(rt[i])) u.code = false;
        }
        for (std::size_t k = u.begin; k < u.end; ++k) unit_of[k] = units.size();
        i = u.end;
        units.push_back(std::move(u));
    }

    // Spoken operator phrases and written operator tokens in the reference.
    std::vector<SymbolSpan> symbols;
    for (std::size_t i = 0; i < rk.size();) {
        if (const auto* e = lexicon.match_spoken(rk, i)) {
            symbols.push_back({i, i + e->spoken_words.size(), e});
            i += e->spoken_words.size();
        } else if (const auto* lit = lexicon.find_literal(rt[i])) {
            symbols.push_back({i, i + 1, lit});
            ++i;
        } else {
            ++i;
        }
    }

    // Which unit each step belongs to; insertions join the unit before them.
    std::vector<std::size_t> step_unit(trace.size());
    std::vector<bool> bad(units.size(), false);
    std::optional<std::size_t> last_unit;
    for (std::size_t p = 0; p < trace.size(); ++p) {
        const auto& s = trace[p];
        std::size_t u;
        if (s.ref_index >= 0) {
            u = unit_of[static_cast<std::size_t>(s.ref_index)];
            last_unit = u;
        } else if (last_unit) {
            u = *last_unit;
        } else {
            u = 0;
            for (std::size_t q = p; q < trace.size(); ++q) {
                if (trace[q].ref_index >= 0) {
                    u = unit_of[static_cast<std::size_t>(trace[q].ref_index)];
                    break;
                }
            }
        }
        step_unit[p] = u;
        if (s.kind != OpKind::match) bad[u] = true;
    }

    std::vector<TaxonomyTag> tags;
    for (std::size_t u0 = 0; u0 < units.size();) {
        if (!bad[u0]) {
            ++u0;
            continue;
        }
        std::size_t u1 = u0;
        while (u1 + 1 < units.size() && bad[u1 + 1]) ++u1;
        const std::size_t r0 = units[u0].begin;
        const std::size_t r1 = units[u1].end;

        std::vector<std::size_t> steps;
        for (std::size_t p = 0; p < trace.size(); ++p) {
            if (step_unit[p] >= u0 && step_unit[p] <= u1) steps.push_back(p);
        }
        std::size_t h0 = ht.size(), h1 = 0;
        for (auto p : steps) {
            if (trace[p].hyp_index >= 0) {
                h0 = std::min(h0, static_cast<std::size_t>(trace[p].hyp_index));
                h1 = std::max(h1, static_cast<std::size_t>(trace[p].hyp_index) + 1);
            }
        }
        if (h0 > h1) h0 = h1 = 0;
        for (auto p : steps) {
            // An empty hypothesis side sits where the next hypothesis token would be.
            if (h1 == 0 && trace[p].hyp_index < 0) {
                std::size_t next = 0;
                for (std::size_t q = p; q < trace.size(); ++q) {
                    if (trace[q].hyp_index >= 0) {
                        next = static_cast<std::size_t>(trace[q].hyp_index);
                        break;
                    }
                    next = ht.size();
                }
                h0 = h1 = next;
                break;
            }
        }

        std::vector<bool> ref_used(rt.size(), false), hyp_used(ht.size(), false);
        std::vector<std::optional<std::size_t>> sub_partner(rt.size());
        std::vector<bool> ref_matched(rt.size(), false), hyp_matched(ht.size(), false);
        std::vector<bool> symbol_noise(ht.size(), false);
        for (auto p : steps) {
            const auto& s = trace[p];
            if (s.kind == OpKind::sub) sub_partner[static_cast<std::size_t>(s.ref_index)] = s.hyp_index;
            if (s.kind == OpKind::match) {
                ref_matched[static_cast<std::size_t>(s.ref_index)] = true;
                hyp_matched[static_cast<std::size_t>(s.hyp_index)] = true;
            }
        }

        // Symbol loss: an operator phrase with no counterpart in the hypothesis.
        for (const auto& sym : symbols) {
            if (sym.end <= r0 || sym.begin >= r1) continue;
            bool damaged = false;
            for (std::size_t i = sym.begin; i < sym.end; ++i) damaged = damaged || !ref_matched[i];
            if (!damaged) continue;
            bool present = false;
            const auto& words = sym.entry->spoken_words;
            // Hypothesis tokens aligned to some other reference token do not count.
            auto loose = [&](std::size_t j) { return !hyp_matched[j] && !hyp_used[j]; };
            for (std::size_t j = h0; j < h1 && !present; ++j) {
                if (ht[j] == sym.entry->literal && loose(j)) {
                    present = true;
                } else if (j + words.size() <= h1 &&
                           std::equal(words.begin(), words.end(), hk.begin() + static_cast<std::ptrdiff_t>(j))) {
                    present = true;
                    for (std::size_t k = j; k < j + words.size(); ++k) present = present && loose(k);
                }
            }
            if (present) continue;
            tags.push_back({TagKind::symbol_loss, sym.begin, sym.end, h0, h1,
                            quoted(rt, sym.begin, sym.end) + " (" + sym.entry->literal + ") has no counterpart"});
            // Words heard in place of the symbol stay available to the split and
            // merge checks but are left out of the sound comparison.
            for (std::size_t i = sym.begin; i < sym.end; ++i) ref_used[i] = true;
            for (std::size_t q = 0; q < steps.size(); ++q) {
                const auto& st = trace[steps[q]];
                if (st.ref_index < static_cast<std::ptrdiff_t>(sym.begin) || st.ref_index >= static_cast<std::ptrdiff_t>(sym.end) ||
                    st.kind != OpKind::sub) {
                    continue;
                }
                symbol_noise[static_cast<std::size_t>(st.hyp_index)] = true;
                for (std::size_t n = q + 1; n < steps.size() && trace[steps[n]].kind == OpKind::ins; ++n) {
                    symbol_noise[static_cast<std::size_t>(trace[steps[n]].hyp_index)] = true;
                }
            }
        }

        // Identifier split: one code unit heard as several words.
        for (std::size_t u = u0; u <= u1; ++u) {
            const auto& unit = units[u];
            if (!unit.code) continue;
            bool free = true;
            std::string spoken_key;
            for (std::size_t i = unit.begin; i < unit.end; ++i) {
                free = free && !ref_used[i] && !ref_matched[i];
                spoken_key += text::fold_key(rt[i]);
            }
            if (!free) continue;
            const auto key = unit.identifier.empty() ? spoken_key : text::fold_key(unit.identifier);
            bool found = false;
            for (std::size_t j = h0; j < h1 && !found; ++j) {
                std::string acc;
                for (std::size_t e = j; e < h1 && !hyp_used[e]; ++e) {
                    acc += text::fold_key(ht[e]);
                    if (acc.size() > key.size()) break;
                    if (e > j && (acc == key || acc == spoken_key) && unit.end - unit.begin < e - j + 1) {
                        tags.push_back({TagKind::identifier_split, unit.begin, unit.end, j, e + 1,
                                        quoted(rt, unit.begin, unit.end) + " heard as " + quoted(ht, j, e + 1)});
                        for (std::size_t i = unit.begin; i < unit.end; ++i) ref_used[i] = true;
                        for (std::size_t k = j; k <= e; ++k) hyp_used[k] = true;
                        found = true;
                        break;
                    }
                }
            }
        }

        // Same, for one word inside a longer code unit ("config" in "config dot timeout").
        for (std::size_t i = r0; i < r1; ++i) {
            const auto& unit = units[unit_of[i]];
            if (!unit.code || ref_used[i] || ref_matched[i]) continue;
            const auto key = text::fold_key(rt[i]);
            if (key.empty()) continue;
            bool found = false;
            for (std::size_t j = h0; j < h1 && !found; ++j) {
                std::string acc;
                for (std::size_t e = j; e < h1 && !hyp_used[e] && !hyp_matched[e]; ++e) {
                    acc += text::fold_key(ht[e]);
                    if (acc.size() > key.size()) break;
                    if (e > j && acc == key) {
                        tags.push_back({TagKind::identifier_split, i, i + 1, j, e + 1,
                                        quoted(rt, i, i + 1) + " heard as " + quoted(ht, j, e + 1)});
                        ref_used[i] = true;
                        for (std::size_t k = j; k <= e; ++k) hyp_used[k] = true;
                        found = true;
                        break;
                    }
                }
            }
        }

        // Identifier merge: several reference words heard as one token.
        for (std::size_t j = h0; j < h1; ++j) {
            if (hyp_used[j] || hyp_matched[j]) continue;
            const auto key = text::fold_key(ht[j]);
            if (key.empty()) continue;
            bool found = false;
            for (std::size_t b = r0; b < r1 && !found; ++b) {
                if (ref_used[b]) continue;
                std::string acc;
                std::size_t count = 0;
                for (std::size_t e = b; e < r1; ++e) {
                    if (ref_used[e]) continue;
                    acc += text::fold_key(rt[e]);
                    ++count;
                    if (acc.size() > key.size()) break;
                    const auto& unit = units[unit_of[b]];
                    const bool id_match = !unit.identifier.empty() && unit.begin == b && unit.end == e + 1 &&
                                          text::fold_key(unit.identifier) == key;
                    if (count >= 2 && (acc == key || id_match)) {
                        tags.push_back({TagKind::identifier_merge, b, e + 1, j, j + 1,
                                        quoted(rt, b, e + 1) + " heard as " + quoted(ht, j, j + 1)});
                        for (std::size_t i = b; i <= e; ++i) ref_used[i] = true;
                        hyp_used[j] = true;
                        found = true;
                        break;
                    }
                }
                // A hint whose written form matches even though a symbol word was dropped.
                const auto& unit = units[unit_of[b]];
                if (!found && !unit.identifier.empty() && unit.begin == b && unit.end - unit.begin >= 2 &&
                    text::fold_key(unit.identifier) == key) {
                    tags.push_back({TagKind::identifier_merge, unit.begin, unit.end, j, j + 1,
                                    quoted(rt, unit.begin, unit.end) + " heard as " + quoted(ht, j, j + 1)});
                    for (std::size_t i = unit.begin; i < unit.end; ++i) ref_used[i] = true;
                    hyp_used[j] = true;
                    found = true;
                }
            }
        }

        // Keyword ambiguity: a reserved word replaced by an ordinary function word.
        for (auto p : steps) {
            const auto& s = trace[p];
            if (s.kind != OpKind::sub) continue;
            const auto ri = static_cast<std::size_t>(s.ref_index);
            const auto hi = static_cast<std::size_t>(s.hyp_index);
            if (ref_used[ri] || hyp_used[hi]) continue;
            if (keywords.contains(rk[ri]) && function_words.contains(hk[hi])) {
                tags.push_back({TagKind::keyword_ambiguity, ri, ri + 1, hi, hi + 1,
                                "keyword '" + rt[ri] + "' heard as '" + ht[hi] + "'"});
                ref_used[ri] = true;
                hyp_used[hi] = true;
            }
        }

        // What is left is compared by sound.
        std::vector<std::size_t> ref_rest, hyp_rest;
        bool has_code = false;
        for (std::size_t i = r0; i < r1; ++i) {
            const auto& unit = units[unit_of[i]];
            const bool multi = unit.end - unit.begin > 1;
            if (ref_used[i] || (ref_matched[i] && !multi)) continue;
            ref_rest.push_back(i);
            has_code = has_code || unit.code;
        }
        for (auto p : steps) {
            const auto& s = trace[p];
            if (s.hyp_index < 0) continue;
            const auto j = static_cast<std::size_t>(s.hyp_index);
            if (hyp_used[j] || symbol_noise[j]) continue;
            if (s.kind == OpKind::match) {
                const auto& unit = units[unit_of[static_cast<std::size_t>(s.ref_index)]];
                if (unit.end - unit.begin <= 1 || ref_used[static_cast<std::size_t>(s.ref_index)]) continue;
            }
            hyp_rest.push_back(j);
        }
        std::sort(hyp_rest.begin(), hyp_rest.end());
        const bool residual = std::any_of(ref_rest.begin(), ref_rest.end(), [&](auto i) { return !ref_matched[i]; }) ||
                              std::any_of(hyp_rest.begin(), hyp_rest.end(), [&](auto j) { return !hyp_matched[j]; });
        if (residual && !ref_rest.empty() && !hyp_rest.empty() && adapter && table && adapter->supports(lang)) {
            std::vector<std::string> rw, hw;
            for (auto i : ref_rest) rw.push_back(rt[i]);
            for (auto j : hyp_rest) hw.push_back(ht[j]);
            auto lower_all = [](std::vector<std::string> v) {
                for (auto& w : v) w = text::to_lower(w);
                return v;
            };
            // Leftovers that read the same are an alignment artifact, not a mishearing.
            if (lower_all(rw) == lower_all(hw)) {
                u0 = u1 + 1;
                continue;
            }
            const double w = metrics::wfed(collapse_letters(rw), collapse_letters(hw), lang, *adapter, *table).value;
            const std::size_t rb = ref_rest.front(), re = ref_rest.back() + 1;
            const std::size_t hb = hyp_rest.front(), he = hyp_rest.back() + 1;
            if (w <= drift_threshold) {
                tags.push_back({TagKind::phonetic_drift, rb, re, hb, he,
                                quoted(rt, rb, re) + " heard as " + quoted(ht, hb, he) + " (wfed " + fixed2(w) + ")"});
            } else if (w > recall_threshold && has_code) {
                tags.push_back({TagKind::identifier_recall_failure, rb, re, hb, he,
                                quoted(rt, rb, re) + " replaced by " + quoted(ht, hb, he) + " (wfed " + fixed2(w) +
                                    ")"});
            }
        }
        u0 = u1 + 1;
    }
    return tags;
}

TagDistribution tag_distribution(std::span<const std::vector<TaxonomyTag>> per_record) {
    TagDistribution d;
    d.n_records = per_record.size();
    std::map<TagKind, std::size_t> records_with;
    std::size_t tagged = 0;
    for (auto k : kAllTagKinds) d.kinds[k] = {};
    for (const auto& tags : per_record) {
        if (!tags.empty()) ++tagged;
        std::set<TagKind> kinds;
        for (const auto& t : tags) {
            ++d.kinds[t.kind].count;
            ++d.total_tags;
            kinds.insert(t.kind);
        }
        for (auto k : kinds) ++records_with[k];
    }
    for (auto& [kind, stats] : d.kinds) {
        stats.tag_share = d.total_tags ? static_cast<double>(stats.count) / static_cast<double>(d.total_tags) : 0.0;
        stats.record_fraction =
            d.n_records ? static_cast<double>(records_with[kind]) / static_cast<double>(d.n_records) : 0.0;
    }
    d.tagged_fraction = d.n_records ? static_cast<double>(tagged) / static_cast<double>(d.n_records) : 0.0;
    return d;
}

nlohmann::ordered_json to_json(const TagDistribution& d) {
    nlohmann::ordered_json j;
    j["n_records"] = d.n_records;
    j["total_tags"] = d.total_tags;
    j["tagged_fraction"] = d.tagged_fraction;
    auto& kinds = j["kinds"] = nlohmann::ordered_json::object();
    for (auto k : kAllTagKinds) {
        const auto& s = d.kinds.at(k);
        kinds[std::string(to_string(k))] = {
            {"count", s.count}, {"tag_share", s.tag_share}, {"record_fraction", s.record_fraction}};
    }
    return j;
}

}  // namespace codevoice::taxonomy
