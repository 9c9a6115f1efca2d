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

#include "codevoice/retrieval/evaluation.hpp"

#include <algorithm>
#include <map>

#include "codevoice/util/embedded_data.hpp"
#include "codevoice/util/error.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::retrieval {

namespace {

std::optional<DeviationClass> parse_letter(std::string_view reply) {
    const auto t = text::trim(reply);
    if (t == "A") return DeviationClass::A_high;
    if (t == "B") return DeviationClass::B_moderate;
    if (t == "C") return DeviationClass::C_none;
    return std::nullopt;
}

std::map<std::string, std::size_t> word_bag(std::string_view s) {
    std::map<std::string, std::size_t> bag;
    for (const auto& token : text::split_whitespace(text::to_lower(text::nfc(s)))) {
        const auto cps = text::decode(token);
        std::size_t b = 0, e = cps.size();
        while (b < e && text::is_punctuation(cps[b])) ++b;
        while (e > b && text::is_punctuation(cps[e - 1])) --e;
        if (b < e) ++bag[text::encode(std::u32string_view(cps).substr(b, e - b))];
    }
    return bag;
}

}  // namespace

std::string_view to_string(QueryStage s) {
    switch (s) {
        case QueryStage::original: return "original";
        case QueryStage::asr: return "asr";
        case QueryStage::refined: return "refined";
    }
    return "original";
}

QueryStage parse_query_stage(std::string_view s) {
    if (s == "original") return QueryStage::original;
    if (s == "asr") return QueryStage::asr;
    if (s == "refined") return QueryStage::refined;
    throw ArgumentError("unknown query stage '" + std::string(s) + "' (expected original, asr or refined)");
}

double recall_at_k(std::span<const std::optional<std::size_t>> ranks, std::size_t k) {
    if (k == 0) throw ArgumentError("k must be at least 1");
    if (ranks.empty()) return 0.0;
    const auto hits = std::count_if(ranks.begin(), ranks.end(), [k](const auto& r) { return r && *r <= k; });
    return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

double mrr(std::span<const std::optional<std::size_t>> ranks) {
    if (ranks.empty()) throw ArgumentError("no queries");
    double sum = 0.0;
    for (const auto& r : ranks) {
        if (r) sum += 1.0 / static_cast<double>(*r);
    }
    return sum / static_cast<double>(ranks.size());
}

std::vector<core::RetrievalSummary> RetrievalRun::summaries() const {
    std::vector<core::RetrievalSummary> out;
    for (const auto k : ks) {
        out.push_back({std::string(to_string(stage)), k, recall.at(k), mrr, per_query.size(), pool_size});
    }
    return out;
}

nlohmann::ordered_json to_json(const RetrievalRun& run) {
    nlohmann::ordered_json j;
    j["stage"] = to_string(run.stage);
    j["pool_size"] = run.pool_size;
    j["n_queries"] = run.per_query.size();
    j["mrr"] = run.mrr;
    auto& recall = j["recall"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : run.recall) recall[std::to_string(k)] = v;
    auto& per_query = j["per_query"] = nlohmann::ordered_json::object();
    for (const auto& q : run.per_query) {
        per_query[q.id] = {{"rank_of_gold", q.rank_of_gold ? nlohmann::ordered_json(*q.rank_of_gold) : nullptr},
                           {"top_ids", q.top_ids}};
    }
    return j;
}

RetrievalRun evaluate_retrieval(QueryStage stage, std::span<const RetrievalQuery> queries,
                                std::span<const std::string> doc_ids, std::span<const Vector> doc_vectors,
                                std::span<const Vector> query_vectors, std::vector<std::size_t> ks,
                                std::size_t top_n) {
    if (doc_ids.size() != doc_vectors.size()) throw ArgumentError("document ids and vectors differ in length");
    if (queries.size() != query_vectors.size()) throw ArgumentError("queries and query vectors differ in length");
    if (ks.empty()) throw ArgumentError("no k values given");
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

    RetrievalRun run;
    run.stage = stage;
    run.ks = ks;
    run.pool_size = doc_vectors.size();
    std::vector<std::optional<std::size_t>> ranks;
    for (std::size_t q = 0; q < queries.size(); ++q) {
        if (queries[q].gold >= doc_vectors.size()) throw ArgumentError("gold index out of range for " + queries[q].id);
        const auto order = rank(query_vectors[q], doc_vectors);
        QueryResult r;
        r.id = queries[q].id;
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            if (order[pos] == queries[q].gold) r.rank_of_gold = pos + 1;
            if (pos < top_n) r.top_ids.push_back(doc_ids[order[pos]]);
        }
        ranks.push_back(r.rank_of_gold);
        run.per_query.push_back(std::move(r));
    }
    for (const auto k : ks) run.recall[k] = recall_at_k(ranks, k);
    run.mrr = mrr(ranks);
    return run;
}

std::string_view to_string(DeviationClass c) {
    switch (c) {
        case DeviationClass::A_high: return "A";
        case DeviationClass::B_moderate: return "B";
        case DeviationClass::C_none: return "C";
    }
    return "A";
}

std::string_view describe(DeviationClass c) {
    switch (c) {
        case DeviationClass::A_high: return "high";
        case DeviationClass::B_moderate: return "moderate";
        case DeviationClass::C_none: return "none";
    }
    return "high";
}

double token_overlap(std::string_view a, std::string_view b) {
    const auto ba = word_bag(a);
    const auto bb = word_bag(b);
    std::size_t na = 0, nb = 0, common = 0;
    for (const auto& [w, n] : ba) na += n;
    for (const auto& [w, n] : bb) nb += n;
    if (na + nb == 0) return 1.0;
    for (const auto& [w, n] : ba) {
        if (auto it = bb.find(w); it != bb.end()) common += std::min(n, it->second);
    }
    return 2.0 * static_cast<double>(common) / static_cast<double>(na + nb);
}

DeviationClass judge_deviation(std::string_view original_answer, std::string_view candidate_answer,
                               refine::LLMBackend* backend, const JudgeThresholds& thresholds) {
    if (!backend) {
        const double s = token_overlap(original_answer, candidate_answer);
        if (s >= thresholds.none) return DeviationClass::C_none;
        if (s >= thresholds.moderate) return DeviationClass::B_moderate;
        return DeviationClass::A_high;
    }
    std::vector<refine::ChatMessage> messages = {
        {"system", text::trim(data::embedded("prompts/deviation_judge.txt"))},
        {"user", "First answer:\n" + std::string(original_answer) + "\n\nSecond answer:\n" +
                     std::string(candidate_answer)}};
    auto reply = backend->complete(messages).text;
    if (auto c = parse_letter(reply)) return *c;
    messages.push_back({"assistant", reply});
    messages.push_back({"user", "Reply with exactly one letter: A, B or C."});
    const auto second = backend->complete(messages).text;
    if (auto c = parse_letter(second)) return *c;
    throw BackendError("deviation judge gave no single-letter verdict",
                       "first reply: " + reply + "\nsecond reply: " + second);
}

}  // namespace codevoice::retrieval
