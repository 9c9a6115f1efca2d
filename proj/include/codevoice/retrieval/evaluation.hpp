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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "codevoice/core/metric_report.hpp"
#include "codevoice/refinement/llm_backend.hpp"
#include "codevoice/retrieval/embedding.hpp"

namespace codevoice::retrieval {

/// Which text of a record is used as the query.
enum class QueryStage { original, asr, refined };

std::string_view to_string(QueryStage s);
QueryStage parse_query_stage(std::string_view s);

/// Fraction of queries whose gold rank (1-based; nullopt = not ranked) is
/// at most k. Throws ArgumentError when k is 0. An empty list gives 0.
double recall_at_k(std::span<const std::optional<std::size_t>> ranks, std::size_t k);

/// Mean reciprocal gold rank, unranked queries contributing 0. Throws
/// ArgumentError("no queries") on an empty list.
double mrr(std::span<const std::optional<std::size_t>> ranks);

struct QueryResult {
    std::string id;
    std::optional<std::size_t> rank_of_gold;
    std::vector<std::string> top_ids;
};

struct RetrievalRun {
    QueryStage stage = QueryStage::original;
    std::vector<std::size_t> ks;
    std::size_t pool_size = 0;
    std::vector<QueryResult> per_query;
    std::map<std::size_t, double> recall;
    double mrr = 0.0;

    std::vector<core::RetrievalSummary> summaries() const;
};

nlohmann::ordered_json to_json(const RetrievalRun& run);

struct RetrievalQuery {
    std::string id;
    std::string text;
    std::size_t gold;  ///< index into the document list
};

/// Ranks the whole pool for every query. top_ids keeps the first `top_n`
/// document ids.
RetrievalRun evaluate_retrieval(QueryStage stage, std::span<const RetrievalQuery> queries,
                                std::span<const std::string> doc_ids, std::span<const Vector> doc_vectors,
                                std::span<const Vector> query_vectors, std::vector<std::size_t> ks,
                                std::size_t top_n = 10);

enum class DeviationClass { A_high, B_moderate, C_none };

std::string_view to_string(DeviationClass c);  // "A" / "B" / "C"
std::string_view describe(DeviationClass c);   // "high" / "moderate" / "none"

/// Dice coefficient over lowercase word multisets; 1 when both are empty.
double token_overlap(std::string_view a, std::string_view b);

struct JudgeThresholds {
    double none = 0.9;      ///< overlap >= none -> C
    double moderate = 0.6;  ///< overlap >= moderate -> B, else A
};

/// Without a backend the overlap proxy decides. With one, the judge prompt
/// is sent and the reply must be a single letter A, B or C; a malformed
/// reply is re-asked once, then BackendError.
DeviationClass judge_deviation(std::string_view original_answer, std::string_view candidate_answer,
                               refine::LLMBackend* backend = nullptr, const JudgeThresholds& thresholds = {});

}  // namespace codevoice::retrieval
