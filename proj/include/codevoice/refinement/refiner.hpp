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

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codevoice/core/language.hpp"
#include "codevoice/refinement/confusion_lexicon.hpp"
#include "codevoice/refinement/llm_backend.hpp"
#include "codevoice/verbalizer/symbol_lexicon.hpp"

namespace codevoice::refine {

/// The bundled correction instructions.
std::string default_refinement_instructions();

struct RefinementPrompt {
    std::string system_instructions;
    std::string transcript;
    /// Identifier list and/or code snippet the query is about.
    std::optional<std::string> context;
    core::LanguageTag target_lang;

    /// Instructions, language guidance and context in one system message.
    std::string system_message() const;
    /// [system, user]; the user message is the transcript alone.
    std::vector<ChatMessage> messages() const;
};

/// Throws ArgumentError for an empty transcript. Hints are listed verbatim.
RefinementPrompt build_refinement_prompt(std::string_view transcript, const core::LanguageTag& lang,
                                         std::span<const std::string> hints = {},
                                         std::optional<std::string> code = std::nullopt,
                                         std::string instructions = default_refinement_instructions());

struct RetryPolicy {
    std::size_t max_retries = 2;
    std::chrono::milliseconds initial_backoff{1000};
};

struct RefineOutcome {
    std::string text;
    std::chrono::milliseconds latency{0};
    std::size_t prompt_tokens = 0;
    std::size_t completion_tokens = 0;
    std::size_t attempts = 0;
};

/// Removes code fences, a leading "Corrected:"-style label and enclosing
/// quotes from a completion, and folds it onto one line.
std::string strip_wrapper(std::string_view completion);

/// Sends the prompt, retrying with doubling backoff. Throws BackendError
/// (carrying the last failure) once retries are exhausted.
RefineOutcome refine_remote(const RefinementPrompt& prompt, LLMBackend& backend, const RetryPolicy& retry = {});

/// Rule-based refinement: confusion phrases are replaced, spoken symbols and
/// identifiers are rejoined (hints first), and spacing is normalized.
std::string refine_offline(std::string_view transcript, const ConfusionLexicon& confusions,
                           const verbal::SymbolLexicon& symbols, std::span<const std::string> hints = {});

}  // namespace codevoice::refine
