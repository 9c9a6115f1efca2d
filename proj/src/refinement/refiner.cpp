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

#include "codevoice/refinement/refiner.hpp"

#include <thread>

#include "codevoice/util/embedded_data.hpp"
#include "codevoice/util/error.hpp"
#include "codevoice/util/text.hpp"
#include "codevoice/verbalizer/verbalizer.hpp"

namespace codevoice::refine {

namespace {

bool is_label(std::string_view s) {
    static const char* const kLabels[] = {"corrected transcript", "corrected", "correction", "refined transcript",
                                          "refined", "fixed transcript", "transcript", "output", "answer"};
    const auto lower = text::to_lower(text::trim(s));
    for (const char* l : kLabels) {
        if (lower == l) return true;
    }
    return false;
}

std::string strip_quotes(std::string s) {
    static const std::pair<std::string_view, std::string_view> kPairs[] = {
        {"\"", "\""}, {"'", "'"}, {"`", "`"}, {"“", "”"}, {"‘", "’"}};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [open, close] : kPairs) {
            if (s.size() >= open.size() + close.size() && s.starts_with(open) && s.ends_with(close)) {
                s = text::trim(std::string_view(s).substr(open.size(), s.size() - open.size() - close.size()));
                changed = true;
            }
        }
    }
    return s;
}

}  // namespace

std::string default_refinement_instructions() {
    return text::trim(data::embedded("prompts/refinement_system.txt"));
}

std::string RefinementPrompt::system_message() const {
    std::string out = system_instructions;
    if (target_lang.is_english()) {
        out += "\nThe transcript is in English.";
    } else {
        const auto name = target_lang.display_name();
        out += "\nThe transcript is in " + name + " mixed with English code terms. Keep the " + name +
               " wording, word order and script exactly as spoken; only correct the programming terms.";
    }
    if (context) out += "\n" + *context;
    return out;
}

std::vector<ChatMessage> RefinementPrompt::messages() const {
    return {{"system", system_message()}, {"user", transcript}};
}

RefinementPrompt build_refinement_prompt(std::string_view transcript, const core::LanguageTag& lang,
                                         std::span<const std::string> hints, std::optional<std::string> code,
                                         std::string instructions) {
    if (text::trim(transcript).empty()) throw ArgumentError("cannot build a refinement prompt for an empty transcript");
    RefinementPrompt p;
    p.system_instructions = std::move(instructions);
    p.transcript = std::string(transcript);
    p.target_lang = lang;
    std::string context;
    if (!hints.empty()) {
        context = "Identifiers that may appear in the question: ";
        for (std::size_t i = 0; i < hints.size(); ++i) context += (i ? ", " : "") + hints[i];
    }
    if (code && !text::trim(*code).empty()) {
        if (!context.empty()) context += "\n";
        context += "Code the question refers to:\n" + *code;
    }
    if (!context.empty()) p.context = std::move(context);
    return p;
}

std::string strip_wrapper(std::string_view completion) {
    std::string s = text::trim(completion);
    if (s.starts_with("```")) {
        const auto nl = s.find('\n');
        s = nl == std::string::npos ? std::string() : s.substr(nl + 1);
        if (const auto fence = s.rfind("```"); fence != std::string::npos) s.erase(fence);
        s = text::trim(s);
    }
    if (const auto colon = s.find(':'); colon != std::string::npos && is_label(std::string_view(s).substr(0, colon))) {
        s = text::trim(std::string_view(s).substr(colon + 1));
    }
    return text::normalize_spaces(strip_quotes(s));
}

RefineOutcome refine_remote(const RefinementPrompt& prompt, LLMBackend& backend, const RetryPolicy& retry) {
    const auto start = std::chrono::steady_clock::now();
    const auto messages = prompt.messages();
    auto backoff = retry.initial_backoff;
    for (std::size_t attempt = 0;; ++attempt) {
        try {
            const auto c = backend.complete(messages);
            RefineOutcome out;
            out.text = strip_wrapper(c.text);
            out.latency = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
            out.prompt_tokens = c.prompt_tokens;
            out.completion_tokens = c.completion_tokens;
            out.attempts = attempt + 1;
            return out;
        } catch (const BackendError& e) {
            if (attempt >= retry.max_retries) {
                throw BackendError("refinement failed after " + std::to_string(attempt + 1) + " attempts: " + e.what(),
                                   e.transcript());
            }
        }
        std::this_thread::sleep_for(backoff);
        backoff *= 2;
    }
}

std::string refine_offline(std::string_view transcript, const ConfusionLexicon& confusions,
                           const verbal::SymbolLexicon& symbols, std::span<const std::string> hints) {
    const auto replaced = confusions.apply(transcript);
    return text::normalize_spaces(verbal::deverbalize(replaced, symbols, hints));
}

}  // namespace codevoice::refine
