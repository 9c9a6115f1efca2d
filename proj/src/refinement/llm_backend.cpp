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

#include "codevoice/refinement/llm_backend.hpp"

#include "codevoice/util/error.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::refine {

namespace {

const std::string& last_user_message(const std::vector<ChatMessage>& messages) {
    for (auto it = messages.rbegin(); it != messages.rend(); ++it) {
        if (it->role == "user") return it->content;
    }
    throw ArgumentError("chat request has no user message");
}

}  // namespace

std::size_t approx_tokens(const std::string& s) { return text::split_whitespace(s).size(); }

RemoteChatBackend::RemoteChatBackend(http::Endpoint endpoint, std::string model)
    : endpoint_(std::move(endpoint)), model_(std::move(model)) {
    if (endpoint_.url.empty()) throw ConfigError("LLM endpoint URL is empty");
}

std::string RemoteChatBackend::id() const { return "remote-chat:" + model_; }

Completion RemoteChatBackend::complete(const std::vector<ChatMessage>& messages) {
    nlohmann::json body;
    body["model"] = model_;
    body["messages"] = nlohmann::json::array();
    for (const auto& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    const auto reply = http::post_json(endpoint_, body);
    Completion c;
    try {
        c.text = reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw BackendError(std::string("chat reply has no choices[0].message.content: ") + e.what(), reply.dump());
    }
    if (reply.contains("usage") && reply["usage"].is_object()) {
        c.prompt_tokens = reply["usage"].value("prompt_tokens", std::size_t{0});
        c.completion_tokens = reply["usage"].value("completion_tokens", std::size_t{0});
    }
    return c;
}

MockLLMBackend::MockLLMBackend() : mode_(Mode::echo) {}

MockLLMBackend::MockLLMBackend(std::map<std::string, std::string> canned)
    : mode_(Mode::canned), canned_(std::move(canned)) {}

MockLLMBackend::MockLLMBackend(std::function<std::string(const std::string&)> rule)
    : mode_(Mode::rule), rule_(std::move(rule)) {}

std::string MockLLMBackend::id() const {
    switch (mode_) {
        case Mode::echo: return "mock-llm:echo";
        case Mode::canned: return "mock-llm:canned";
        case Mode::rule: return "mock-llm:rule";
    }
    return "mock-llm";
}

Completion MockLLMBackend::complete(const std::vector<ChatMessage>& messages) {
    ++calls_;
    for (auto left = failures_left_.load(); left > 0;) {
        if (failures_left_.compare_exchange_weak(left, left - 1)) {
            throw BackendError("mock LLM failure (injected)", "mock");
        }
    }
    const auto& input = last_user_message(messages);
    Completion c;
    switch (mode_) {
        case Mode::echo: c.text = input; break;
        case Mode::canned: {
            auto it = canned_.find(input);
            c.text = it == canned_.end() ? input : it->second;
            break;
        }
        case Mode::rule: c.text = rule_(input); break;
    }
    std::size_t prompt = 0;
    for (const auto& m : messages) prompt += approx_tokens(m.content);
    c.prompt_tokens = prompt;
    c.completion_tokens = approx_tokens(c.text);
    return c;
}

}  // namespace codevoice::refine
