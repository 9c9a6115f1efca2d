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

#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "codevoice/util/http.hpp"

namespace codevoice::refine {

struct ChatMessage {
    std::string role;
    std::string content;
};

struct Completion {
    std::string text;
    std::size_t prompt_tokens = 0;
    std::size_t completion_tokens = 0;
};

class LLMBackend {
public:
    virtual ~LLMBackend() = default;
    virtual std::string id() const = 0;
    /// Throws BackendError on failure.
    virtual Completion complete(const std::vector<ChatMessage>& messages) = 0;
};

/// Chat-completion over HTTP: POST {model, messages} and read
/// choices[0].message.content (plus usage counts when present).
class RemoteChatBackend : public LLMBackend {
public:
    RemoteChatBackend(http::Endpoint endpoint, std::string model);

    std::string id() const override;
    Completion complete(const std::vector<ChatMessage>& messages) override;

private:
    http::Endpoint endpoint_;
    std::string model_;
};

/// Deterministic offline backend. The last user message is the input:
/// echo returns it, canned looks it up (falling back to echo) and rule
/// passes it through a function. fail_next() makes the next calls throw,
/// for exercising retry handling.
class MockLLMBackend : public LLMBackend {
public:
    enum class Mode { echo, canned, rule };

    MockLLMBackend();
    explicit MockLLMBackend(std::map<std::string, std::string> canned);
    explicit MockLLMBackend(std::function<std::string(const std::string&)> rule);

    std::string id() const override;
    Completion complete(const std::vector<ChatMessage>& messages) override;

    void fail_next(std::size_t n) { failures_left_ = n; }
    std::size_t calls() const { return calls_; }
    Mode mode() const { return mode_; }

private:
    Mode mode_;
    std::map<std::string, std::string> canned_;
    std::function<std::string(const std::string&)> rule_;
    std::atomic<std::size_t> calls_{0};
    std::atomic<std::size_t> failures_left_{0};
};

/// Rough whitespace token count used when a backend reports no usage.
std::size_t approx_tokens(const std::string& text);

}  // namespace codevoice::refine
