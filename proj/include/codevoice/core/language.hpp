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

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace codevoice::core {

/// A registered natural-language code (en, hi, gu, ta, bn, plus anything
/// added through register_language). Always lowercase and non-empty.
class LanguageTag {
public:
    /// English.
    LanguageTag();

    /// Throws ValidationError for malformed or unregistered codes.
    static LanguageTag parse(std::string_view code);

    /// Adds a language to the process-wide registry. Idempotent.
    static void register_language(std::string_view code, std::string_view display_name);
    static bool is_registered(std::string_view code);
    static std::vector<LanguageTag> registered();

    const std::string& code() const { return code_; }
    /// English name, e.g. "Hindi".
    std::string display_name() const;
    bool is_english() const { return code_ == "en"; }

    friend bool operator==(const LanguageTag&, const LanguageTag&) = default;
    friend auto operator<=>(const LanguageTag&, const LanguageTag&) = default;

private:
    explicit LanguageTag(std::string code) : code_(std::move(code)) {}
    std::string code_;
};

}  // namespace codevoice::core
