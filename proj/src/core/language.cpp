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
#include "codevoice/core/language.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

#include "codevoice/util/error.hpp"

namespace codevoice::core {

namespace {

struct Registry {
    std::shared_mutex mutex;
    std::map<std::string, std::string, std::less<>> names{
        {"en", "English"}, {"hi", "Hindi"}, {"gu", "Gujarati"}, {"ta", "Tamil"}, {"bn", "Bengali"}};
};

Registry& registry() {
    static Registry r;
    return r;
}

bool well_formed(std::string_view code) {
    if (code.empty()) return false;
    for (char c : code) {
        if (!((c >= 'a' && c <= 'z') || c == '-' || (c >= '0' && c <= '9'))) return false;
    }
    return code.front() >= 'a' && code.front() <= 'z';
}

}  // namespace

LanguageTag::LanguageTag() : code_("en") {}

LanguageTag LanguageTag::parse(std::string_view code) {
    if (!well_formed(code)) throw ValidationError("malformed language code '" + std::string(code) + "'");
    if (!is_registered(code)) throw ValidationError("unregistered language '" + std::string(code) + "'");
    return LanguageTag(std::string(code));
}

void LanguageTag::register_language(std::string_view code, std::string_view display_name) {
    if (!well_formed(code)) throw ValidationError("malformed language code '" + std::string(code) + "'");
    auto& r = registry();
    std::unique_lock lock(r.mutex);
    r.names.emplace(std::string(code), std::string(display_name));
}

bool LanguageTag::is_registered(std::string_view code) {
    auto& r = registry();
    std::shared_lock lock(r.mutex);
    return r.names.find(code) != r.names.end();
}

std::vector<LanguageTag> LanguageTag::registered() {
    auto& r = registry();
    std::shared_lock lock(r.mutex);
    std::vector<LanguageTag> out;
    for (const auto& [code, name] : r.names) out.push_back(LanguageTag(code));
    return out;
}

std::string LanguageTag::display_name() const {
    auto& r = registry();
    std::shared_lock lock(r.mutex);
    auto it = r.names.find(code_);
    return it == r.names.end() ? code_ : it->second;
}

}  // namespace codevoice::core
