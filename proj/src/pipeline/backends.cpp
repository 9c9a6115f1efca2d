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

#include "codevoice/pipeline/backends.hpp"

#include <filesystem>

#include "codevoice/refinement/refiner.hpp"
#include "codevoice/util/embedded_data.hpp"
#include "codevoice/util/error.hpp"
#include "codevoice/util/hash.hpp"
#include "codevoice/util/parallel.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::pipeline {

namespace fs = std::filesystem;

std::string translation_instructions(const core::LanguageTag& target) {
    std::string out(data::embedded("prompts/translation_system.txt"));
    const std::string name = target.display_name();
    const std::string placeholder = "{language}";
    for (auto pos = out.find(placeholder); pos != std::string::npos; pos = out.find(placeholder, pos + name.size())) {
        out.replace(pos, placeholder.size(), name);
    }
    return out;
}

TranslationResult translate_query(std::string_view text, const core::LanguageTag& target, refine::LLMBackend& backend,
                                  const verbal::Verbalizer& verbalizer) {
    const std::vector<refine::ChatMessage> messages = {{"system", translation_instructions(target)},
                                                       {"user", std::string(text)}};
    TranslationResult result;
    result.text = refine::strip_wrapper(backend.complete(messages).text);
    for (const auto& token : verbalizer.code_tokens(text)) {
        if (result.text.find(token) == std::string::npos) result.missing.push_back(token);
    }
    return result;
}

std::string MockTTSBackend::synthesize(const std::string& text, const core::LanguageTag& lang,
                                       const std::string& voice) {
    {
        std::lock_guard lock(mutex_);
        requests_.push_back({text, lang.code(), voice});
    }
    if (!fail_on_.empty() && text.find(fail_on_) != std::string::npos) {
        throw BackendError("mock tts refused the request", text);
    }
    return "codevoice mock audio\nlanguage: " + lang.code() + "\nvoice: " + voice + "\ntext: " + text + "\n";
}

std::vector<MockTTSBackend::Request> MockTTSBackend::requests() const {
    std::lock_guard lock(mutex_);
    return requests_;
}

std::string RemoteTTSBackend::synthesize(const std::string& text, const core::LanguageTag& lang,
                                         const std::string& voice) {
    return http::post_json_for_bytes(endpoint_, {{"text", text}, {"voice", voice}, {"language", lang.code()}});
}

std::string audio_file_stem(std::string_view id) {
    std::string stem;
    bool changed = false;
    for (char c : id) {
        const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                          c == '_' || c == '.';
        stem += safe ? c : '_';
        changed |= !safe;
    }
    if (stem.empty() || stem.front() == '.') changed = true;
    if (changed) stem += "-" + hash::sha256_hex(id).substr(0, 8);
    return stem;
}

core::Corpus synthesize_audio(const core::Corpus& corpus, TTSBackend& backend, const fs::path& audio_dir,
                              const std::string& voice, std::size_t parallelism) {
    std::vector<core::QueryRecord> records(corpus.begin(), corpus.end());
    fs::create_directories(audio_dir);
    parallel_for(records.size(), parallelism, [&](std::size_t i) {
        auto& r = records[i];
        if (r.audio_path) return;
        if (!r.verbalized_text) {
            r.add_flag("tts_failed");
            return;
        }
        try {
            const auto audio = backend.synthesize(*r.verbalized_text, r.nat_lang, voice);
            const auto path = audio_dir / (audio_file_stem(r.id) + "." + backend.extension());
            data::write_file(path, audio);
            r.audio_path = path.string();
        } catch (const BackendError&) {
            r.add_flag("tts_failed");
        }
    });
    return core::Corpus(std::move(records), corpus.source_path());
}

std::string MockASRBackend::transcribe(const core::QueryRecord& r) {
    if (!r.verbalized_text) throw BackendError("mock asr needs verbalized_text", r.id);
    auto rng = record_rng(corrupter_->spec().seed, r.id);
    return corrupter_->corrupt(*r.verbalized_text, identifier_hints(r, *corrupter_->verbalizer()), rng);
}

std::string RemoteASRBackend::transcribe(const core::QueryRecord& r) {
    if (!r.audio_path || !fs::exists(*r.audio_path)) throw BackendError("missing audio", r.id);
    const auto audio = data::read_file(*r.audio_path);
    const auto filename = fs::path(*r.audio_path).filename().string();
    const auto reply = http::post_multipart(endpoint_, {{"language", r.nat_lang.code()}}, {{"file", filename, audio}});
    if (!reply.is_object() || !reply.contains("text") || !reply["text"].is_string()) {
        throw BackendError("asr reply has no text field", reply.dump());
    }
    return reply["text"].get<std::string>();
}

core::Corpus transcribe_audio(const core::Corpus& corpus, ASRBackend& backend, std::size_t parallelism) {
    std::vector<core::QueryRecord> records(corpus.begin(), corpus.end());
    parallel_for(records.size(), parallelism, [&](std::size_t i) {
        auto& r = records[i];
        if (r.transcript_raw) return;
        try {
            r.transcript_raw = backend.transcribe(r);
        } catch (const BackendError&) {
            r.add_flag("asr_failed");
        }
    });
    return core::Corpus(std::move(records), corpus.source_path());
}

}  // namespace codevoice::pipeline
