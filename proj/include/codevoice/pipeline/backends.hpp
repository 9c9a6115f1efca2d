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

#include <filesystem>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codevoice/core/corpus.hpp"
#include "codevoice/pipeline/config.hpp"
#include "codevoice/pipeline/corruption.hpp"
#include "codevoice/refinement/llm_backend.hpp"
#include "codevoice/util/http.hpp"

namespace codevoice::pipeline {

// ---- translation ----------------------------------------------------------

struct TranslationResult {
    std::string text;
    /// Code tokens of the input missing from the output.
    std::vector<std::string> missing;
    bool identifier_drift() const { return !missing.empty(); }
};

/// The bundled translation instructions with {language} filled in.
std::string translation_instructions(const core::LanguageTag& target);

/// Code-aware translation. Failure of the backend propagates as BackendError.
TranslationResult translate_query(std::string_view text, const core::LanguageTag& target, refine::LLMBackend& backend,
                                  const verbal::Verbalizer& verbalizer);

// ---- speech synthesis -----------------------------------------------------

class TTSBackend {
public:
    virtual ~TTSBackend() = default;
    virtual std::string id() const = 0;
    /// Audio file extension, without the dot.
    virtual std::string extension() const = 0;
    /// Audio bytes. Throws BackendError.
    virtual std::string synthesize(const std::string& text, const core::LanguageTag& lang,
                                   const std::string& voice) = 0;
};

/// Writes a small text stub instead of audio and keeps every request.
class MockTTSBackend : public TTSBackend {
public:
    struct Request {
        std::string text;
        std::string language;
        std::string voice;
    };

    std::string id() const override { return "mock-tts"; }
    std::string extension() const override { return "txt"; }
    std::string synthesize(const std::string& text, const core::LanguageTag& lang, const std::string& voice) override;

    std::vector<Request> requests() const;
    /// Texts containing this substring fail, for exercising flagging.
    void fail_on(std::string needle) { fail_on_ = std::move(needle); }

private:
    mutable std::mutex mutex_;
    std::vector<Request> requests_;
    std::string fail_on_;
};

/// POST {text, voice, language} and take the reply body as audio.
class RemoteTTSBackend : public TTSBackend {
public:
    explicit RemoteTTSBackend(http::Endpoint endpoint) : endpoint_(std::move(endpoint)) {}
    std::string id() const override { return "remote-tts:" + endpoint_.url; }
    std::string extension() const override { return "wav"; }
    std::string synthesize(const std::string& text, const core::LanguageTag& lang, const std::string& voice) override;

private:
    http::Endpoint endpoint_;
};

/// File name for a record id: unsafe characters become '_' and a short hash
/// keeps distinct ids distinct.
std::string audio_file_stem(std::string_view id);

/// Synthesizes verbalized_text for every record that has it and no audio
/// yet; records without verbalized_text or whose request fails are flagged.
core::Corpus synthesize_audio(const core::Corpus& corpus, TTSBackend& backend, const std::filesystem::path& audio_dir,
                              const std::string& voice = "default", std::size_t parallelism = 1);

// ---- speech recognition ---------------------------------------------------

class ASRBackend {
public:
    virtual ~ASRBackend() = default;
    virtual std::string id() const = 0;
    /// Throws BackendError.
    virtual std::string transcribe(const core::QueryRecord& r) = 0;
};

/// Synthetic recognizer: corrupts verbalized_text with a per-record generator.
class MockASRBackend : public ASRBackend {
public:
    MockASRBackend(std::shared_ptr<const Corrupter> corrupter) : corrupter_(std::move(corrupter)) {}
    std::string id() const override { return "mock-asr"; }
    std::string transcribe(const core::QueryRecord& r) override;

private:
    std::shared_ptr<const Corrupter> corrupter_;
};

/// Multipart upload {file, language} answered by JSON {text}.
class RemoteASRBackend : public ASRBackend {
public:
    explicit RemoteASRBackend(http::Endpoint endpoint) : endpoint_(std::move(endpoint)) {}
    std::string id() const override { return "remote-asr:" + endpoint_.url; }
    std::string transcribe(const core::QueryRecord& r) override;

private:
    http::Endpoint endpoint_;
};

/// Fills transcript_raw for records lacking it. Failures flag the record
/// "asr_failed" and leave the transcript absent.
core::Corpus transcribe_audio(const core::Corpus& corpus, ASRBackend& backend, std::size_t parallelism = 1);

}  // namespace codevoice::pipeline
