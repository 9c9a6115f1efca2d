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
#include <string>
#include <vector>

#include <json.hpp>

namespace codevoice::http {

struct Endpoint {
    std::string url;
    std::string bearer_token;
    std::chrono::milliseconds timeout{std::chrono::seconds(60)};
};

struct FilePart {
    std::string field;
    std::string filename;
    std::string content;
    std::string content_type = "application/octet-stream";
};

struct FieldPart {
    std::string field;
    std::string value;
};

/// POSTs a JSON document and parses a JSON reply. Non-2xx replies and
/// transport failures raise BackendError with the exchange as transcript.
nlohmann::json post_json(const Endpoint& ep, const nlohmann::json& body);

/// POSTs JSON and returns the raw reply body (for audio payloads).
std::string post_json_for_bytes(const Endpoint& ep, const nlohmann::json& body);

nlohmann::json post_multipart(const Endpoint& ep, const std::vector<FieldPart>& fields,
                              const std::vector<FilePart>& files);

}  // namespace codevoice::http
