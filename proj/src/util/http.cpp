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
#include "codevoice/util/http.hpp"

#include <httplib.h>

#include <regex>

#include "codevoice/util/error.hpp"

namespace codevoice::http {

namespace {

struct SplitUrl {
    std::string base;  // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(url, m, re)) throw ConfigError("invalid endpoint URL: " + url);
    return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

httplib::Client make_client(const Endpoint& ep, const SplitUrl& u) {
    httplib::Client cli(u.base);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(ep.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(ep.timeout - secs);
    cli.set_connection_timeout(secs.count(), usecs.count());
    cli.set_read_timeout(secs.count(), usecs.count());
    cli.set_write_timeout(secs.count(), usecs.count());
    if (!ep.bearer_token.empty()) cli.set_bearer_token_auth(ep.bearer_token);
    return cli;
}

std::string check(const httplib::Result& res, const std::string& url, const std::string& request) {
    if (!res) {
        throw BackendError("request to " + url + " failed: " + httplib::to_string(res.error()),
                           "POST " + url + "\n" + request);
    }
    if (res->status < 200 || res->status >= 300) {
        throw BackendError("request to " + url + " returned HTTP " + std::to_string(res->status),
                           "POST " + url + "\n" + request + "\n--- response ---\n" + res->body);
    }
    return res->body;
}

nlohmann::json parse_reply(const std::string& body, const std::string& url) {
    try {
        return nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw BackendError("reply from " + url + " is not JSON: " + e.what(), body);
    }
}

}  // namespace

std::string post_json_for_bytes(const Endpoint& ep, const nlohmann::json& body) {
    const auto u = split_url(ep.url);
    auto cli = make_client(ep, u);
    const std::string payload = body.dump();
    auto res = cli.Post(u.path, payload, "application/json");
    return check(res, ep.url, payload);
}

nlohmann::json post_json(const Endpoint& ep, const nlohmann::json& body) {
    return parse_reply(post_json_for_bytes(ep, body), ep.url);
}

nlohmann::json post_multipart(const Endpoint& ep, const std::vector<FieldPart>& fields,
                              const std::vector<FilePart>& files) {
    const auto u = split_url(ep.url);
    auto cli = make_client(ep, u);
    httplib::MultipartFormDataItems items;
    std::string summary;
    for (const auto& f : fields) {
        items.push_back({f.field, f.value, "", ""});
        summary += f.field + "=" + f.value + "\n";
    }
    for (const auto& f : files) {
        items.push_back({f.field, f.content, f.filename, f.content_type});
        summary += f.field + "=<" + std::to_string(f.content.size()) + " bytes: " + f.filename + ">\n";
    }
    auto res = cli.Post(u.path, items);
    return parse_reply(check(res, ep.url, summary), ep.url);
}

}  // namespace codevoice::http
