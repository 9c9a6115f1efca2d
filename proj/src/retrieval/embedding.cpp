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

#include "codevoice/retrieval/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "codevoice/util/error.hpp"
#include "codevoice/util/hash.hpp"
#include "codevoice/util/parallel.hpp"
#include "codevoice/util/text.hpp"

namespace codevoice::retrieval {

namespace {

constexpr float kWordWeight = 1.0f;
constexpr float kFoldWeight = 1.0f;
constexpr float kTrigramWeight = 0.3f;

void add_feature(Vector& v, std::string_view feature, float weight) {
    const auto h = hash::fnv1a64(feature);
    const auto bucket = static_cast<std::size_t>(h % v.size());
    v[bucket] += (h >> 63) ? -weight : weight;
}

// Maximal runs of word characters and '_' ("user_id" from "f(user_id):").
std::vector<std::string> identifier_chunks(std::string_view token) {
    std::vector<std::string> out;
    std::string cur;
    for (char32_t c : text::decode(token)) {
        if (text::is_word_char(c) || c == U'_') {
            text::append(cur, c);
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

}  // namespace

OfflineHashEmbedder::OfflineHashEmbedder(std::size_t dimension) : dimension_(dimension) {
    if (dimension_ == 0) throw ConfigError("embedding dimension must be positive");
}

std::string OfflineHashEmbedder::id() const { return "offline-hash:" + std::to_string(dimension_); }

Vector OfflineHashEmbedder::embed_one(const std::string& input) const {
    Vector v(dimension_, 0.0f);
    for (const auto& token : text::split_whitespace(text::nfc(input))) {
        for (const auto& chunk : identifier_chunks(token)) {
            const auto pieces = text::identifier_words(chunk);
            if (pieces.size() > 1) add_feature(v, "f:" + text::fold_key(chunk), kFoldWeight);
            for (const auto& piece : pieces) {
                const auto word = text::to_lower(piece);
                add_feature(v, "w:" + word, kWordWeight);
                const auto cps = text::decode("^" + word + "$");
                for (std::size_t i = 0; i + 3 <= cps.size(); ++i) {
                    add_feature(v, "t:" + text::encode(std::u32string_view(cps).substr(i, 3)), kTrigramWeight);
                }
            }
        }
    }
    double norm = 0.0;
    for (float x : v) norm += static_cast<double>(x) * x;
    if (norm > 0.0) {
        const auto inv = static_cast<float>(1.0 / std::sqrt(norm));
        for (float& x : v) x *= inv;
    }
    return v;
}

std::vector<Vector> OfflineHashEmbedder::embed(std::span<const std::string> texts) {
    std::vector<Vector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(embed_one(t));
    return out;
}

RemoteEmbeddingBackend::RemoteEmbeddingBackend(http::Endpoint endpoint, std::string model)
    : endpoint_(std::move(endpoint)), model_(std::move(model)) {
    if (endpoint_.url.empty()) throw ConfigError("embedding endpoint URL is empty");
}

std::string RemoteEmbeddingBackend::id() const { return "remote-embedding:" + (model_.empty() ? endpoint_.url : model_); }

std::vector<Vector> RemoteEmbeddingBackend::embed(std::span<const std::string> texts) {
    nlohmann::json body;
    body["input"] = std::vector<std::string>(texts.begin(), texts.end());
    if (!model_.empty()) body["model"] = model_;
    const auto reply = http::post_json(endpoint_, body);
    std::vector<Vector> out;
    try {
        for (const auto& item : reply.at("data")) out.push_back(item.at("embedding").get<Vector>());
    } catch (const nlohmann::json::exception& e) {
        throw BackendError(std::string("malformed embedding reply: ") + e.what(), reply.dump());
    }
    if (out.size() != texts.size()) {
        throw BackendError("embedding reply has " + std::to_string(out.size()) + " vectors for " +
                               std::to_string(texts.size()) + " inputs",
                           reply.dump());
    }
    return out;
}

bool EmbeddingCache::lookup(const std::string& text, Vector& out) const {
    const auto key = hash::sha256_hex(text);
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return false;
    out = it->second;
    return true;
}

void EmbeddingCache::store(const std::string& text, Vector v) {
    const auto key = hash::sha256_hex(text);
    std::lock_guard lock(mutex_);
    entries_[key] = std::move(v);
}

std::size_t EmbeddingCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::vector<Vector> embed_corpus(std::span<const std::string> texts, EmbeddingBackend& backend, EmbeddingCache* cache,
                                 const EmbedOptions& options) {
    EmbeddingCache local;
    EmbeddingCache& store = cache ? *cache : local;

    // Unique uncached texts, remembered by their first index for error messages.
    std::vector<std::size_t> pending;
    std::unordered_map<std::string, std::size_t> seen;
    Vector tmp;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (seen.contains(texts[i]) || store.lookup(texts[i], tmp)) continue;
        seen.emplace(texts[i], i);
        pending.push_back(i);
    }

    const std::size_t batch = std::max<std::size_t>(1, options.batch_size);
    const std::size_t n_batches = (pending.size() + batch - 1) / batch;
    parallel_for(n_batches, options.max_concurrency, [&](std::size_t b) {
        const auto first = pending.begin() + static_cast<std::ptrdiff_t>(b * batch);
        const auto last = pending.begin() + static_cast<std::ptrdiff_t>(std::min(pending.size(), (b + 1) * batch));
        std::vector<std::string> chunk;
        for (auto it = first; it != last; ++it) chunk.push_back(texts[*it]);
        try {
            auto vecs = backend.embed(chunk);
            if (vecs.size() != chunk.size()) throw BackendError("embedding backend returned a short batch");
            for (std::size_t k = 0; k < chunk.size(); ++k) store.store(chunk[k], std::move(vecs[k]));
            return;
        } catch (const BackendError&) {
            // Fall through to per-item calls to find the culprit.
        }
        for (auto it = first; it != last; ++it) {
            try {
                auto vecs = backend.embed(std::span<const std::string>(&texts[*it], 1));
                if (vecs.size() != 1) throw BackendError("embedding backend returned no vector");
                store.store(texts[*it], std::move(vecs[0]));
            } catch (const BackendError& e) {
                throw BackendError("embedding failed for text at index " + std::to_string(*it) + ": " + e.what(),
                                   e.transcript());
            }
        }
    });

    std::vector<Vector> out(texts.size());
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (!store.lookup(texts[i], out[i])) throw Error("embedding cache lost an entry");
        if (out[i].size() != out[0].size()) {
            throw BackendError("embedding backend returned vectors of different dimensions");
        }
    }
    return out;
}

double cosine(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw ArgumentError("vector dimensions differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<std::size_t> rank(const Vector& query, std::span<const Vector> docs) {
    std::vector<double> sims(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) sims[i] = cosine(query, docs[i]);
    std::vector<std::size_t> order(docs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sims[a] > sims[b]; });
    return order;
}

}  // namespace codevoice::retrieval
