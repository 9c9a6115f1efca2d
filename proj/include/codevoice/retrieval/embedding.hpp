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

#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "codevoice/util/http.hpp"

namespace codevoice::retrieval {

using Vector = std::vector<float>;

class EmbeddingBackend {
public:
    virtual ~EmbeddingBackend() = default;
    virtual std::string id() const = 0;
    /// One vector per text, all of the same dimension. Throws BackendError.
    virtual std::vector<Vector> embed(std::span<const std::string> texts) = 0;
};

/// Deterministic bag-of-features embedder. Each text contributes its
/// lowercase words, the pieces and folded form of identifier-like words,
/// and character trigrams, hashed with a sign bit into `dimension` buckets;
/// the result is L2-normalized. Texts sharing identifiers and words land
/// close together, which is the structure code search relies on.
class OfflineHashEmbedder : public EmbeddingBackend {
public:
    explicit OfflineHashEmbedder(std::size_t dimension = 512);

    std::string id() const override;
    std::vector<Vector> embed(std::span<const std::string> texts) override;
    Vector embed_one(const std::string& text) const;
    std::size_t dimension() const { return dimension_; }

private:
    std::size_t dimension_;
};

/// JSON over HTTP: POST {input: [texts]} (plus model when set), reply
/// {data: [{embedding: [floats]}]}.
class RemoteEmbeddingBackend : public EmbeddingBackend {
public:
    RemoteEmbeddingBackend(http::Endpoint endpoint, std::string model = {});

    std::string id() const override;
    std::vector<Vector> embed(std::span<const std::string> texts) override;

private:
    http::Endpoint endpoint_;
    std::string model_;
};

/// Vectors keyed by the SHA-256 of their text. Thread-safe.
class EmbeddingCache {
public:
    bool lookup(const std::string& text, Vector& out) const;
    void store(const std::string& text, Vector v);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, Vector> entries_;
};

struct EmbedOptions {
    std::size_t batch_size = 32;
    std::size_t max_concurrency = 4;
};

/// Embeds texts in order, consulting and filling the cache. When a batch
/// fails its items are retried one by one so the error names the first
/// failing index; vectors obtained before the failure stay cached.
std::vector<Vector> embed_corpus(std::span<const std::string> texts, EmbeddingBackend& backend,
                                 EmbeddingCache* cache = nullptr, const EmbedOptions& options = {});

/// Cosine similarity; 0 when either vector has zero norm. Throws
/// ArgumentError on a dimension mismatch.
double cosine(const Vector& a, const Vector& b);

/// Document indices by descending cosine similarity, ties by index.
std::vector<std::size_t> rank(const Vector& query, std::span<const Vector> docs);

}  // namespace codevoice::retrieval
