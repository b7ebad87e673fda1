/*
 * Copyright 2026 The REOBench Toolkit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "reobench/fidelity/embedding_io.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "reobench/error.hpp"

namespace reobench::fidelity {

namespace {

// Embedding files are little-endian on disk; every supported target here is
// little-endian, so the raw copy below is the identity transform.
std::uint32_t read_u32(std::istream& in, const std::string& path) {
    std::uint32_t v = 0;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
        raise(ErrorCode::IoError, "truncated embedding header in " + path);
    }
    return v;
}

}  // namespace

EmbeddingSet load_embeddings_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        raise(ErrorCode::IoError, "cannot open " + path.string());
    }
    EmbeddingSet set;
    set.count = read_u32(in, path.string());
    set.dim = read_u32(in, path.string());
    const std::size_t n = set.count * set.dim;
    std::vector<float> raw(n);
    if (n > 0 &&
        !in.read(reinterpret_cast<char*>(raw.data()),
                 static_cast<std::streamsize>(n * sizeof(float)))) {
        raise(ErrorCode::DimensionMismatch,
              path.string() + " payload shorter than count x dim");
    }
    char extra;
    if (in.read(&extra, 1)) {
        raise(ErrorCode::DimensionMismatch,
              path.string() + " payload longer than count x dim");
    }
    set.data.assign(raw.begin(), raw.end());
    return set;
}

void save_embeddings_binary(const EmbeddingSet& set,
                            const std::filesystem::path& path) {
    if (set.data.size() != set.count * set.dim) {
        raise(ErrorCode::DimensionMismatch,
              "embedding buffer does not match count x dim");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        raise(ErrorCode::IoError, "cannot open " + path.string() + " for write");
    }
    const auto count = static_cast<std::uint32_t>(set.count);
    const auto dim = static_cast<std::uint32_t>(set.dim);
    out.write(reinterpret_cast<const char*>(&count), sizeof count);
    out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
    std::vector<float> raw(set.data.begin(), set.data.end());
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size() * sizeof(float)));
    if (!out) {
        raise(ErrorCode::IoError, "write failed for " + path.string());
    }
}

EmbeddingSet load_embeddings_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        raise(ErrorCode::IoError, "cannot open " + path.string());
    }
    EmbeddingSet set;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            raise(ErrorCode::AnnotationParseError,
                  path.string() + ":" + std::to_string(line_no) + ": " +
                      e.what());
        }
        if (!j.contains("vector") || !j["vector"].is_array()) {
            raise(ErrorCode::AnnotationParseError,
                  path.string() + ":" + std::to_string(line_no) +
                      ": missing \"vector\" array");
        }
        const auto vec = j["vector"].get<std::vector<double>>();
        if (set.count == 0) {
            set.dim = vec.size();
        } else if (vec.size() != set.dim) {
            raise(ErrorCode::DimensionMismatch,
                  path.string() + ":" + std::to_string(line_no) +
                      ": vector dimension " + std::to_string(vec.size()) +
                      " != " + std::to_string(set.dim));
        }
        set.data.insert(set.data.end(), vec.begin(), vec.end());
        ++set.count;
    }
    return set;
}

EmbeddingSet load_embeddings(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    if (ext == ".jsonl") return load_embeddings_jsonl(path);
    return load_embeddings_binary(path);
}

}  // namespace reobench::fidelity
