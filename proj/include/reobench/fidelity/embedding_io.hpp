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

#pragma once

#include <filesystem>
#include <string>

#include "reobench/fidelity/frechet.hpp"

namespace reobench::fidelity {

/// Binary layout: u32 count, u32 dim (little-endian), then count * dim
/// float32 values, row-major little-endian. IoError on short or malformed
/// files, DimensionMismatch when count * dim disagrees with the payload.
EmbeddingSet load_embeddings_binary(const std::filesystem::path& path);
void save_embeddings_binary(const EmbeddingSet& set,
                            const std::filesystem::path& path);

/// JSONL layout: one {"id": <string>, "vector": [floats]} object per line.
/// All vectors must share a dimension (DimensionMismatch).
EmbeddingSet load_embeddings_jsonl(const std::filesystem::path& path);

/// Dispatch on extension: ".jsonl" parses as JSONL, anything else as binary.
EmbeddingSet load_embeddings(const std::filesystem::path& path);

}  // namespace reobench::fidelity
