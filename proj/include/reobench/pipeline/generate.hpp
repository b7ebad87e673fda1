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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "reobench/pipeline/chain.hpp"
#include "reobench/pipeline/manifest.hpp"

namespace reobench::pipeline {

struct GenerationPlan {
    DatasetManifest manifest;
    /// Chains to materialize; empty expands the manifest grid into
    /// single-spec chains.
    std::vector<CorruptionChain> chains;
    std::filesystem::path output_root;
    int workers = 1;
    /// Recorded for downstream reports; not consumed here.
    std::string aggregation = "mean";
};

/// Grid expansion: one single-spec chain per (kind, severity) cell.
std::vector<CorruptionChain> grid_chains(const DatasetManifest& manifest);

/// Stable content hash of the plan (corpus, chains, seed), for provenance.
std::uint64_t plan_hash(const GenerationPlan& plan);

struct GenerationFailure {
    std::string image_id;
    std::string message;
};

struct GenerationReport {
    std::size_t images_written = 0;
    std::vector<GenerationFailure> failures;
    std::filesystem::path provenance_path;
};

/// Relative output directory for one chain: "<kind>/s<severity>" for a
/// single spec, the chain label for compounds.
std::filesystem::path chain_directory(const CorruptionChain& chain);

/// Materialize the corrupted tree under plan.output_root:
///   <root>/<chain dir>/<image file>      corrupted rasters
///   <root>/annotations/clean/...         shared by non-geometric chains
///   <root>/annotations/<chain dir>/...   co-transformed, geometric chains
///   <root>/provenance.json               plan hash, seed, per-image draws
/// Workers split the image list; outputs are keyed by (seed, image, spec)
/// streams so bytes never depend on the worker count. A failing image is
/// recorded and skipped, never fatal.
GenerationReport generate(const GenerationPlan& plan);

}  // namespace reobench::pipeline
