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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reobench/annotations.hpp"
#include "reobench/corruption.hpp"
#include "reobench/raster.hpp"

namespace reobench::pipeline {

/// Ordered corruption specs applied to one image. Non-empty; at most one
/// geometric member, so the annotation transform composes exactly once.
struct CorruptionChain {
    std::vector<CorruptionSpec> specs;

    void validate() const;  // InvalidArgument on violations
    bool has_geometric() const;

    /// Directory label, e.g. "brightness_contrast_s3+cloud_s3".
    std::string label() const;
};

/// Parse "brightness:3,cloud:3,compression:3". Kind names accept the same
/// aliases as parse_kind; the chain is validated.
CorruptionChain parse_chain(std::string_view expression);

/// Parameters actually used for one applied spec, including any values drawn
/// from the stream (motion-blur angle, translation offsets).
struct DrawnParams {
    CorruptionKind kind = CorruptionKind::GaussianNoise;
    Severity severity{1};
    ParamMap params;
};

/// Apply one spec with the stream derived from (seed, image_id, kind,
/// severity). Drawn parameter values are reported through out_params.
ImageRaster apply_spec(const ImageRaster& img, const CorruptionSpec& spec,
                       std::uint64_t global_seed, std::string_view image_id,
                       DrawnParams* out_params = nullptr);

/// Apply a whole chain in listed order; the annotation set (when present)
/// passes through untouched for non-geometric specs and is co-transformed by
/// the one geometric spec.
struct ChainResult {
    ImageRaster image;
    std::optional<AnnotationSet> annotations;
    std::vector<DrawnParams> drawn;
};
ChainResult apply_chain(const ImageRaster& img,
                        const std::optional<AnnotationSet>& ann,
                        const CorruptionChain& chain,
                        std::uint64_t global_seed, std::string_view image_id);

}  // namespace reobench::pipeline
