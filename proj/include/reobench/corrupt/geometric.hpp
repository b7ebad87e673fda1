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

#include <array>

#include "reobench/annotations.hpp"
#include "reobench/raster.hpp"
#include "reobench/rng.hpp"

namespace reobench::corrupt {

/// 2x3 affine map, stored output -> input (the warp direction used when
/// resampling). apply() maps an output pixel position to its source sample;
/// inverse() gives the forward map used for annotation points.
struct AffineMap {
    // | a b tx |
    // | c d ty |
    double a = 1.0, b = 0.0, tx = 0.0;
    double c = 0.0, d = 1.0, ty = 0.0;

    Point2 apply(Point2 p) const {
        return {a * p.x + b * p.y + tx, c * p.x + d * p.y + ty};
    }
    AffineMap inverse() const;
    AffineMap then(const AffineMap& next) const;
};

/// Warp maps about the pixel-center of the frame, ((W-1)/2, (H-1)/2), with
/// image axes x right / y down. Angles are in degrees; positive angles turn
/// +x toward +y. Each returns the output->input map for a same-size frame.
AffineMap rotate_warp(int width, int height, double angle_deg);
AffineMap scale_warp(int width, int height, double ratio);
AffineMap translate_warp(double dx, double dy);

/// Resample through an output->input map. Bilinear with zero fill for
/// out-of-frame samples.
ImageRaster warp_image(const ImageRaster& img, const AffineMap& map);

/// Nearest-neighbor variant for class masks; out-of-frame samples take the
/// background class 0.
SegMask warp_mask(const SegMask& mask, const AffineMap& map);

ImageRaster rotate(const ImageRaster& img, double angle_deg);
ImageRaster scale(const ImageRaster& img, double ratio);
ImageRaster translate(const ImageRaster& img, double dx, double dy);

/// Severity-level entry point for translation: dx then dy are drawn
/// uniformly from {-d, ..., d}.
ImageRaster translate_random(const ImageRaster& img, int displacement,
                             RngStream& rng, double* out_dx = nullptr,
                             double* out_dy = nullptr);

/// Carry an annotation set through the forward map of `warp`. Points move
/// through warp.inverse(); masks are resampled; a box is kept iff its mapped
/// center lands inside [0, W-1] x [0, H-1], after which its corners are
/// clamped to the frame.
AnnotationSet transform_annotations(const AnnotationSet& ann, int width,
                                    int height, const AffineMap& warp);

}  // namespace reobench::corrupt
