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

#include <optional>
#include <vector>

#include "reobench/raster.hpp"
#include "reobench/rng.hpp"

namespace reobench::corrupt {

/// 1-D Gaussian tap row for a k-tap separable blur. sigma = (k - 1) / 6,
/// taps normalized to sum 1.
std::vector<float> gaussian_kernel_1d(int kernel_size);

/// Separable Gaussian blur with symmetric (mirror) boundary handling.
/// kernel_size must be odd and >= 1; 1 is the identity.
ImageRaster gaussian_blur(const ImageRaster& img, int kernel_size);

/// Line kernel inside a k x k grid: kernel_size unit impulses spaced along
/// the direction `angle_deg` (degrees, x toward y) through the grid center,
/// rounded to integer cells, weights normalized to sum 1 (colliding samples
/// stack). Row-major k x k weight grid.
struct MotionKernel {
    int size = 0;
    std::vector<float> weights;  // size * size, row-major
};
MotionKernel motion_kernel(int kernel_size, double angle_deg);

/// Directional blur by convolving with motion_kernel(). When angle_deg is
/// empty one angle is drawn uniformly from [0, 180) for the whole image.
/// Symmetric (mirror) boundary handling, like gaussian_blur.
ImageRaster motion_blur(const ImageRaster& img, int kernel_size,
                        std::optional<double> angle_deg, RngStream& rng);

/// Fractal value field in [0, 1]: `octaves` layers of gradient (Perlin)
/// noise with persistence-weighted amplitudes, min-max normalized over the
/// image. base_period is the lattice spacing of the first octave in pixels.
/// Dimensions must be positive, base_period >= 2 and octaves >= 1.
struct PerlinField {
    int width = 0;
    int height = 0;
    std::vector<float> values;  // width * height, row-major

    float at(int x, int y) const { return values[static_cast<size_t>(y) * width + x]; }
};
PerlinField perlin_field(int width, int height, double base_period,
                         int octaves, double persistence, RngStream& rng);

/// Cloud occlusion: a fractal field p is thresholded at `threshold`; where
/// p > threshold a white layer is blended in with
/// alpha = smoothstep((p - threshold) / (1 - threshold)). Pixels at or below
/// the threshold are untouched.
ImageRaster cloud(const ImageRaster& img, double threshold, RngStream& rng);

/// Vertical dropout bands: num_gaps non-overlapping stripes of gap_width
/// columns are zeroed across the full height. Left edges are drawn in
/// [0, W - num_gaps * gap_width] and spread so stripes cannot collide.
/// Raises GapOverflow unless num_gaps * gap_width < W.
ImageRaster data_gaps(const ImageRaster& img, int num_gaps, int gap_width,
                      RngStream& rng);

/// Stripe left edges chosen by data_gaps(), ascending. Exposed so annotation
/// passes and tests can reproduce the geometry from the same stream.
std::vector<int> data_gap_positions(int width, int num_gaps, int gap_width,
                                    RngStream& rng);

}  // namespace reobench::corrupt
