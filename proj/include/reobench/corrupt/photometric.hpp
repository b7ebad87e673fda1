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
#include <cstdint>

#include "reobench/raster.hpp"
#include "reobench/rng.hpp"

namespace reobench::corrupt {

/// Additive i.i.d. Normal(0, sigma^2) per sample, clamped to [0, 1].
/// Draws follow data order (row-major, channel-interleaved).
ImageRaster gaussian_noise(const ImageRaster& img, double sigma, RngStream& rng);

/// Impulse noise: exactly round(amount * W * H) distinct pixel sites are
/// replaced across all channels; the first ceil(k/2) drawn sites become salt
/// (1.0), the rest pepper (0.0).
ImageRaster salt_pepper(const ImageRaster& img, double amount, RngStream& rng);

/// out = clamp((v - 0.5) * contrast + 0.5 + brightness). The mid-gray pivot
/// makes the severity-1 pair (b=0, c=1) an exact identity.
ImageRaster brightness_contrast(const ImageRaster& img, double brightness,
                                double contrast);

/// Uniform blend with a white layer: out = (1 - intensity) * v + intensity.
ImageRaster haze(const ImageRaster& img, double intensity);

/// Baseline-JPEG round trip at the given quality. 3-channel input is encoded
/// as YCbCr 4:2:0, 1-channel as luma only; other channel counts raise
/// EncodeError. Output shape matches the input.
ImageRaster jpeg_artifacts(const ImageRaster& img, int quality);

/// Baseline JPEG codec configuration: quality 1-100, 4:2:0 chroma
/// subsampling, standard quantization tables scaled by the conventional
/// quality->scale rule (lower quality, element-wise larger tables).
struct JpegCodecConfig {
    int quality = 75;

    /// Scaled quantization tables actually used at this quality.
    /// [0] = luma, [1] = chroma, zig-zag order.
    std::array<std::array<std::uint16_t, 64>, 2> quant_tables() const;
};

}  // namespace reobench::corrupt
