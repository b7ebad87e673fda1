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

#include <cstddef>
#include <cstdint>
#include <vector>

namespace reobench {

/// In-memory raster: row-major, channel-interleaved floats in [0, 1].
/// 8-bit quantization happens only at the I/O boundary (see image_io.hpp).
struct ImageRaster {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<float> data;

    ImageRaster() = default;
    ImageRaster(int w, int h, int c, float fill = 0.0f)
        : width(w), height(h), channels(c),
          data(static_cast<std::size_t>(w) * h * c, fill) {}

    std::size_t size() const { return data.size(); }

    std::size_t index(int x, int y, int c) const {
        return (static_cast<std::size_t>(y) * width + x) * channels + c;
    }

    float at(int x, int y, int c) const { return data[index(x, y, c)]; }
    float& at(int x, int y, int c) { return data[index(x, y, c)]; }

    bool same_shape(const ImageRaster& other) const {
        return width == other.width && height == other.height &&
               channels == other.channels;
    }
};

inline float clamp01(float v) {
    return v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v);
}

/// Quantize to 8 bits: round(v * 255), clamped.
std::vector<std::uint8_t> raster_to_bytes(const ImageRaster& img);

/// Dequantize 8-bit samples: v / 255.
ImageRaster raster_from_bytes(int width, int height, int channels,
                              const std::vector<std::uint8_t>& bytes);

/// True when every sample is finite and inside [0, 1] and the buffer length
/// matches width*height*channels.
bool raster_valid(const ImageRaster& img);

}  // namespace reobench
