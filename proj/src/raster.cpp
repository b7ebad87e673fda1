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

#include "reobench/raster.hpp"

#include <cmath>

#include "reobench/error.hpp"

namespace reobench {

std::vector<std::uint8_t> raster_to_bytes(const ImageRaster& img) {
    std::vector<std::uint8_t> out(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        float v = clamp01(img.data[i]) * 255.0f;
        out[i] = static_cast<std::uint8_t>(std::lround(v));
    }
    return out;
}

ImageRaster raster_from_bytes(int width, int height, int channels,
                              const std::vector<std::uint8_t>& bytes) {
    const std::size_t expected =
        static_cast<std::size_t>(width) * height * channels;
    if (bytes.size() != expected) {
        raise(ErrorCode::ShapeMismatch,
              "byte buffer length " + std::to_string(bytes.size()) +
                  " does not match " + std::to_string(width) + "x" +
                  std::to_string(height) + "x" + std::to_string(channels));
    }
    ImageRaster img(width, height, channels);
    for (std::size_t i = 0; i < expected; ++i) {
        img.data[i] = static_cast<float>(bytes[i]) / 255.0f;
    }
    return img;
}

bool raster_valid(const ImageRaster& img) {
    if (img.width <= 0 || img.height <= 0 || img.channels <= 0) return false;
    const std::size_t expected =
        static_cast<std::size_t>(img.width) * img.height * img.channels;
    if (img.data.size() != expected) return false;
    for (float v : img.data) {
        if (!std::isfinite(v) || v < 0.0f || v > 1.0f) return false;
    }
    return true;
}

}  // namespace reobench
