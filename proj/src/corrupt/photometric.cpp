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

#include "reobench/corrupt/photometric.hpp"

#include <cmath>
#include <unordered_set>
#include <vector>

#include "reobench/error.hpp"
#include "reobench/image_io.hpp"

namespace reobench::corrupt {

ImageRaster gaussian_noise(const ImageRaster& img, double sigma,
                           RngStream& rng) {
    if (sigma < 0.0) {
        raise(ErrorCode::InvalidArgument, "noise sigma must be >= 0");
    }
    ImageRaster out = img;
    for (float& v : out.data) {
        v = clamp01(static_cast<float>(v + sigma * rng.normal()));
    }
    return out;
}

ImageRaster salt_pepper(const ImageRaster& img, double amount, RngStream& rng) {
    if (amount < 0.0 || amount > 1.0) {
        raise(ErrorCode::InvalidArgument, "salt-pepper amount outside [0, 1]");
    }
    const std::int64_t num_pixels =
        static_cast<std::int64_t>(img.width) * img.height;
    const std::int64_t hits =
        std::llround(amount * static_cast<double>(num_pixels));

    ImageRaster out = img;
    std::vector<std::int64_t> sites;
    sites.reserve(static_cast<std::size_t>(hits));
    std::unordered_set<std::int64_t> seen;
    while (static_cast<std::int64_t>(sites.size()) < hits) {
        const std::int64_t site = rng.uniform_int(0, num_pixels - 1);
        if (seen.insert(site).second) sites.push_back(site);
    }
    const std::int64_t salt_count = (hits + 1) / 2;
    for (std::int64_t i = 0; i < hits; ++i) {
        const float value = i < salt_count ? 1.0f : 0.0f;
        const int x = static_cast<int>(sites[static_cast<std::size_t>(i)] %
                                       img.width);
        const int y = static_cast<int>(sites[static_cast<std::size_t>(i)] /
                                       img.width);
        for (int c = 0; c < img.channels; ++c) out.at(x, y, c) = value;
    }
    return out;
}

ImageRaster brightness_contrast(const ImageRaster& img, double brightness,
                                double contrast) {
    ImageRaster out = img;
    const float b = static_cast<float>(brightness);
    const float c = static_cast<float>(contrast);
    for (float& v : out.data) {
        v = clamp01((v - 0.5f) * c + 0.5f + b);
    }
    return out;
}

ImageRaster haze(const ImageRaster& img, double intensity) {
    if (intensity < 0.0 || intensity > 1.0) {
        raise(ErrorCode::InvalidArgument, "haze intensity outside [0, 1]");
    }
    ImageRaster out = img;
    const float a = static_cast<float>(intensity);
    for (float& v : out.data) {
        v = clamp01((1.0f - a) * v + a);
    }
    return out;
}

ImageRaster jpeg_artifacts(const ImageRaster& img, int quality) {
    if (img.channels != 1 && img.channels != 3) {
        raise(ErrorCode::EncodeError,
              "jpeg artifacts need 1 or 3 channels, got " +
                  std::to_string(img.channels));
    }
    return decode_jpeg(encode_jpeg(img, quality));
}

namespace {

// ITU-T T.81 Annex K reference tables, natural (row-major) order.
constexpr std::uint16_t kLumaBase[64] = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99,
};

constexpr std::uint16_t kChromaBase[64] = {
    17, 18, 24, 47, 99, 99, 99, 99,  //
    18, 21, 26, 66, 99, 99, 99, 99,  //
    24, 26, 56, 99, 99, 99, 99, 99,  //
    47, 66, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,
};

// Natural-order index of each zig-zag position.
constexpr int kZigZag[64] = {
    0,  1,  8,  16, 9,  2,  3,  10,  //
    17, 24, 32, 25, 18, 11, 4,  5,   //
    12, 19, 26, 33, 40, 48, 41, 34,  //
    27, 20, 13, 6,  7,  14, 21, 28,  //
    35, 42, 49, 56, 57, 50, 43, 36,  //
    29, 22, 15, 23, 30, 37, 44, 51,  //
    58, 59, 52, 45, 38, 31, 39, 46,  //
    53, 60, 61, 54, 47, 55, 62, 63,
};

std::array<std::uint16_t, 64> scale_table(const std::uint16_t* base,
                                          int quality) {
    const int scale = quality < 50 ? 5000 / quality : 200 - quality * 2;
    std::array<std::uint16_t, 64> out{};
    for (int z = 0; z < 64; ++z) {
        long v = (static_cast<long>(base[kZigZag[z]]) * scale + 50) / 100;
        if (v < 1) v = 1;
        if (v > 255) v = 255;  // baseline tables are 8-bit
        out[static_cast<std::size_t>(z)] = static_cast<std::uint16_t>(v);
    }
    return out;
}

}  // namespace

std::array<std::array<std::uint16_t, 64>, 2> JpegCodecConfig::quant_tables()
    const {
    if (quality < 1 || quality > 100) {
        raise(ErrorCode::InvalidArgument,
              "jpeg quality " + std::to_string(quality) + " outside 1-100");
    }
    return {scale_table(kLumaBase, quality), scale_table(kChromaBase, quality)};
}

}  // namespace reobench::corrupt
