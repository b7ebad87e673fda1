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
#include <vector>

#include "reobench/raster.hpp"

namespace reobench {

enum class ImageFormat { Png, Jpeg };

/// Format from file extension (.png / .jpg / .jpeg, case-insensitive).
/// Throws UnsupportedFormat otherwise.
ImageFormat format_from_extension(const std::filesystem::path& path);

/// Decode an 8-bit PNG or baseline JPEG (sniffed from magic bytes) into a
/// normalized raster. 1-4 channels for PNG, 1 or 3 for JPEG.
ImageRaster load_image(const std::filesystem::path& path);

/// Encode at 8 bits. Saving the result of a load is byte-stable: saving,
/// loading and saving again produces identical files.
void save_image(const ImageRaster& img, const std::filesystem::path& path);
void save_image(const ImageRaster& img, const std::filesystem::path& path,
                ImageFormat format, int jpeg_quality = 95);

// In-memory codecs (also used by the compression-artifact generator).
std::vector<std::uint8_t> encode_png(const ImageRaster& img);
ImageRaster decode_png(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_jpeg(const ImageRaster& img, int quality);
ImageRaster decode_jpeg(const std::vector<std::uint8_t>& bytes);

}  // namespace reobench
