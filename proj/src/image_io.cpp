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

#include "reobench/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "reobench/error.hpp"

namespace reobench {

namespace {

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return ext;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        raise(ErrorCode::IoError, "cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes(
        (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        raise(ErrorCode::IoError, "read failed for " + path.string());
    }
    return bytes;
}

void write_file(const std::filesystem::path& path,
                const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        raise(ErrorCode::IoError, "cannot open " + path.string() + " for write");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        raise(ErrorCode::IoError, "write failed for " + path.string());
    }
}

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_longjmp(j_common_ptr cinfo) {
    auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, mgr->message);
    std::longjmp(mgr->jump, 1);
}

void jpeg_emit_nothing(j_common_ptr, int) {}

}  // namespace

ImageFormat format_from_extension(const std::filesystem::path& path) {
    const std::string ext = lower_extension(path);
    if (ext == ".png") return ImageFormat::Png;
    if (ext == ".jpg" || ext == ".jpeg") return ImageFormat::Jpeg;
    raise(ErrorCode::UnsupportedFormat,
          "unsupported image extension '" + ext + "' (" + path.string() + ")");
}

ImageRaster decode_png(const std::vector<std::uint8_t>& bytes) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
        raise(ErrorCode::DecodeError,
              std::string("png: ") + image.message);
    }
    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    const bool alpha = (image.format & PNG_FORMAT_FLAG_ALPHA) != 0;
    const int channels = (color ? 3 : 1) + (alpha ? 1 : 0);
    image.format = (color ? PNG_FORMAT_FLAG_COLOR : 0u) |
                   (alpha ? PNG_FORMAT_FLAG_ALPHA : 0u);
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        const std::string message = image.message;
        png_image_free(&image);
        raise(ErrorCode::DecodeError, "png: " + message);
    }
    return raster_from_bytes(static_cast<int>(image.width),
                             static_cast<int>(image.height), channels, buffer);
}

std::vector<std::uint8_t> encode_png(const ImageRaster& img) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width);
    image.height = static_cast<png_uint_32>(img.height);
    switch (img.channels) {
        case 1: image.format = PNG_FORMAT_GRAY; break;
        case 2: image.format = PNG_FORMAT_GA; break;
        case 3: image.format = PNG_FORMAT_RGB; break;
        case 4: image.format = PNG_FORMAT_RGBA; break;
        default:
            raise(ErrorCode::EncodeError,
                  "png: unsupported channel count " +
                      std::to_string(img.channels));
    }
    const std::vector<std::uint8_t> bytes = raster_to_bytes(img);
    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&image, nullptr, &size, 0, bytes.data(), 0,
                                   nullptr)) {
        raise(ErrorCode::EncodeError, std::string("png: ") + image.message);
    }
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&image, out.data(), &size, 0, bytes.data(),
                                   0, nullptr)) {
        raise(ErrorCode::EncodeError, std::string("png: ") + image.message);
    }
    out.resize(size);
    return out;
}

std::vector<std::uint8_t> encode_jpeg(const ImageRaster& img, int quality) {
    if (quality < 1 || quality > 100) {
        raise(ErrorCode::InvalidArgument,
              "jpeg quality " + std::to_string(quality) + " outside 1-100");
    }
    if (img.channels != 1 && img.channels != 3) {
        raise(ErrorCode::EncodeError,
              "jpeg: unsupported channel count " + std::to_string(img.channels));
    }

    jpeg_compress_struct cinfo;
    JpegErrorMgr err;
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_longjmp;
    err.pub.emit_message = jpeg_emit_nothing;

    unsigned char* mem = nullptr;
    unsigned long mem_size = 0;
    if (setjmp(err.jump)) {
        jpeg_destroy_compress(&cinfo);
        if (mem != nullptr) std::free(mem);
        raise(ErrorCode::EncodeError, std::string("jpeg: ") + err.message);
    }

    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, &mem, &mem_size);

    cinfo.image_width = static_cast<JDIMENSION>(img.width);
    cinfo.image_height = static_cast<JDIMENSION>(img.height);
    cinfo.input_components = img.channels;
    cinfo.in_color_space = img.channels == 1 ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE /* baseline-compatible tables */);
    jpeg_start_compress(&cinfo, TRUE);

    const std::vector<std::uint8_t> bytes = raster_to_bytes(img);
    const std::size_t stride =
        static_cast<std::size_t>(img.width) * img.channels;
    while (cinfo.next_scanline < cinfo.image_height) {
        JSAMPROW row = const_cast<JSAMPROW>(
            bytes.data() + static_cast<std::size_t>(cinfo.next_scanline) * stride);
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);

    std::vector<std::uint8_t> out(mem, mem + mem_size);
    std::free(mem);
    return out;
}

ImageRaster decode_jpeg(const std::vector<std::uint8_t>& bytes) {
    jpeg_decompress_struct cinfo;
    JpegErrorMgr err;
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_longjmp;
    err.pub.emit_message = jpeg_emit_nothing;

    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        raise(ErrorCode::DecodeError, std::string("jpeg: ") + err.message);
    }

    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space =
        cinfo.jpeg_color_space == JCS_GRAYSCALE ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&cinfo);

    const int channels = cinfo.output_components;
    const int width = static_cast<int>(cinfo.output_width);
    const int height = static_cast<int>(cinfo.output_height);
    std::vector<std::uint8_t> buffer(
        static_cast<std::size_t>(width) * height * channels);
    const std::size_t stride = static_cast<std::size_t>(width) * channels;
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row =
            buffer.data() + static_cast<std::size_t>(cinfo.output_scanline) * stride;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);

    return raster_from_bytes(width, height, channels, buffer);
}

ImageRaster load_image(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = read_file(path);
    if (bytes.size() >= 8 && bytes[0] == 0x89 && bytes[1] == 'P' &&
        bytes[2] == 'N' && bytes[3] == 'G') {
        return decode_png(bytes);
    }
    if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 &&
        bytes[2] == 0xFF) {
        return decode_jpeg(bytes);
    }
    raise(ErrorCode::UnsupportedFormat,
          path.string() + " is neither PNG nor JPEG");
}

void save_image(const ImageRaster& img, const std::filesystem::path& path) {
    save_image(img, path, format_from_extension(path));
}

void save_image(const ImageRaster& img, const std::filesystem::path& path,
                ImageFormat format, int jpeg_quality) {
    const std::vector<std::uint8_t> bytes = format == ImageFormat::Png
                                                ? encode_png(img)
                                                : encode_jpeg(img, jpeg_quality);
    write_file(path, bytes);
}

}  // namespace reobench
