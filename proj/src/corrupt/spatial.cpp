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

#include "reobench/corrupt/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "reobench/error.hpp"

namespace reobench::corrupt {

namespace {

/// Symmetric (mirror) index: ... 2 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...
inline int reflect_index(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - i - 1;
    }
    return i;
}

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t lattice_hash(std::uint64_t seed, std::int64_t xi,
                                  std::int64_t yi) {
    std::uint64_t h = seed ^ (static_cast<std::uint64_t>(xi) *
                              0x9E3779B97F4A7C15ull);
    h = mix64(h);
    h ^= static_cast<std::uint64_t>(yi) * 0xC2B2AE3D27D4EB4Full;
    return mix64(h);
}

struct Grad {
    double x, y;
};

inline Grad lattice_gradient(std::uint64_t seed, std::int64_t xi,
                             std::int64_t yi) {
    static constexpr double kInvSqrt2 = 0.70710678118654752440;
    static constexpr Grad kDirs[8] = {
        {1.0, 0.0},  {-1.0, 0.0}, {0.0, 1.0},  {0.0, -1.0},
        {kInvSqrt2, kInvSqrt2},   {-kInvSqrt2, kInvSqrt2},
        {kInvSqrt2, -kInvSqrt2},  {-kInvSqrt2, -kInvSqrt2},
    };
    return kDirs[lattice_hash(seed, xi, yi) & 7];
}

inline double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

inline double lerp(double a, double b, double t) { return a + (b - a) * t; }

double gradient_noise(std::uint64_t seed, double u, double v) {
    const double fx = std::floor(u);
    const double fy = std::floor(v);
    const auto x0 = static_cast<std::int64_t>(fx);
    const auto y0 = static_cast<std::int64_t>(fy);
    const double dx = u - fx;
    const double dy = v - fy;

    const Grad g00 = lattice_gradient(seed, x0, y0);
    const Grad g10 = lattice_gradient(seed, x0 + 1, y0);
    const Grad g01 = lattice_gradient(seed, x0, y0 + 1);
    const Grad g11 = lattice_gradient(seed, x0 + 1, y0 + 1);

    const double n00 = g00.x * dx + g00.y * dy;
    const double n10 = g10.x * (dx - 1.0) + g10.y * dy;
    const double n01 = g01.x * dx + g01.y * (dy - 1.0);
    const double n11 = g11.x * (dx - 1.0) + g11.y * (dy - 1.0);

    const double tx = fade(dx);
    const double ty = fade(dy);
    return lerp(lerp(n00, n10, tx), lerp(n01, n11, tx), ty);
}

/// Convolve with an arbitrary dense kernel, mirror boundaries.
ImageRaster convolve(const ImageRaster& img, const std::vector<float>& weights,
                     int kw, int kh, int anchor_x, int anchor_y) {
    ImageRaster out(img.width, img.height, img.channels);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            for (int c = 0; c < img.channels; ++c) {
                double acc = 0.0;
                for (int ky = 0; ky < kh; ++ky) {
                    const int sy = reflect_index(y + ky - anchor_y, img.height);
                    for (int kx = 0; kx < kw; ++kx) {
                        const float w =
                            weights[static_cast<std::size_t>(ky) * kw + kx];
                        if (w == 0.0f) continue;
                        const int sx =
                            reflect_index(x + kx - anchor_x, img.width);
                        acc += w * img.at(sx, sy, c);
                    }
                }
                out.at(x, y, c) = clamp01(static_cast<float>(acc));
            }
        }
    }
    return out;
}

}  // namespace

std::vector<float> gaussian_kernel_1d(int kernel_size) {
    if (kernel_size < 1 || kernel_size % 2 == 0) {
        raise(ErrorCode::InvalidKernel,
              "gaussian kernel size must be odd and positive, got " +
                  std::to_string(kernel_size));
    }
    if (kernel_size == 1) return {1.0f};
    const double sigma = (kernel_size - 1) / 6.0;
    const int radius = kernel_size / 2;
    std::vector<double> taps(static_cast<std::size_t>(kernel_size));
    double sum = 0.0;
    for (int i = 0; i < kernel_size; ++i) {
        const double d = i - radius;
        taps[static_cast<std::size_t>(i)] =
            std::exp(-(d * d) / (2.0 * sigma * sigma));
        sum += taps[static_cast<std::size_t>(i)];
    }
    std::vector<float> out(taps.size());
    for (std::size_t i = 0; i < taps.size(); ++i) {
        out[i] = static_cast<float>(taps[i] / sum);
    }
    return out;
}

ImageRaster gaussian_blur(const ImageRaster& img, int kernel_size) {
    const std::vector<float> taps = gaussian_kernel_1d(kernel_size);
    if (kernel_size == 1) return img;
    const int radius = kernel_size / 2;

    ImageRaster tmp(img.width, img.height, img.channels);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            for (int c = 0; c < img.channels; ++c) {
                double acc = 0.0;
                for (int k = 0; k < kernel_size; ++k) {
                    const int sx = reflect_index(x + k - radius, img.width);
                    acc += taps[static_cast<std::size_t>(k)] * img.at(sx, y, c);
                }
                tmp.at(x, y, c) = static_cast<float>(acc);
            }
        }
    }
    ImageRaster out(img.width, img.height, img.channels);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            for (int c = 0; c < img.channels; ++c) {
                double acc = 0.0;
                for (int k = 0; k < kernel_size; ++k) {
                    const int sy = reflect_index(y + k - radius, img.height);
                    acc += taps[static_cast<std::size_t>(k)] * tmp.at(x, sy, c);
                }
                out.at(x, y, c) = clamp01(static_cast<float>(acc));
            }
        }
    }
    return out;
}

MotionKernel motion_kernel(int kernel_size, double angle_deg) {
    if (kernel_size < 1) {
        raise(ErrorCode::InvalidKernel,
              "motion kernel size must be >= 1, got " +
                  std::to_string(kernel_size));
    }
    MotionKernel kernel;
    kernel.size = kernel_size;
    kernel.weights.assign(
        static_cast<std::size_t>(kernel_size) * kernel_size, 0.0f);

    const double rad = angle_deg * std::numbers::pi / 180.0;
    const double cx = (kernel_size - 1) / 2.0;
    const double dir_x = std::cos(rad);
    const double dir_y = std::sin(rad);
    const float w = 1.0f / static_cast<float>(kernel_size);
    for (int i = 0; i < kernel_size; ++i) {
        const double t = i - cx;
        const int gx = static_cast<int>(std::lround(cx + t * dir_x));
        const int gy = static_cast<int>(std::lround(cx + t * dir_y));
        kernel.weights[static_cast<std::size_t>(gy) * kernel_size + gx] += w;
    }
    return kernel;
}

ImageRaster motion_blur(const ImageRaster& img, int kernel_size,
                        std::optional<double> angle_deg, RngStream& rng) {
    const double angle = angle_deg ? *angle_deg : rng.uniform() * 180.0;
    if (kernel_size == 1) return img;
    const MotionKernel kernel = motion_kernel(kernel_size, angle);
    const int anchor = kernel.size / 2;
    return convolve(img, kernel.weights, kernel.size, kernel.size, anchor,
                    anchor);
}

PerlinField perlin_field(int width, int height, double base_period,
                         int octaves, double persistence, RngStream& rng) {
    if (width < 1 || height < 1) {
        raise(ErrorCode::InvalidArgument, "perlin field needs positive dimensions");
    }
    if (base_period < 2.0) {
        raise(ErrorCode::InvalidArgument, "perlin base period must be >= 2");
    }
    if (octaves < 1) {
        raise(ErrorCode::InvalidArgument, "perlin octave count must be >= 1");
    }

    std::vector<std::uint64_t> octave_seeds(static_cast<std::size_t>(octaves));
    for (auto& s : octave_seeds) s = rng.next_u64();

    PerlinField field;
    field.width = width;
    field.height = height;
    field.values.assign(static_cast<std::size_t>(width) * height, 0.0f);

    // Accumulate octaves in doubles before normalizing.
    std::vector<double> raw(static_cast<std::size_t>(width) * height, 0.0);
    for (int o = 0; o < octaves; ++o) {
        const double spacing = base_period / static_cast<double>(1 << o);
        const double amplitude = std::pow(persistence, o);
        const std::uint64_t seed = octave_seeds[static_cast<std::size_t>(o)];
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                raw[static_cast<std::size_t>(y) * width + x] +=
                    amplitude * gradient_noise(seed, x / spacing, y / spacing);
            }
        }
    }

    const auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
    const double lo = *lo_it;
    const double span = *hi_it - lo;
    if (span < 1e-12) {
        return field;  // degenerate constant field stays all zero
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        field.values[i] = static_cast<float>((raw[i] - lo) / span);
    }
    return field;
}

ImageRaster cloud(const ImageRaster& img, double threshold, RngStream& rng) {
    if (threshold <= 0.0 || threshold > 1.0) {
        raise(ErrorCode::InvalidArgument, "cloud threshold outside (0, 1]");
    }
    const double period = std::max(2.0, img.width / 4.0);
    const PerlinField field =
        perlin_field(img.width, img.height, period, 4, 0.5, rng);
    if (threshold == 1.0) return img;  // nothing can strictly exceed 1

    ImageRaster out = img;
    const double inv_span = 1.0 / (1.0 - threshold);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const double p = field.at(x, y);
            if (p <= threshold) continue;
            const double t = (p - threshold) * inv_span;
            const float alpha = static_cast<float>(t * t * (3.0 - 2.0 * t));
            for (int c = 0; c < img.channels; ++c) {
                float& v = out.at(x, y, c);
                v = clamp01((1.0f - alpha) * v + alpha);
            }
        }
    }
    return out;
}

std::vector<int> data_gap_positions(int width, int num_gaps, int gap_width,
                                    RngStream& rng) {
    if (num_gaps < 1 || gap_width < 1) {
        raise(ErrorCode::InvalidArgument,
              "gap count and width must be positive");
    }
    const std::int64_t occupied =
        static_cast<std::int64_t>(num_gaps) * gap_width;
    if (occupied >= width) {
        raise(ErrorCode::GapOverflow,
              std::to_string(num_gaps) + " stripes of width " +
                  std::to_string(gap_width) + " cannot fit in " +
                  std::to_string(width) + " columns");
    }
    // Draw starts in the "compacted" axis, then re-expand: sorted draws plus
    // i*gap_width are non-overlapping by construction.
    std::vector<int> draws(static_cast<std::size_t>(num_gaps));
    const std::int64_t hi = width - occupied;
    for (auto& d : draws) d = static_cast<int>(rng.uniform_int(0, hi));
    std::sort(draws.begin(), draws.end());
    for (int i = 0; i < num_gaps; ++i) {
        draws[static_cast<std::size_t>(i)] += i * gap_width;
    }
    return draws;
}

ImageRaster data_gaps(const ImageRaster& img, int num_gaps, int gap_width,
                      RngStream& rng) {
    const std::vector<int> starts =
        data_gap_positions(img.width, num_gaps, gap_width, rng);
    ImageRaster out = img;
    for (int start : starts) {
        for (int y = 0; y < img.height; ++y) {
            for (int x = start; x < start + gap_width; ++x) {
                for (int c = 0; c < img.channels; ++c) out.at(x, y, c) = 0.0f;
            }
        }
    }
    return out;
}

}  // namespace reobench::corrupt
