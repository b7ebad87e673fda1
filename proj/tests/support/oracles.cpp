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

#include "support/oracles.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>

#include "reobench/error.hpp"
#include "reobench/image_io.hpp"

namespace testsupport {

using reobench::ImageRaster;
using reobench::Point2;
using reobench::Quad;
using reobench::RngStream;

std::array<std::uint32_t, 4> philox4x32_reference(
    std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key) {
    auto mul_hi_lo = [](std::uint32_t a, std::uint32_t b, std::uint32_t& hi) {
        const std::uint64_t wide = static_cast<std::uint64_t>(a) * b;
        hi = static_cast<std::uint32_t>(wide >> 32);
        return static_cast<std::uint32_t>(wide & 0xFFFFFFFFu);
    };
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0 = 0, hi1 = 0;
        const std::uint32_t lo0 = mul_hi_lo(counter[0], 0xD2511F53u, hi0);
        const std::uint32_t lo1 = mul_hi_lo(counter[2], 0xCD9E8D57u, hi1);
        const std::array<std::uint32_t, 4> next = {
            hi1 ^ counter[1] ^ key[0],
            lo1,
            hi0 ^ counter[3] ^ key[1],
            lo0,
        };
        counter = next;
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
    }
    return counter;
}

ImageRaster conv2d_mirror_reference(const ImageRaster& img,
                                    const std::vector<float>& kernel, int kw,
                                    int kh, int anchor_x, int anchor_y) {
    auto mirror = [](int i, int n) {
        while (i < 0 || i >= n) {
            if (i < 0) i = -i - 1;
            if (i >= n) i = 2 * n - i - 1;
        }
        return i;
    };
    ImageRaster out(img.width, img.height, img.channels);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            for (int c = 0; c < img.channels; ++c) {
                double acc = 0.0;
                for (int ky = 0; ky < kh; ++ky) {
                    for (int kx = 0; kx < kw; ++kx) {
                        const float w = kernel[ky * kw + kx];
                        if (w == 0.0f) continue;
                        const int sx = mirror(x + kx - anchor_x, img.width);
                        const int sy = mirror(y + ky - anchor_y, img.height);
                        acc += static_cast<double>(w) * img.at(sx, sy, c);
                    }
                }
                out.at(x, y, c) = reobench::clamp01(static_cast<float>(acc));
            }
        }
    }
    return out;
}

bool point_in_convex(const std::vector<Point2>& poly, Point2 p) {
    int sign = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = poly[i];
        const Point2& b = poly[(i + 1) % n];
        const double cross =
            (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (std::abs(cross) < 1e-12) continue;
        const int s = cross > 0.0 ? 1 : -1;
        if (sign == 0) {
            sign = s;
        } else if (s != sign) {
            return false;
        }
    }
    return true;
}

double mc_polygon_iou(const std::vector<Point2>& a, const std::vector<Point2>& b,
                      int samples, RngStream& rng) {
    double xmin = a[0].x, xmax = a[0].x, ymin = a[0].y, ymax = a[0].y;
    for (const auto* poly : {&a, &b}) {
        for (const Point2& p : *poly) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    }
    std::int64_t in_both = 0, in_either = 0;
    for (int i = 0; i < samples; ++i) {
        const Point2 p{xmin + rng.uniform() * (xmax - xmin),
                       ymin + rng.uniform() * (ymax - ymin)};
        const bool in_a = point_in_convex(a, p);
        const bool in_b = point_in_convex(b, p);
        in_both += in_a && in_b;
        in_either += in_a || in_b;
    }
    return in_either == 0 ? 0.0
                          : static_cast<double>(in_both) /
                                static_cast<double>(in_either);
}

Quad random_convex_quad(RngStream& rng, double cx, double cy, double r_min,
                        double r_max) {
    // Four jittered angles in separate quadrants keep the polygon simple;
    // varying radii can still fold a vertex inward, so redraw until every
    // turn has the same sign.
    while (true) {
        std::array<double, 4> angles{};
        for (int i = 0; i < 4; ++i) {
            angles[i] = (i + 0.15 + 0.7 * rng.uniform()) *
                        (std::numbers::pi / 2.0);
        }
        Quad q{};
        for (int i = 0; i < 4; ++i) {
            const double r = r_min + rng.uniform() * (r_max - r_min);
            q[i] = {cx + r * std::cos(angles[i]), cy + r * std::sin(angles[i])};
        }
        bool convex = true;
        for (int i = 0; i < 4 && convex; ++i) {
            const Point2& a = q[i];
            const Point2& b = q[(i + 1) % 4];
            const Point2& c = q[(i + 2) % 4];
            const double cross =
                (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
            convex = cross > 1e-6;
        }
        if (convex) return q;
    }
}

namespace {

double oracle_quad_iou(const Quad& a, const Quad& b) {
    // High-sample Monte-Carlo estimate is too loose for threshold decisions,
    // so the oracle reuses the exact clipping routine; that routine is
    // itself validated against Monte-Carlo in its own test.
    try {
        return reobench::metrics::polygon_iou(
            std::vector<Point2>(a.begin(), a.end()),
            std::vector<Point2>(b.begin(), b.end()));
    } catch (const reobench::Error&) {
        return 0.0;
    }
}

}  // namespace

double bruteforce_mean_ap(const std::vector<reobench::metrics::Detection>& dets,
                          const std::vector<reobench::metrics::GtBox>& gts,
                          int num_classes, double iou_threshold) {
    double ap_sum = 0.0;
    int classes_with_gt = 0;
    for (int cls = 0; cls < num_classes; ++cls) {
        std::vector<const reobench::metrics::GtBox*> class_gts;
        for (const auto& gt : gts) {
            if (gt.category_id == cls) class_gts.push_back(&gt);
        }
        if (class_gts.empty()) continue;
        ++classes_with_gt;

        struct Row {
            const reobench::metrics::Detection* det;
            std::size_t input_index;
        };
        std::vector<Row> rows;
        for (std::size_t i = 0; i < dets.size(); ++i) {
            if (dets[i].category_id == cls) rows.push_back({&dets[i], i});
        }
        std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
            if (x.det->confidence != y.det->confidence) {
                return x.det->confidence > y.det->confidence;
            }
            if (x.det->image_id != y.det->image_id) {
                return x.det->image_id < y.det->image_id;
            }
            return x.input_index < y.input_index;
        });

        std::vector<bool> gt_taken(class_gts.size(), false);
        std::vector<int> is_tp(rows.size(), 0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            double best_iou = 0.0;
            std::size_t best_gt = class_gts.size();
            for (std::size_t g = 0; g < class_gts.size(); ++g) {
                if (gt_taken[g]) continue;
                if (class_gts[g]->image_id != rows[i].det->image_id) continue;
                const double iou =
                    oracle_quad_iou(rows[i].det->corners, class_gts[g]->corners);
                if (iou > best_iou) {
                    best_iou = iou;
                    best_gt = g;
                }
            }
            if (best_gt != class_gts.size() && best_iou >= iou_threshold) {
                gt_taken[best_gt] = true;
                is_tp[i] = 1;
            }
        }

        // Precision at each prefix; envelope by scanning the whole suffix.
        double ap = 0.0;
        double prev_recall = 0.0;
        int tp = 0;
        std::vector<double> precision(rows.size(), 0.0);
        std::vector<double> recall(rows.size(), 0.0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            tp += is_tp[i];
            precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
            recall[i] = static_cast<double>(tp) /
                        static_cast<double>(class_gts.size());
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            double envelope = 0.0;
            for (std::size_t j = i; j < rows.size(); ++j) {
                envelope = std::max(envelope, precision[j]);
            }
            ap += (recall[i] - prev_recall) * envelope;
            prev_recall = recall[i];
        }
        ap_sum += ap;
    }
    return classes_with_gt == 0 ? 0.0 : 100.0 * ap_sum / classes_with_gt;
}

ImageRaster random_raster(int width, int height, int channels, RngStream& rng) {
    ImageRaster img(width, height, channels);
    for (float& v : img.data) v = static_cast<float>(rng.uniform());
    return img;
}

ImageRaster synthetic_scene(int width, int height, int channels,
                            std::uint64_t seed) {
    RngStream rng(seed);
    struct Wave {
        double fx, fy, phase, amp;
    };
    std::vector<std::vector<Wave>> waves(channels);
    for (auto& per_channel : waves) {
        for (int i = 0; i < 3; ++i) {
            per_channel.push_back({1.0 + 5.0 * rng.uniform(),
                                   1.0 + 5.0 * rng.uniform(),
                                   2.0 * std::numbers::pi * rng.uniform(),
                                   0.08 + 0.10 * rng.uniform()});
        }
    }
    ImageRaster img(width, height, channels);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            for (int c = 0; c < channels; ++c) {
                double v = 0.5;
                for (const Wave& w : waves[c]) {
                    v += w.amp * std::sin(2.0 * std::numbers::pi *
                                              (w.fx * x / width +
                                               w.fy * y / height) +
                                          w.phase);
                }
                img.at(x, y, c) =
                    reobench::clamp01(static_cast<float>(v));
            }
        }
    }
    return img;
}

double raster_mean(const ImageRaster& img) {
    double sum = 0.0;
    for (float v : img.data) sum += v;
    return img.data.empty() ? 0.0 : sum / static_cast<double>(img.data.size());
}

double raster_stddev(const ImageRaster& img) {
    if (img.data.size() < 2) return 0.0;
    const double mean = raster_mean(img);
    double acc = 0.0;
    for (float v : img.data) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(img.data.size() - 1));
}

bool bytes_equal(const ImageRaster& a, const ImageRaster& b) {
    return a.same_shape(b) &&
           reobench::raster_to_bytes(a) == reobench::raster_to_bytes(b);
}

std::size_t byte_mismatches(const ImageRaster& a, const ImageRaster& b) {
    const auto ba = reobench::raster_to_bytes(a);
    const auto bb = reobench::raster_to_bytes(b);
    if (ba.size() != bb.size()) return std::max(ba.size(), bb.size());
    std::size_t count = 0;
    for (std::size_t i = 0; i < ba.size(); ++i) count += ba[i] != bb[i];
    return count;
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>());
}

std::map<std::string, std::uint64_t> hash_tree(
    const std::filesystem::path& root) {
    std::map<std::string, std::uint64_t> hashes;
    for (const auto& entry :
         std::filesystem::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        const auto bytes = slurp(entry.path());
        hashes[entry.path().lexically_relative(root).generic_string()] =
            reobench::hash64(std::string_view(
                reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    }
    return hashes;
}

TempDir::TempDir(const std::string& label) {
    static std::atomic<std::uint64_t> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("reobench_test_" + label + "_" +
             std::to_string(counter.fetch_add(1)) + "_" +
             std::to_string(static_cast<std::uint64_t>(::getpid())));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::filesystem::path write_class_dataset(
    const std::filesystem::path& root, const std::vector<std::string>& classes,
    int per_class, int size, std::uint64_t seed) {
    std::uint64_t salt = 0;
    for (const std::string& cls : classes) {
        std::filesystem::create_directories(root / cls);
        for (int i = 0; i < per_class; ++i) {
            const ImageRaster img =
                synthetic_scene(size, size, 3, seed + 977 * ++salt);
            reobench::save_image(img,
                                 root / cls / ("img" + std::to_string(i) +
                                               ".png"));
        }
    }
    return root;
}

}  // namespace testsupport
