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

#include "reobench/corrupt/geometric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "reobench/error.hpp"

namespace reobench::corrupt {

namespace {

/// Snap values that should be exact (0, +-1) but picked up trig rounding;
/// keeps right-angle rotations bit-exact pixel permutations.
inline double snap_trig(double v) {
    if (std::abs(v) < 1e-15) return 0.0;
    if (std::abs(v - 1.0) < 1e-15) return 1.0;
    if (std::abs(v + 1.0) < 1e-15) return -1.0;
    return v;
}

inline double clamp_range(double v, double lo, double hi) {
    return std::min(std::max(v, lo), hi);
}

inline bool inside_frame(Point2 p, int width, int height) {
    return p.x >= 0.0 && p.x <= width - 1.0 && p.y >= 0.0 &&
           p.y <= height - 1.0;
}

Quad map_quad(const Quad& q, const AffineMap& forward) {
    Quad out;
    for (int i = 0; i < 4; ++i) out[i] = forward.apply(q[i]);
    return out;
}

Quad clamp_quad(const Quad& q, int width, int height) {
    Quad out;
    for (int i = 0; i < 4; ++i) {
        out[i] = {clamp_range(q[i].x, 0.0, width - 1.0),
                  clamp_range(q[i].y, 0.0, height - 1.0)};
    }
    return out;
}

}  // namespace

AffineMap AffineMap::inverse() const {
    const double det = a * d - b * c;
    if (std::abs(det) < 1e-9) {
        raise(ErrorCode::InvalidArgument, "affine map is not invertible");
    }
    AffineMap inv;
    inv.a = d / det;
    inv.b = -b / det;
    inv.c = -c / det;
    inv.d = a / det;
    inv.tx = -(inv.a * tx + inv.b * ty);
    inv.ty = -(inv.c * tx + inv.d * ty);
    return inv;
}

AffineMap AffineMap::then(const AffineMap& next) const {
    // Warp of "this op, then next op": resampling walks backwards, so the
    // combined out->in map applies next first, then this.
    AffineMap m;
    m.a = a * next.a + b * next.c;
    m.b = a * next.b + b * next.d;
    m.c = c * next.a + d * next.c;
    m.d = c * next.b + d * next.d;
    m.tx = a * next.tx + b * next.ty + tx;
    m.ty = c * next.tx + d * next.ty + ty;
    return m;
}

AffineMap rotate_warp(int width, int height, double angle_deg) {
    const double rad = angle_deg * std::numbers::pi / 180.0;
    const double cs = snap_trig(std::cos(rad));
    const double sn = snap_trig(std::sin(rad));
    const double cx = (width - 1) / 2.0;
    const double cy = (height - 1) / 2.0;
    // Forward turn is +angle (x toward y); the warp applies the -angle turn.
    AffineMap m;
    m.a = cs;
    m.b = sn;
    m.c = -sn;
    m.d = cs;
    m.tx = cx - m.a * cx - m.b * cy;
    m.ty = cy - m.c * cx - m.d * cy;
    return m;
}

AffineMap scale_warp(int width, int height, double ratio) {
    if (ratio <= 0.0) {
        raise(ErrorCode::InvalidArgument, "scale ratio must be positive");
    }
    const double cx = (width - 1) / 2.0;
    const double cy = (height - 1) / 2.0;
    AffineMap m;
    m.a = 1.0 / ratio;
    m.d = 1.0 / ratio;
    m.tx = cx - m.a * cx;
    m.ty = cy - m.d * cy;
    return m;
}

AffineMap translate_warp(double dx, double dy) {
    AffineMap m;
    m.tx = -dx;
    m.ty = -dy;
    return m;
}

ImageRaster warp_image(const ImageRaster& img, const AffineMap& map) {
    ImageRaster out(img.width, img.height, img.channels, 0.0f);
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            const Point2 src = map.apply({static_cast<double>(x),
                                          static_cast<double>(y)});
            const double fx = std::floor(src.x);
            const double fy = std::floor(src.y);
            const int x0 = static_cast<int>(fx);
            const int y0 = static_cast<int>(fy);
            const double ax = src.x - fx;
            const double ay = src.y - fy;
            const double w00 = (1.0 - ax) * (1.0 - ay);
            const double w10 = ax * (1.0 - ay);
            const double w01 = (1.0 - ax) * ay;
            const double w11 = ax * ay;
            for (int c = 0; c < img.channels; ++c) {
                double acc = 0.0;
                if (w00 != 0.0 && x0 >= 0 && x0 < img.width && y0 >= 0 &&
                    y0 < img.height) {
                    acc += w00 * img.at(x0, y0, c);
                }
                if (w10 != 0.0 && x0 + 1 >= 0 && x0 + 1 < img.width &&
                    y0 >= 0 && y0 < img.height) {
                    acc += w10 * img.at(x0 + 1, y0, c);
                }
                if (w01 != 0.0 && x0 >= 0 && x0 < img.width && y0 + 1 >= 0 &&
                    y0 + 1 < img.height) {
                    acc += w01 * img.at(x0, y0 + 1, c);
                }
                if (w11 != 0.0 && x0 + 1 >= 0 && x0 + 1 < img.width &&
                    y0 + 1 >= 0 && y0 + 1 < img.height) {
                    acc += w11 * img.at(x0 + 1, y0 + 1, c);
                }
                out.at(x, y, c) = clamp01(static_cast<float>(acc));
            }
        }
    }
    return out;
}

SegMask warp_mask(const SegMask& mask, const AffineMap& map) {
    SegMask out;
    out.width = mask.width;
    out.height = mask.height;
    out.palette = mask.palette;
    out.classes.assign(static_cast<std::size_t>(mask.width) * mask.height, 0);
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            const Point2 src = map.apply({static_cast<double>(x),
                                          static_cast<double>(y)});
            const int xi = static_cast<int>(std::lround(src.x));
            const int yi = static_cast<int>(std::lround(src.y));
            if (xi < 0 || xi >= mask.width || yi < 0 || yi >= mask.height) {
                continue;  // background class 0
            }
            out.classes[static_cast<std::size_t>(y) * mask.width + x] =
                mask.classes[static_cast<std::size_t>(yi) * mask.width + xi];
        }
    }
    return out;
}

ImageRaster rotate(const ImageRaster& img, double angle_deg) {
    return warp_image(img, rotate_warp(img.width, img.height, angle_deg));
}

ImageRaster scale(const ImageRaster& img, double ratio) {
    return warp_image(img, scale_warp(img.width, img.height, ratio));
}

ImageRaster translate(const ImageRaster& img, double dx, double dy) {
    return warp_image(img, translate_warp(dx, dy));
}

ImageRaster translate_random(const ImageRaster& img, int displacement,
                             RngStream& rng, double* out_dx, double* out_dy) {
    if (displacement < 0) {
        raise(ErrorCode::InvalidArgument, "displacement bound must be >= 0");
    }
    const auto dx = static_cast<double>(
        rng.uniform_int(-displacement, displacement));
    const auto dy = static_cast<double>(
        rng.uniform_int(-displacement, displacement));
    if (out_dx != nullptr) *out_dx = dx;
    if (out_dy != nullptr) *out_dy = dy;
    return translate(img, dx, dy);
}

AnnotationSet transform_annotations(const AnnotationSet& ann, int width,
                                    int height, const AffineMap& warp) {
    const AffineMap forward = warp.inverse();

    auto transform_obox = [&](const OrientedBox& box,
                              OrientedBoxes& out) {
        const Quad mapped = map_quad(box.corners, forward);
        if (!inside_frame(quad_center(mapped), width, height)) return;
        OrientedBox kept = box;
        kept.corners = clamp_quad(mapped, width, height);
        out.boxes.push_back(std::move(kept));
    };

    auto transform_hbox = [&](const HorizontalBox& box)
        -> std::optional<HorizontalBox> {
        const Quad mapped = map_quad(hbox_to_quad(box), forward);
        if (!inside_frame(quad_center(mapped), width, height)) {
            return std::nullopt;
        }
        HorizontalBox hull = quad_hull(clamp_quad(mapped, width, height),
                                       box.category);
        return hull;
    };

    if (const auto* label = std::get_if<ClassLabel>(&ann)) {
        return *label;
    }
    if (const auto* mask = std::get_if<SegMask>(&ann)) {
        return warp_mask(*mask, warp);
    }
    if (const auto* oboxes = std::get_if<OrientedBoxes>(&ann)) {
        OrientedBoxes out;
        out.boxes.reserve(oboxes->boxes.size());
        for (const OrientedBox& box : oboxes->boxes) transform_obox(box, out);
        return out;
    }
    if (const auto* hboxes = std::get_if<HorizontalBoxes>(&ann)) {
        HorizontalBoxes out;
        out.boxes.reserve(hboxes->boxes.size());
        for (const HorizontalBox& box : hboxes->boxes) {
            if (auto mapped = transform_hbox(box)) {
                out.boxes.push_back(std::move(*mapped));
            }
        }
        return out;
    }
    if (const auto* refs = std::get_if<ReferringRecords>(&ann)) {
        ReferringRecords out;
        out.records.reserve(refs->records.size());
        for (const ReferringRecord& record : refs->records) {
            if (const auto* hbox = std::get_if<HorizontalBox>(&record.box)) {
                if (auto mapped = transform_hbox(*hbox)) {
                    out.records.push_back({record.expression,
                                           std::move(*mapped)});
                }
            } else {
                const auto& obox = std::get<OrientedBox>(record.box);
                OrientedBoxes tmp;
                transform_obox(obox, tmp);
                if (!tmp.boxes.empty()) {
                    out.records.push_back({record.expression,
                                           std::move(tmp.boxes.front())});
                }
            }
        }
        return out;
    }
    raise(ErrorCode::UnsupportedAnnotation, "unrecognized annotation union");
}

}  // namespace reobench::corrupt
