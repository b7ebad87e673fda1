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

#include "reobench/annotations.hpp"

#include <algorithm>
#include <cmath>

namespace reobench {

Point2 quad_center(const Quad& q) {
    return {(q[0].x + q[1].x + q[2].x + q[3].x) / 4.0,
            (q[0].y + q[1].y + q[2].y + q[3].y) / 4.0};
}

double quad_area(const Quad& q) {
    double twice = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Point2& a = q[i];
        const Point2& b = q[(i + 1) % 4];
        twice += a.x * b.y - b.x * a.y;
    }
    return std::abs(twice) / 2.0;
}

Quad hbox_to_quad(const HorizontalBox& b) {
    return {Point2{b.xmin, b.ymin}, Point2{b.xmax, b.ymin},
            Point2{b.xmax, b.ymax}, Point2{b.xmin, b.ymax}};
}

HorizontalBox quad_hull(const Quad& q, std::string category) {
    HorizontalBox box;
    box.xmin = std::min({q[0].x, q[1].x, q[2].x, q[3].x});
    box.xmax = std::max({q[0].x, q[1].x, q[2].x, q[3].x});
    box.ymin = std::min({q[0].y, q[1].y, q[2].y, q[3].y});
    box.ymax = std::max({q[0].y, q[1].y, q[2].y, q[3].y});
    box.category = std::move(category);
    return box;
}

}  // namespace reobench
