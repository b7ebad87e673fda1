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
#include <string>
#include <variant>
#include <vector>

namespace reobench {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Quadrilateral corners in pixel coordinates, consistent winding.
using Quad = std::array<Point2, 4>;

struct ClassLabel {
    int category_id = -1;
    std::string category;
};

/// Class-index mask paired with an image; classes[y*width + x] is the label.
struct SegMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> classes;
    std::vector<std::string> palette;  // class id -> name; may be empty
};

struct OrientedBox {
    Quad corners{};
    std::string category;
    bool difficult = false;
};

struct OrientedBoxes {
    std::vector<OrientedBox> boxes;
};

struct HorizontalBox {
    double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;
    std::string category;
};

struct HorizontalBoxes {
    std::vector<HorizontalBox> boxes;
};

struct ReferringRecord {
    std::string expression;
    std::variant<HorizontalBox, OrientedBox> box;
};

struct ReferringRecords {
    std::vector<ReferringRecord> records;
};

using AnnotationSet =
    std::variant<ClassLabel, SegMask, OrientedBoxes, HorizontalBoxes, ReferringRecords>;

Point2 quad_center(const Quad& q);
double quad_area(const Quad& q);  // absolute shoelace area
Quad hbox_to_quad(const HorizontalBox& b);

/// Axis-aligned hull of a quad.
HorizontalBox quad_hull(const Quad& q, std::string category = {});

}  // namespace reobench
