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
#include <string>
#include <vector>

#include "reobench/annotations.hpp"

namespace reobench::metrics {

/// One predicted label keyed by the image it belongs to.
struct LabelPrediction {
    std::string image_id;
    int category_id = 0;
};

/// Top-1 accuracy in percent. Predictions and ground truth must cover the
/// same id set (IdMismatch otherwise); order is free.
double accuracy(const std::vector<LabelPrediction>& predictions,
                const std::vector<LabelPrediction>& ground_truth);

/// Confusion counts accumulated over whole masks; class ids index rows
/// (truth) and columns (prediction).
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(int num_classes);

    void add(const SegMask& prediction, const SegMask& truth);
    void add_pixel(int truth_class, int predicted_class);

    std::uint64_t at(int truth_class, int predicted_class) const;
    int num_classes() const { return num_classes_; }

    /// Mean intersection-over-union in percent, averaged over classes whose
    /// union is nonzero.
    double miou() const;

private:
    int num_classes_;
    std::vector<std::uint64_t> counts_;
};

/// Area of a convex polygon (shoelace, orientation-free).
double polygon_area(const std::vector<Point2>& poly);

/// IoU of two convex polygons via Sutherland-Hodgman clipping. Raises
/// NonConvexPolygon for non-convex input and DegeneratePolygon when either
/// area is below 1e-9.
double polygon_iou(const std::vector<Point2>& a, const std::vector<Point2>& b);

/// Axis-aligned box IoU with inclusive extents.
double hbox_iou(const HorizontalBox& a, const HorizontalBox& b);

/// Visual-grounding accuracy in percent: a prediction is a hit when its IoU
/// with the ground-truth box reaches 0.5. Records pair by index.
struct GroundingPair {
    HorizontalBox predicted;
    HorizontalBox truth;
};
double grounding_accuracy(const std::vector<GroundingPair>& pairs);

/// One scored detection.
struct Detection {
    std::string image_id;
    Quad corners{};
    int category_id = 0;
    double confidence = 0.0;
};

/// One ground-truth oriented box.
struct GtBox {
    std::string image_id;
    Quad corners{};
    int category_id = 0;
};

/// Mean average precision in percent at IoU 0.5 over oriented boxes.
/// Per class: detections sorted by confidence (ties broken by image id,
/// then input order), each greedily matched to the highest-IoU unmatched
/// ground truth; AP integrates the precision envelope over all recall
/// points. Classes with no ground truth are skipped.
double mean_ap(const std::vector<Detection>& detections,
               const std::vector<GtBox>& ground_truth, int num_classes,
               double iou_threshold = 0.5);

}  // namespace reobench::metrics
