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

#include "reobench/metrics/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "reobench/error.hpp"

namespace reobench::metrics {

double accuracy(const std::vector<LabelPrediction>& predictions,
                const std::vector<LabelPrediction>& ground_truth) {
    std::unordered_map<std::string, int> truth;
    truth.reserve(ground_truth.size());
    for (const LabelPrediction& gt : ground_truth) {
        if (!truth.emplace(gt.image_id, gt.category_id).second) {
            raise(ErrorCode::IdMismatch,
                  "duplicate ground-truth id '" + gt.image_id + "'");
        }
    }
    if (predictions.size() != truth.size()) {
        raise(ErrorCode::IdMismatch,
              std::to_string(predictions.size()) + " predictions vs " +
                  std::to_string(truth.size()) + " ground-truth records");
    }
    std::size_t correct = 0;
    std::unordered_map<std::string, bool> seen;
    seen.reserve(predictions.size());
    for (const LabelPrediction& pred : predictions) {
        const auto it = truth.find(pred.image_id);
        if (it == truth.end()) {
            raise(ErrorCode::IdMismatch,
                  "prediction id '" + pred.image_id + "' has no ground truth");
        }
        if (!seen.emplace(pred.image_id, true).second) {
            raise(ErrorCode::IdMismatch,
                  "duplicate prediction id '" + pred.image_id + "'");
        }
        if (pred.category_id == it->second) ++correct;
    }
    if (truth.empty()) return 0.0;
    return 100.0 * static_cast<double>(correct) /
           static_cast<double>(truth.size());
}

ConfusionMatrix::ConfusionMatrix(int num_classes)
    : num_classes_(num_classes),
      counts_(static_cast<std::size_t>(num_classes) * num_classes, 0) {
    if (num_classes < 1) {
        raise(ErrorCode::InvalidArgument, "confusion matrix needs >= 1 class");
    }
}

void ConfusionMatrix::add_pixel(int truth_class, int predicted_class) {
    if (truth_class < 0 || truth_class >= num_classes_ || predicted_class < 0 ||
        predicted_class >= num_classes_) {
        raise(ErrorCode::ClassOutOfRange,
              "class pair (" + std::to_string(truth_class) + ", " +
                  std::to_string(predicted_class) + ") outside 0-" +
                  std::to_string(num_classes_ - 1));
    }
    ++counts_[static_cast<std::size_t>(truth_class) * num_classes_ +
              predicted_class];
}

void ConfusionMatrix::add(const SegMask& prediction, const SegMask& truth) {
    if (prediction.width != truth.width || prediction.height != truth.height) {
        raise(ErrorCode::ShapeMismatch,
              "prediction " + std::to_string(prediction.width) + "x" +
                  std::to_string(prediction.height) + " vs truth " +
                  std::to_string(truth.width) + "x" +
                  std::to_string(truth.height));
    }
    for (std::size_t i = 0; i < truth.classes.size(); ++i) {
        add_pixel(truth.classes[i], prediction.classes[i]);
    }
}

std::uint64_t ConfusionMatrix::at(int truth_class, int predicted_class) const {
    return counts_[static_cast<std::size_t>(truth_class) * num_classes_ +
                   predicted_class];
}

double ConfusionMatrix::miou() const {
    double sum = 0.0;
    int counted = 0;
    for (int c = 0; c < num_classes_; ++c) {
        const std::uint64_t tp = at(c, c);
        std::uint64_t fp = 0, fn = 0;
        for (int other = 0; other < num_classes_; ++other) {
            if (other == c) continue;
            fp += at(other, c);
            fn += at(c, other);
        }
        const std::uint64_t unions = tp + fp + fn;
        if (unions == 0) continue;  // class absent everywhere, skip
        sum += static_cast<double>(tp) / static_cast<double>(unions);
        ++counted;
    }
    return counted == 0 ? 0.0 : 100.0 * sum / counted;
}

namespace {

double signed_area(const std::vector<Point2>& poly) {
    double twice = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = poly[i];
        const Point2& b = poly[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return twice / 2.0;
}

double cross(Point2 o, Point2 a, Point2 b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

void require_convex(const std::vector<Point2>& poly) {
    if (poly.size() < 3) {
        raise(ErrorCode::DegeneratePolygon,
              "polygon has " + std::to_string(poly.size()) + " vertices");
    }
    const std::size_t n = poly.size();
    int sign = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c =
            cross(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]);
        if (std::abs(c) < 1e-12) continue;  // collinear corner is fine
        const int s = c > 0.0 ? 1 : -1;
        if (sign == 0) {
            sign = s;
        } else if (s != sign) {
            raise(ErrorCode::NonConvexPolygon, "polygon turns both ways");
        }
    }
}

std::vector<Point2> counter_clockwise(std::vector<Point2> poly) {
    if (signed_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
    return poly;
}

/// Sutherland-Hodgman: clip `subject` against convex CCW `clip`.
std::vector<Point2> clip_polygon(std::vector<Point2> subject,
                                 const std::vector<Point2>& clip) {
    const std::size_t n = clip.size();
    for (std::size_t i = 0; i < n && !subject.empty(); ++i) {
        const Point2 a = clip[i];
        const Point2 b = clip[(i + 1) % n];
        std::vector<Point2> kept;
        kept.reserve(subject.size() + 4);
        const std::size_t m = subject.size();
        for (std::size_t j = 0; j < m; ++j) {
            const Point2 p = subject[j];
            const Point2 q = subject[(j + 1) % m];
            const double dp = cross(a, b, p);
            const double dq = cross(a, b, q);
            const bool p_in = dp >= 0.0;
            const bool q_in = dq >= 0.0;
            if (p_in) kept.push_back(p);
            if (p_in != q_in) {
                const double t = dp / (dp - dq);
                kept.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
            }
        }
        subject = std::move(kept);
    }
    return subject;
}

double convex_intersection_area(const std::vector<Point2>& a,
                                const std::vector<Point2>& b) {
    const std::vector<Point2> inter =
        clip_polygon(counter_clockwise(a), counter_clockwise(b));
    if (inter.size() < 3) return 0.0;
    return std::abs(signed_area(inter));
}

}  // namespace

double polygon_area(const std::vector<Point2>& poly) {
    return std::abs(signed_area(poly));
}

double polygon_iou(const std::vector<Point2>& a, const std::vector<Point2>& b) {
    require_convex(a);
    require_convex(b);
    const double area_a = polygon_area(a);
    const double area_b = polygon_area(b);
    if (area_a < 1e-9 || area_b < 1e-9) {
        raise(ErrorCode::DegeneratePolygon, "polygon area below 1e-9");
    }
    const double inter = convex_intersection_area(a, b);
    const double unions = area_a + area_b - inter;
    return inter / unions;
}

double hbox_iou(const HorizontalBox& a, const HorizontalBox& b) {
    const double iw =
        std::max(0.0, std::min(a.xmax, b.xmax) - std::max(a.xmin, b.xmin));
    const double ih =
        std::max(0.0, std::min(a.ymax, b.ymax) - std::max(a.ymin, b.ymin));
    const double inter = iw * ih;
    const double area_a = (a.xmax - a.xmin) * (a.ymax - a.ymin);
    const double area_b = (b.xmax - b.xmin) * (b.ymax - b.ymin);
    const double unions = area_a + area_b - inter;
    return unions <= 0.0 ? 0.0 : inter / unions;
}

double grounding_accuracy(const std::vector<GroundingPair>& pairs) {
    if (pairs.empty()) return 0.0;
    std::size_t hits = 0;
    for (const GroundingPair& pair : pairs) {
        if (hbox_iou(pair.predicted, pair.truth) >= 0.5) ++hits;
    }
    return 100.0 * static_cast<double>(hits) /
           static_cast<double>(pairs.size());
}

namespace {

double quad_iou_or_zero(const Quad& a, const Quad& b) {
    try {
        return polygon_iou({a.begin(), a.end()}, {b.begin(), b.end()});
    } catch (const Error&) {
        return 0.0;  // degenerate or malformed boxes never match
    }
}

}  // namespace

double mean_ap(const std::vector<Detection>& detections,
               const std::vector<GtBox>& ground_truth, int num_classes,
               double iou_threshold) {
    if (num_classes < 1) {
        raise(ErrorCode::InvalidArgument, "mean_ap needs >= 1 class");
    }
    for (const Detection& det : detections) {
        if (det.category_id < 0 || det.category_id >= num_classes) {
            raise(ErrorCode::ClassOutOfRange,
                  "detection class " + std::to_string(det.category_id));
        }
    }
    for (const GtBox& gt : ground_truth) {
        if (gt.category_id < 0 || gt.category_id >= num_classes) {
            raise(ErrorCode::ClassOutOfRange,
                  "ground-truth class " + std::to_string(gt.category_id));
        }
    }

    double ap_sum = 0.0;
    int classes_with_gt = 0;
    for (int cls = 0; cls < num_classes; ++cls) {
        std::vector<std::size_t> gt_idx;
        for (std::size_t i = 0; i < ground_truth.size(); ++i) {
            if (ground_truth[i].category_id == cls) gt_idx.push_back(i);
        }
        if (gt_idx.empty()) continue;
        ++classes_with_gt;

        std::vector<std::size_t> det_idx;
        for (std::size_t i = 0; i < detections.size(); ++i) {
            if (detections[i].category_id == cls) det_idx.push_back(i);
        }
        std::sort(det_idx.begin(), det_idx.end(),
                  [&](std::size_t lhs, std::size_t rhs) {
                      const Detection& a = detections[lhs];
                      const Detection& b = detections[rhs];
                      if (a.confidence != b.confidence) {
                          return a.confidence > b.confidence;
                      }
                      if (a.image_id != b.image_id) {
                          return a.image_id < b.image_id;
                      }
                      return lhs < rhs;
                  });

        std::vector<bool> matched(gt_idx.size(), false);
        std::vector<double> precision, recall;
        precision.reserve(det_idx.size());
        recall.reserve(det_idx.size());
        std::size_t tp = 0, fp = 0;
        for (const std::size_t di : det_idx) {
            const Detection& det = detections[di];
            double best_iou = 0.0;
            std::size_t best = gt_idx.size();
            for (std::size_t g = 0; g < gt_idx.size(); ++g) {
                if (matched[g]) continue;
                const GtBox& gt = ground_truth[gt_idx[g]];
                if (gt.image_id != det.image_id) continue;
                const double iou = quad_iou_or_zero(det.corners, gt.corners);
                if (iou > best_iou) {
                    best_iou = iou;
                    best = g;
                }
            }
            if (best != gt_idx.size() && best_iou >= iou_threshold) {
                matched[best] = true;
                ++tp;
            } else {
                ++fp;
            }
            precision.push_back(static_cast<double>(tp) /
                                static_cast<double>(tp + fp));
            recall.push_back(static_cast<double>(tp) /
                             static_cast<double>(gt_idx.size()));
        }

        // Precision envelope, then area under the stepwise PR curve.
        for (std::size_t i = precision.size(); i-- > 1;) {
            precision[i - 1] = std::max(precision[i - 1], precision[i]);
        }
        double ap = 0.0;
        double prev_recall = 0.0;
        for (std::size_t i = 0; i < precision.size(); ++i) {
            ap += (recall[i] - prev_recall) * precision[i];
            prev_recall = recall[i];
        }
        ap_sum += ap;
    }
    return classes_with_gt == 0 ? 0.0 : 100.0 * ap_sum / classes_with_gt;
}

}  // namespace reobench::metrics
