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

// End-to-end acceptance gate. Each check prints one [PASS]/[FAIL] line with
// its measured numbers and wall time; the exit code is the failure count.
// Tolerances and budgets are pinned next to each check.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "reobench/corrupt/geometric.hpp"
#include "reobench/corrupt/photometric.hpp"
#include "reobench/corrupt/spatial.hpp"
#include "reobench/corruption.hpp"
#include "reobench/fidelity/frechet.hpp"
#include "reobench/image_io.hpp"
#include "reobench/metrics/report.hpp"
#include "reobench/metrics/scoring.hpp"
#include "reobench/pipeline/chain.hpp"
#include "reobench/pipeline/generate.hpp"
#include "reobench/pipeline/manifest.hpp"
#include "reobench/raster.hpp"
#include "reobench/rng.hpp"
#include "support/oracles.hpp"

namespace {

using namespace reobench;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct CheckResult {
    bool ok = false;
    std::string detail;
};

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

// ---------------------------------------------------------------------------
// 01: the relative-drop summary reproduces the published robustness rows.

struct ReferenceRow {
    const char* model;
    double clean;
    std::array<double, 12> cells;  // report column order
    double expected_avg;
    double expected_drop;
};

// Scene-classification and VQA robustness rows used as ground truth for the
// aggregation math; cells follow the fixed display column order.
constexpr ReferenceRow kReferenceRows[] = {
    {"SATLAS", 90.85,
     {82.54, 84.32, 73.36, 67.23, 78.10, 79.16, 80.46, 32.44, 72.54, 77.56,
      72.54, 88.54},
     74.07, 18.47},
    {"SatMAE", 72.05,
     {44.82, 59.58, 67.26, 46.49, 71.33, 71.25, 28.31, 63.85, 69.15, 70.45,
      59.74, 66.12},
     59.86, 16.92},
    {"Scale-MAE", 75.75,
     {51.80, 72.65, 39.60, 43.69, 31.65, 46.31, 55.24, 17.49, 66.15, 47.27,
      61.58, 69.84},
     50.27, 33.64},
    {"RVSA", 84.60,
     {56.84, 77.33, 56.07, 53.14, 53.53, 32.51, 49.19, 23.45, 76.88, 35.12,
      71.78, 77.22},
     55.26, 34.69},
    {"GeoChat", 65.85,
     {64.67, 65.26, 60.71, 64.61, 63.32, 62.34, 64.54, 48.68, 65.05, 62.32,
      56.21, 62.91},
     61.72, 6.27},
};

CheckResult check_reference_table() {
    constexpr double kTolerance = 0.02;
    metrics::RobustnessReport report;
    const auto columns = report_column_order();
    for (const ReferenceRow& row : kReferenceRows) {
        metrics::ModelScores model;
        model.model = row.model;
        model.clean_score = row.clean;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            metrics::ScoreCell cell;
            cell.kind = columns[i];
            cell.severity = Severity{1};
            cell.score = row.cells[i];
            model.cells.push_back(cell);
        }
        report.models.push_back(std::move(model));
    }
    const std::vector<metrics::ReportRow> rows = metrics::report_rows(report);
    double worst_avg = 0.0, worst_drop = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        worst_avg = std::max(
            worst_avg, std::abs(rows[i].average - kReferenceRows[i].expected_avg));
        worst_drop = std::max(
            worst_drop,
            std::abs(rows[i].relative_drop - kReferenceRows[i].expected_drop));
    }
    CheckResult result;
    result.ok = worst_avg <= kTolerance && worst_drop <= kTolerance;
    result.detail = fmt("5 rows, max |avg err| %.4f, max |drop err| %.4f, tol %.2f",
                        worst_avg, worst_drop, kTolerance);
    return result;
}

// ---------------------------------------------------------------------------
// 02: the severity parameter table is exact, cell by cell.

struct ParamColumn {
    CorruptionKind kind;
    const char* key;
    std::array<double, 5> values;
};

constexpr ParamColumn kParamTable[] = {
    {CorruptionKind::GaussianNoise, "sigma", {0.04, 0.05, 0.06, 0.07, 0.08}},
    {CorruptionKind::SaltPepper, "amount", {0.005, 0.01, 0.02, 0.03, 0.05}},
    {CorruptionKind::GaussianBlur, "kernel_size", {3, 5, 7, 9, 11}},
    {CorruptionKind::MotionBlur, "kernel_size", {2, 4, 6, 8, 10}},
    {CorruptionKind::BrightnessContrast, "brightness",
     {0.0, 0.1, 0.2, 0.3, 0.4}},
    {CorruptionKind::BrightnessContrast, "contrast", {1.0, 0.8, 0.6, 0.4, 0.2}},
    {CorruptionKind::Cloud, "threshold", {0.90, 0.85, 0.80, 0.75, 0.70}},
    {CorruptionKind::Haze, "intensity", {0.20, 0.30, 0.40, 0.50, 0.60}},
    {CorruptionKind::DataGaps, "num_gaps", {2, 3, 4, 5, 6}},
    {CorruptionKind::DataGaps, "gap_width", {3, 4, 5, 6, 7}},
    {CorruptionKind::Compression, "quality", {30, 25, 20, 15, 10}},
    {CorruptionKind::Rotate, "angle_deg", {30, 45, 60, 75, 90}},
    {CorruptionKind::Scale, "ratio", {0.9, 0.8, 0.7, 0.6, 0.5}},
    {CorruptionKind::Translate, "displacement", {15, 20, 25, 30, 35}},
};

constexpr std::array<double, 4> kHazeExtended = {0.70, 0.80, 0.90, 0.95};

CheckResult check_severity_table() {
    int compared = 0, mismatched = 0;
    for (const ParamColumn& column : kParamTable) {
        for (int level = 1; level <= 5; ++level) {
            const ParamMap params =
                severity_params(column.kind, Severity{level});
            ++compared;
            const auto it = params.find(column.key);
            if (it == params.end() ||
                it->second != column.values[static_cast<std::size_t>(level - 1)]) {
                ++mismatched;
            }
        }
    }
    for (int level = 6; level <= 9; ++level) {
        const ParamMap params =
            severity_params(CorruptionKind::Haze, Severity{level});
        ++compared;
        const auto it = params.find("intensity");
        if (it == params.end() ||
            it->second != kHazeExtended[static_cast<std::size_t>(level - 6)]) {
            ++mismatched;
        }
    }
    CheckResult result;
    result.ok = mismatched == 0;
    result.detail =
        fmt("%d parameter cells compared bit-exactly, %d mismatched", compared,
            mismatched);
    return result;
}

// ---------------------------------------------------------------------------
// 03: neutral settings are byte-exact identities on an 8-bit fixture.

CheckResult check_identity_settings() {
    const ImageRaster scene = testsupport::synthetic_scene(512, 512, 3, 1001);
    const std::vector<std::uint8_t> bytes = raster_to_bytes(scene);
    const ImageRaster img = raster_from_bytes(512, 512, 3, bytes);

    std::vector<std::string> broken;
    auto expect_identity = [&](const char* name, const ImageRaster& out) {
        if (raster_to_bytes(out) != bytes) broken.emplace_back(name);
    };

    const ParamMap b1 =
        severity_params(CorruptionKind::BrightnessContrast, Severity{1});
    expect_identity("brightness_contrast level 1",
                    corrupt::brightness_contrast(img, b1.at("brightness"),
                                                 b1.at("contrast")));
    expect_identity("haze intensity 0", corrupt::haze(img, 0.0));
    {
        RngStream rng = derive_stream(3, "identity", CorruptionKind::GaussianNoise,
                                      Severity{1});
        expect_identity("gaussian_noise sigma 0",
                        corrupt::gaussian_noise(img, 0.0, rng));
    }
    {
        RngStream rng = derive_stream(3, "identity", CorruptionKind::SaltPepper,
                                      Severity{1});
        expect_identity("salt_pepper amount 0",
                        corrupt::salt_pepper(img, 0.0, rng));
    }
    expect_identity("scale ratio 1", corrupt::scale(img, 1.0));
    expect_identity("translate (0, 0)", corrupt::translate(img, 0.0, 0.0));

    CheckResult result;
    result.ok = broken.empty();
    if (broken.empty()) {
        result.detail = "6 neutral settings byte-identical on 512x512x3";
    } else {
        result.detail = "broken:";
        for (const std::string& name : broken) result.detail += " " + name;
    }
    return result;
}

// ---------------------------------------------------------------------------
// 04: stochastic corruptions hit their documented statistics exactly.

CheckResult check_stochastic_statistics() {
    constexpr double kSigma = 0.08;
    constexpr double kSigmaTolerance = 0.005;

    const ImageRaster flat(256, 256, 1, 0.5f);
    RngStream noise_rng =
        derive_stream(11, "stats", CorruptionKind::GaussianNoise, Severity{5});
    const ImageRaster noisy = corrupt::gaussian_noise(flat, kSigma, noise_rng);
    const double stddev = testsupport::raster_stddev(noisy);
    const bool noise_ok = std::abs(stddev - kSigma) <= kSigmaTolerance;

    constexpr double kAmount = 0.05;
    RngStream sp_rng =
        derive_stream(11, "stats", CorruptionKind::SaltPepper, Severity{5});
    const ImageRaster speckled = corrupt::salt_pepper(flat, kAmount, sp_rng);
    long changed = 0;
    bool values_binary = true;
    for (float v : speckled.data) {
        if (v != 0.5f) {
            ++changed;
            if (v != 0.0f && v != 1.0f) values_binary = false;
        }
    }
    const long expected_sites =
        std::lround(kAmount * 256.0 * 256.0);
    const bool sp_ok = changed == expected_sites && values_binary;

    const ImageRaster scene = testsupport::synthetic_scene(256, 128, 1, 1002);
    const ParamMap gaps =
        severity_params(CorruptionKind::DataGaps, Severity{5});
    const int num_gaps = static_cast<int>(gaps.at("num_gaps"));
    const int gap_width = static_cast<int>(gaps.at("gap_width"));
    RngStream gap_rng =
        derive_stream(11, "stats", CorruptionKind::DataGaps, Severity{5});
    const ImageRaster gapped =
        corrupt::data_gaps(scene, num_gaps, gap_width, gap_rng);
    int zero_columns = 0;
    for (int x = 0; x < gapped.width; ++x) {
        bool all_zero = true;
        for (int y = 0; y < gapped.height && all_zero; ++y) {
            all_zero = gapped.at(x, y, 0) == 0.0f;
        }
        if (all_zero) ++zero_columns;
    }
    const bool gaps_ok = zero_columns == num_gaps * gap_width;

    CheckResult result;
    result.ok = noise_ok && sp_ok && gaps_ok;
    result.detail = fmt(
        "noise stddev %.4f (target %.2f +- %.3f); salt-pepper %ld/%ld sites; "
        "%d/%d zero columns",
        stddev, kSigma, kSigmaTolerance, changed, expected_sites, zero_columns,
        num_gaps * gap_width);
    return result;
}

// ---------------------------------------------------------------------------
// 05: geometric pixels and the affine maps agree.

CheckResult check_geometric_agreement() {
    const ImageRaster img = testsupport::synthetic_scene(128, 128, 3, 2002);
    const ImageRaster turned = corrupt::rotate(img, 90.0);
    long mismatches = 0;
    for (int y = 0; y < 128; ++y) {
        for (int x = 0; x < 128; ++x) {
            for (int c = 0; c < 3; ++c) {
                if (turned.at(x, y, c) != img.at(y, 127 - x, c)) ++mismatches;
            }
        }
    }

    // One-hot pixel tracking: the brightest warped pixel must land within
    // one pixel of the forward-mapped point.
    constexpr double kPixelTolerance = 1.0;
    RngStream rng(hash64("acceptance geometric cases"));
    int tracked = 0;
    double worst_gap = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int severity = 1 + trial % 5;
        ImageRaster dark(100, 100, 1, 0.05f);
        corrupt::AffineMap warp;
        int px = 0, py = 0;
        if (trial % 3 == 0) {
            px = static_cast<int>(rng.uniform_int(30, 69));
            py = static_cast<int>(rng.uniform_int(30, 69));
            const double angle =
                severity_params(CorruptionKind::Rotate, Severity{severity})
                    .at("angle_deg");
            warp = corrupt::rotate_warp(100, 100, angle);
        } else if (trial % 3 == 1) {
            px = static_cast<int>(rng.uniform_int(10, 89));
            py = static_cast<int>(rng.uniform_int(10, 89));
            const double ratio =
                severity_params(CorruptionKind::Scale, Severity{severity})
                    .at("ratio");
            warp = corrupt::scale_warp(100, 100, ratio);
        } else {
            px = static_cast<int>(rng.uniform_int(40, 59));
            py = static_cast<int>(rng.uniform_int(40, 59));
            const int bound = static_cast<int>(
                severity_params(CorruptionKind::Translate, Severity{severity})
                    .at("displacement"));
            const double dx = static_cast<double>(rng.uniform_int(-bound, bound));
            const double dy = static_cast<double>(rng.uniform_int(-bound, bound));
            warp = corrupt::translate_warp(dx, dy);
        }
        dark.at(px, py, 0) = 1.0f;
        const ImageRaster moved = corrupt::warp_image(dark, warp);
        const Point2 expected = warp.inverse().apply(
            {static_cast<double>(px), static_cast<double>(py)});

        int bx = 0, by = 0;
        float best = -1.0f;
        for (int y = 0; y < moved.height; ++y) {
            for (int x = 0; x < moved.width; ++x) {
                if (moved.at(x, y, 0) > best) {
                    best = moved.at(x, y, 0);
                    bx = x;
                    by = y;
                }
            }
        }
        const double gap = std::hypot(bx - expected.x, by - expected.y);
        worst_gap = std::max(worst_gap, gap);
        ++tracked;
    }

    CheckResult result;
    result.ok = mismatches == 0 && tracked == 20 && worst_gap <= kPixelTolerance;
    result.detail =
        fmt("quarter turn: %ld mismatched samples; %d tracked points, worst "
            "gap %.3fpx (tol %.1f)",
            mismatches, tracked, worst_gap, kPixelTolerance);
    return result;
}

// ---------------------------------------------------------------------------
// 06: the generated tree is invariant to the worker count.

CheckResult check_worker_invariance() {
    testsupport::TempDir data("acc_workers_data");
    testsupport::TempDir out("acc_workers_out");
    testsupport::write_class_dataset(data.path(), {"north", "south"}, 5, 96,
                                     4004);

    auto make_plan = [&](const std::filesystem::path& root, int workers) {
        pipeline::GenerationPlan plan;
        plan.manifest = pipeline::ingest(data.path(),
                                         pipeline::TaskKind::Classification,
                                         pipeline::AnnotationFormat::ClassFolders);
        plan.manifest.seed = 77;
        plan.manifest.grid.kinds = {CorruptionKind::GaussianNoise,
                                    CorruptionKind::Cloud,
                                    CorruptionKind::Rotate};
        plan.manifest.grid.severity_lo = 1;
        plan.manifest.grid.severity_hi = 5;
        plan.output_root = root;
        plan.workers = workers;
        return plan;
    };

    const pipeline::GenerationReport serial =
        pipeline::generate(make_plan(out.path() / "w1", 1));
    const pipeline::GenerationReport parallel =
        pipeline::generate(make_plan(out.path() / "w8", 8));

    const auto tree_a = testsupport::hash_tree(out.path() / "w1");
    const auto tree_b = testsupport::hash_tree(out.path() / "w8");

    CheckResult result;
    result.ok = serial.failures.empty() && parallel.failures.empty() &&
                serial.images_written == 150 &&
                parallel.images_written == 150 && tree_a == tree_b;
    result.detail = fmt(
        "10 images x 3 kinds x 5 severities: %zu vs %zu written, trees %s "
        "(%zu files)",
        serial.images_written, parallel.images_written,
        tree_a == tree_b ? "identical" : "DIFFER", tree_a.size());
    return result;
}

// ---------------------------------------------------------------------------
// 07: task metrics match independent oracles.

CheckResult check_metric_oracles() {
    constexpr double kIouTolerance = 0.01;
    RngStream rng(hash64("acceptance metric oracles"));
    double worst_iou_gap = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const Quad qa = testsupport::random_convex_quad(rng, 5.0, 5.0, 2.0, 4.0);
        const Quad qb = testsupport::random_convex_quad(
            rng, 5.0 + rng.uniform() * 3.0, 5.0 + rng.uniform() * 3.0, 2.0, 4.0);
        const std::vector<Point2> pa(qa.begin(), qa.end());
        const std::vector<Point2> pb(qb.begin(), qb.end());
        const double exact = metrics::polygon_iou(pa, pb);
        const double sampled = testsupport::mc_polygon_iou(pa, pb, 200000, rng);
        worst_iou_gap = std::max(worst_iou_gap, std::abs(exact - sampled));
    }
    const bool iou_ok = worst_iou_gap <= kIouTolerance;

    // Detection suites: every instance holds at most 5 detections; the exact
    // PR-curve oracle must agree to machine precision.
    constexpr double kApTolerance = 1e-9;
    double worst_ap_gap = 0.0;
    int suites = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const int num_classes = 1 + static_cast<int>(rng.uniform_int(0, 1));
        std::vector<metrics::GtBox> gts;
        std::vector<metrics::Detection> dets;
        const int num_images = 1 + static_cast<int>(rng.uniform_int(0, 1));
        auto grid_box = [&](int cell_x, int cell_y, double jitter) {
            Quad q;
            const double x0 = cell_x * 10.0 + jitter;
            const double y0 = cell_y * 10.0 + jitter;
            q[0] = {x0, y0};
            q[1] = {x0 + 10.0, y0};
            q[2] = {x0 + 10.0, y0 + 10.0};
            q[3] = {x0, y0 + 10.0};
            return q;
        };
        const int num_gts = 1 + static_cast<int>(rng.uniform_int(0, 3));
        for (int g = 0; g < num_gts; ++g) {
            metrics::GtBox gt;
            gt.image_id = "img" + std::to_string(rng.uniform_int(0, num_images - 1));
            gt.corners = grid_box(static_cast<int>(rng.uniform_int(0, 3)),
                                  static_cast<int>(rng.uniform_int(0, 3)), 0.0);
            gt.category_id = static_cast<int>(rng.uniform_int(0, num_classes - 1));
            gts.push_back(std::move(gt));
        }
        const int num_dets = 1 + static_cast<int>(rng.uniform_int(0, 4));
        for (int d = 0; d < num_dets; ++d) {
            metrics::Detection det;
            det.image_id = "img" + std::to_string(rng.uniform_int(0, num_images - 1));
            det.corners = grid_box(static_cast<int>(rng.uniform_int(0, 3)),
                                   static_cast<int>(rng.uniform_int(0, 3)),
                                   rng.uniform() * 2.0 - 1.0);
            det.category_id = static_cast<int>(rng.uniform_int(0, num_classes - 1));
            det.confidence = 0.25 * static_cast<double>(rng.uniform_int(1, 4));
            dets.push_back(std::move(det));
        }
        const double fast = metrics::mean_ap(dets, gts, num_classes);
        const double slow =
            testsupport::bruteforce_mean_ap(dets, gts, num_classes, 0.5);
        worst_ap_gap = std::max(worst_ap_gap, std::abs(fast - slow));
        ++suites;
    }
    const bool ap_ok = worst_ap_gap <= kApTolerance;

    // 2x2 class-mask fixture: IoU(class 0) = 1/2, IoU(class 1) = 2/3.
    constexpr double kMiouTolerance = 0.01;
    SegMask truth;
    truth.width = 2;
    truth.height = 2;
    truth.classes = {0, 0, 1, 1};
    SegMask pred = truth;
    pred.classes = {0, 1, 1, 1};
    metrics::ConfusionMatrix matrix(2);
    matrix.add(pred, truth);
    const double miou = matrix.miou();
    const bool miou_ok = std::abs(miou - 58.33) <= kMiouTolerance;

    CheckResult result;
    result.ok = iou_ok && ap_ok && miou_ok;
    result.detail = fmt(
        "IoU worst |err| %.4f/50 quads; mAP worst |err| %.2e/%d suites; "
        "mIoU %.4f (target 58.33 +- %.2f)",
        worst_iou_gap, worst_ap_gap, suites, miou, kMiouTolerance);
    return result;
}

// ---------------------------------------------------------------------------
// 08: distribution-distance closed forms.

CheckResult check_distance_closed_forms() {
    RngStream rng(hash64("acceptance distance forms"));

    fidelity::EmbeddingSet random_set;
    random_set.count = 40;
    random_set.dim = 8;
    for (std::size_t i = 0; i < random_set.count * random_set.dim; ++i) {
        random_set.data.push_back(rng.uniform() * 4.0 - 2.0);
    }
    const double self = fidelity::frechet_distance(random_set, random_set);
    const bool self_ok = self <= 1e-10;

    auto one_dim = [](std::initializer_list<double> values) {
        fidelity::EmbeddingSet set;
        set.count = values.size();
        set.dim = 1;
        set.data.assign(values.begin(), values.end());
        return set;
    };
    const double shifted =
        fidelity::frechet_distance(one_dim({-1.0, 0.0, 1.0}),
                                   one_dim({0.0, 1.0, 2.0}));
    const bool shifted_ok = shifted == 1.0;

    // Five-point planar sets with exact covariances diag(1, 4) and diag(4, 1)
    // and equal means; the closed form gives 10 - 2 * tr(diag(2, 2)) = 2.
    fidelity::EmbeddingSet diag_a;
    diag_a.count = 5;
    diag_a.dim = 2;
    diag_a.data = {-1.0, 2.0, -1.0, -2.0, 0.0, 0.0, 1.0, -2.0, 1.0, 2.0};
    fidelity::EmbeddingSet diag_b;
    diag_b.count = 5;
    diag_b.dim = 2;
    diag_b.data = {2.0, -1.0, -2.0, -1.0, 0.0, 0.0, -2.0, 1.0, 2.0, 1.0};
    const double commuting = fidelity::frechet_distance(diag_a, diag_b);
    const bool commuting_ok = std::abs(commuting - 2.0) <= 1e-8;

    constexpr double kFrobeniusTolerance = 1e-8;
    double worst_frobenius = 0.0;
    for (const std::size_t dim : {std::size_t{8}, std::size_t{33},
                                  std::size_t{64}}) {
        std::vector<double> b(dim * dim);
        for (double& v : b) v = rng.uniform() * 2.0 - 1.0;
        std::vector<double> a(dim * dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                double sum = 0.0;
                for (std::size_t k = 0; k < dim; ++k) {
                    sum += b[i * dim + k] * b[j * dim + k];
                }
                a[i * dim + j] = sum + (i == j ? 0.05 : 0.0);
            }
        }
        const std::vector<double> root = fidelity::matrix_sqrt_psd(a, dim);
        double frobenius = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                double sum = 0.0;
                for (std::size_t k = 0; k < dim; ++k) {
                    sum += root[i * dim + k] * root[k * dim + j];
                }
                const double err = sum - a[i * dim + j];
                frobenius += err * err;
            }
        }
        worst_frobenius = std::max(worst_frobenius, std::sqrt(frobenius));
    }
    const bool sqrt_ok = worst_frobenius <= kFrobeniusTolerance;

    CheckResult result;
    result.ok = self_ok && shifted_ok && commuting_ok && sqrt_ok;
    result.detail = fmt(
        "d(a,a)=%.2e; 1-D shift d=%.17g (want exactly 1); commuting d=%.10f; "
        "sqrt worst Frobenius %.2e (tol 1e-8)",
        self, shifted, commuting, worst_frobenius);
    return result;
}

// ---------------------------------------------------------------------------
// 09: embedding distance grows strictly with severity.

CheckResult check_fidelity_monotonic() {
    constexpr int kCorpus = 200;
    std::vector<ImageRaster> clean_images;
    clean_images.reserve(kCorpus);
    for (int i = 0; i < kCorpus; ++i) {
        clean_images.push_back(testsupport::synthetic_scene(64, 64, 3, 3000 + i));
    }
    const fidelity::EmbeddingSet clean =
        fidelity::pixel_embedding_set(clean_images);

    auto sweep_for = [&](CorruptionKind kind) {
        std::vector<fidelity::EmbeddingSet> per_level;
        std::vector<int> levels;
        for (int level = 1; level <= 5; ++level) {
            std::vector<ImageRaster> corrupted;
            corrupted.reserve(kCorpus);
            CorruptionSpec spec;
            spec.kind = kind;
            spec.severity = Severity{level};
            for (int i = 0; i < kCorpus; ++i) {
                corrupted.push_back(pipeline::apply_spec(
                    clean_images[static_cast<std::size_t>(i)], spec, 42,
                    "img" + std::to_string(i)));
            }
            per_level.push_back(fidelity::pixel_embedding_set(corrupted));
            levels.push_back(level);
        }
        return fidelity::severity_sweep(clean, per_level, levels);
    };

    const fidelity::SeveritySweep noise = sweep_for(CorruptionKind::GaussianNoise);
    const fidelity::SeveritySweep haze = sweep_for(CorruptionKind::Haze);

    CheckResult result;
    result.ok = noise.strictly_increasing() && haze.strictly_increasing();
    result.detail = fmt(
        "%d images; gaussian_noise d1..d5 = %.4f..%.4f %s; haze d1..d5 = "
        "%.4f..%.4f %s",
        kCorpus, noise.distances.front(), noise.distances.back(),
        noise.strictly_increasing() ? "strictly increasing" : "NOT monotone",
        haze.distances.front(), haze.distances.back(),
        haze.strictly_increasing() ? "strictly increasing" : "NOT monotone");
    return result;
}

// ---------------------------------------------------------------------------
// 10: a compound chain hurts a noise-sensitive scorer at least as much as
// each of its members alone.

CheckResult check_compound_chain() {
    constexpr int kImages = 8;
    std::vector<ImageRaster> clean;
    for (int i = 0; i < kImages; ++i) {
        clean.push_back(testsupport::synthetic_scene(96, 96, 3, 7000 + i));
    }

    // Toy scorer: 100 * max(0, 1 - 2 * mean absolute deviation from clean).
    auto score_under = [&](const pipeline::CorruptionChain& chain) {
        double deviation_sum = 0.0;
        std::size_t samples = 0;
        for (int i = 0; i < kImages; ++i) {
            const pipeline::ChainResult result = pipeline::apply_chain(
                clean[static_cast<std::size_t>(i)], std::nullopt, chain, 1729,
                "img" + std::to_string(i));
            const ImageRaster& original = clean[static_cast<std::size_t>(i)];
            for (std::size_t s = 0; s < original.data.size(); ++s) {
                deviation_sum += std::abs(result.image.data[s] -
                                          original.data[s]);
            }
            samples += original.data.size();
        }
        const double mad = deviation_sum / static_cast<double>(samples);
        return 100.0 * std::max(0.0, 1.0 - 2.0 * mad);
    };

    const double full =
        score_under(pipeline::parse_chain("brightness:3,cloud:3,compression:3"));
    const double brightness = score_under(pipeline::parse_chain("brightness:3"));
    const double cloud = score_under(pipeline::parse_chain("cloud:3"));
    const double compression =
        score_under(pipeline::parse_chain("compression:3"));

    CheckResult result;
    result.ok =
        full <= brightness && full <= cloud && full <= compression;
    result.detail = fmt(
        "chain %.2f vs singles: brightness %.2f, cloud %.2f, compression %.2f",
        full, brightness, cloud, compression);
    return result;
}

// ---------------------------------------------------------------------------
// 11: full-grid throughput on a realistic corpus.

CheckResult check_throughput() {
    constexpr double kBudgetSeconds = 300.0;
    testsupport::TempDir data("acc_throughput_data");
    testsupport::TempDir out("acc_throughput_out");
    for (int i = 0; i < 100; ++i) {
        const ImageRaster scene =
            testsupport::synthetic_scene(512, 512, 3, 9000 + i);
        char name[32];
        std::snprintf(name, sizeof name, "img%03d.jpg", i);
        save_image(scene, data.path() / name);
    }

    pipeline::GenerationPlan plan;
    plan.manifest = pipeline::ingest(data.path(),
                                     pipeline::TaskKind::Classification,
                                     pipeline::AnnotationFormat::None);
    plan.manifest.seed = 1729;
    plan.manifest.grid.kinds = std::vector<CorruptionKind>(
        all_corruption_kinds().begin(), all_corruption_kinds().end());
    plan.manifest.grid.severity_lo = 1;
    plan.manifest.grid.severity_hi = 5;
    plan.output_root = out.path() / "tree";
    plan.workers = 8;

    const auto start = Clock::now();
    const pipeline::GenerationReport report = pipeline::generate(plan);
    const double elapsed = seconds_since(start);

    CheckResult result;
    result.ok = report.failures.empty() && report.images_written == 6000 &&
                elapsed <= kBudgetSeconds;
    result.detail = fmt(
        "100 x 512x512 images, 12 kinds x 5 severities: %zu written, %zu "
        "failed, %.1fs (budget %.0fs)",
        report.images_written, report.failures.size(), elapsed, kBudgetSeconds);
    return result;
}

// ---------------------------------------------------------------------------

void run_check(int index, const char* name, double budget_seconds,
               CheckResult (*fn)(), int& failures) {
    const auto start = Clock::now();
    CheckResult result;
    try {
        result = fn();
    } catch (const std::exception& e) {
        result.ok = false;
        result.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = seconds_since(start);

    bool ok = result.ok;
    std::string timing = fmt(" [%.2fs", elapsed);
    if (budget_seconds > 0.0) {
        if (elapsed > budget_seconds) ok = false;
        timing += fmt(", budget %.0fs", budget_seconds);
    }
    timing += "]";

    std::printf("[%s] %02d %s: %s%s\n", ok ? "PASS" : "FAIL", index, name,
                result.detail.c_str(), timing.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

}  // namespace

int main() {
    int failures = 0;
    run_check(1, "reference robustness rows reproduced", 1.0,
              check_reference_table, failures);
    run_check(2, "severity parameter table exact", 1.0, check_severity_table,
              failures);
    run_check(3, "neutral settings are byte identities", 0.0,
              check_identity_settings, failures);
    run_check(4, "stochastic corruption statistics", 5.0,
              check_stochastic_statistics, failures);
    run_check(5, "geometric warps agree with their maps", 0.0,
              check_geometric_agreement, failures);
    run_check(6, "worker count leaves bytes unchanged", 30.0,
              check_worker_invariance, failures);
    run_check(7, "task metrics match independent oracles", 0.0,
              check_metric_oracles, failures);
    run_check(8, "distribution distance closed forms", 5.0,
              check_distance_closed_forms, failures);
    run_check(9, "embedding distance grows with severity", 60.0,
              check_fidelity_monotonic, failures);
    run_check(10, "compound chain scores below its members", 0.0,
              check_compound_chain, failures);
    run_check(11, "full-grid synthesis throughput", 0.0, check_throughput,
              failures);

    std::printf("%d of 11 checks passed\n", 11 - failures);
    return failures;
}
