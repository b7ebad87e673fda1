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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reobench/corruption.hpp"
#include "reobench/error.hpp"
#include "reobench/fidelity/embedding_io.hpp"
#include "reobench/fidelity/frechet.hpp"
#include "reobench/image_io.hpp"
#include "reobench/metrics/report.hpp"
#include "reobench/metrics/scoring.hpp"
#include "reobench/pipeline/chain.hpp"
#include "reobench/pipeline/generate.hpp"
#include "reobench/pipeline/manifest.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace reobench;

/// Fixed so that bare invocations are reproducible run to run.
constexpr std::uint64_t kDefaultSeed = 1729;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;

struct CorruptArgs {
    std::string input;
    std::string out;
    std::string task = "classification";
    std::string format = "none";
    std::string types;
    std::string severities = "1-5";
    std::string chain;
    std::uint64_t seed = kDefaultSeed;
    int workers = 0;
};

struct ScoreArgs {
    std::string task;
    std::string manifest;
    std::string predictions;
    std::string model = "model";
    std::string kind = "clean";
    int severity = 0;
    int num_classes = 0;
    std::string out;
};

struct ReportArgs {
    std::string cells_dir;
    std::string format = "csv";
    std::string policy = "mean";
    int single_level = 1;
    std::string out;
    std::string curves;
};

struct FidelityArgs {
    std::string clean;
    std::vector<std::string> corrupted;
    std::vector<int> levels;
    std::string out;
};

struct ManifestArgs {
    std::string input;
    std::string task = "classification";
    std::string format = "none";
    std::string types;
    std::string severities = "1-5";
    std::uint64_t seed = kDefaultSeed;
    std::string out;
};

std::pair<int, int> parse_severity_range(const std::string& text) {
    const auto dash = text.find('-');
    try {
        if (dash == std::string::npos) {
            const int level = std::stoi(text);
            return {level, level};
        }
        return {std::stoi(text.substr(0, dash)),
                std::stoi(text.substr(dash + 1))};
    } catch (const std::exception&) {
        raise(ErrorCode::InvalidArgument,
              "bad severity range '" + text + "'; expected N or LO-HI");
    }
}

std::vector<CorruptionKind> parse_kind_list(const std::string& text) {
    std::vector<CorruptionKind> kinds;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        const auto kind = parse_kind(token);
        if (!kind) {
            std::string names;
            for (CorruptionKind k : all_corruption_kinds()) {
                if (!names.empty()) names += ", ";
                names += kind_name(k);
            }
            raise(ErrorCode::UnknownCorruption,
                  "unknown corruption '" + token + "'; valid names: " + names);
        }
        kinds.push_back(*kind);
    }
    return kinds;
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

pipeline::DatasetManifest load_or_ingest(const std::string& input,
                                         const std::string& task,
                                         const std::string& format) {
    const fs::path path(input);
    if (fs::is_directory(path)) {
        return pipeline::ingest(path, pipeline::parse_task(task),
                                pipeline::parse_annotation_format(format));
    }
    if (fs::is_regular_file(path)) {
        return pipeline::load_manifest(path);
    }
    raise(ErrorCode::IoError, input + " is neither a directory nor a file");
}

int run_corrupt(const CorruptArgs& args) {
    pipeline::DatasetManifest manifest =
        load_or_ingest(args.input, args.task, args.format);
    manifest.seed = args.seed;
    if (!args.types.empty()) {
        manifest.grid.kinds = parse_kind_list(args.types);
    }
    const auto [lo, hi] = parse_severity_range(args.severities);
    manifest.grid.severity_lo = lo;
    manifest.grid.severity_hi = hi;

    pipeline::GenerationPlan plan;
    plan.manifest = std::move(manifest);
    plan.output_root = args.out;
    plan.workers = resolve_workers(args.workers);
    if (!args.chain.empty()) {
        plan.chains.push_back(pipeline::parse_chain(args.chain));
    }

    const std::vector<pipeline::CorruptionChain> chains =
        plan.chains.empty() ? pipeline::grid_chains(plan.manifest)
                            : plan.chains;
    for (const auto& chain : chains) {
        std::cerr << "corrupt: " << chain.label() << " x "
                  << plan.manifest.images.size() << " images\n";
    }

    const pipeline::GenerationReport report = pipeline::generate(plan);
    for (const auto& failure : report.failures) {
        std::cerr << "failed: " << failure.image_id << ": " << failure.message
                  << "\n";
    }
    std::cerr << "provenance: " << report.provenance_path.string() << "\n";
    std::cout << "written=" << report.images_written
              << " failures=" << report.failures.size() << "\n";
    return report.failures.empty() ? kExitOk : kExitPartial;
}

std::vector<json> read_jsonl(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        raise(ErrorCode::IoError, "cannot open " + path.string());
    }
    std::vector<json> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            records.push_back(json::parse(line));
        } catch (const json::exception& e) {
            raise(ErrorCode::AnnotationParseError,
                  path.string() + ":" + std::to_string(line_no) + ": " +
                      e.what());
        }
    }
    return records;
}

double score_classification(const pipeline::DatasetManifest& manifest,
                            const std::vector<json>& records) {
    std::set<std::string> names;
    std::map<std::string, std::string> truth_names;
    for (const auto& entry : manifest.images) {
        const auto ann = pipeline::load_annotation(entry, manifest.format);
        const auto& label = std::get<ClassLabel>(ann);
        names.insert(label.category);
        truth_names[entry.id] = label.category;
    }
    std::map<std::string, int> ids;
    int next = 0;
    for (const std::string& name : names) ids[name] = next++;

    std::vector<metrics::LabelPrediction> preds, gts;
    for (const auto& [id, name] : truth_names) {
        gts.push_back({id, ids.at(name)});
    }
    for (const json& r : records) {
        metrics::LabelPrediction pred;
        pred.image_id = r.at("id").get<std::string>();
        if (r.contains("category_id")) {
            pred.category_id = r.at("category_id").get<int>();
        } else {
            const auto it = ids.find(r.at("category").get<std::string>());
            pred.category_id = it == ids.end() ? -1 : it->second;
        }
        preds.push_back(std::move(pred));
    }
    return metrics::accuracy(preds, gts);
}

SegMask mask_from_file(const fs::path& path) {
    const ImageRaster raster = load_image(path);
    if (raster.channels != 1) {
        raise(ErrorCode::AnnotationParseError,
              path.string() + ": class masks must be single-channel");
    }
    SegMask mask;
    mask.width = raster.width;
    mask.height = raster.height;
    mask.classes = raster_to_bytes(raster);
    return mask;
}

double score_segmentation(const pipeline::DatasetManifest& manifest,
                          const std::vector<json>& records, int num_classes) {
    std::map<std::string, fs::path> pred_masks;
    for (const json& r : records) {
        pred_masks[r.at("id").get<std::string>()] =
            fs::path(r.at("mask").get<std::string>());
    }
    std::vector<std::pair<SegMask, SegMask>> pairs;
    int max_class = 0;
    for (const auto& entry : manifest.images) {
        const auto it = pred_masks.find(entry.id);
        if (it == pred_masks.end()) {
            raise(ErrorCode::IdMismatch,
                  "no predicted mask for image '" + entry.id + "'");
        }
        const auto ann = pipeline::load_annotation(entry, manifest.format);
        SegMask truth = std::get<SegMask>(ann);
        SegMask pred = mask_from_file(it->second);
        for (std::uint8_t v : truth.classes) max_class = std::max<int>(max_class, v);
        for (std::uint8_t v : pred.classes) max_class = std::max<int>(max_class, v);
        pairs.emplace_back(std::move(pred), std::move(truth));
    }
    const int classes = num_classes > 0 ? num_classes : max_class + 1;
    metrics::ConfusionMatrix matrix(classes);
    for (const auto& [pred, truth] : pairs) matrix.add(pred, truth);
    return matrix.miou();
}

double score_detection(const pipeline::DatasetManifest& manifest,
                       const std::vector<json>& records) {
    std::map<std::string, int> ids;
    auto id_of = [&](const std::string& name) {
        const auto [it, inserted] = ids.try_emplace(
            name, static_cast<int>(ids.size()));
        (void)inserted;
        return it->second;
    };

    std::vector<metrics::GtBox> gts;
    for (const auto& entry : manifest.images) {
        const auto ann = pipeline::load_annotation(entry, manifest.format);
        for (const OrientedBox& box : std::get<OrientedBoxes>(ann).boxes) {
            metrics::GtBox gt;
            gt.image_id = entry.id;
            gt.corners = box.corners;
            gt.category_id = id_of(box.category);
            gts.push_back(std::move(gt));
        }
    }
    std::vector<metrics::Detection> dets;
    for (const json& r : records) {
        const std::string image_id = r.at("id").get<std::string>();
        for (const json& d : r.at("detections")) {
            metrics::Detection det;
            det.image_id = image_id;
            const auto coords = d.at("obb").get<std::vector<double>>();
            if (coords.size() != 8) {
                raise(ErrorCode::AnnotationParseError,
                      "detection for '" + image_id +
                          "' needs 8 obb coordinates");
            }
            for (int i = 0; i < 4; ++i) {
                det.corners[i] = {coords[2 * i], coords[2 * i + 1]};
            }
            det.category_id = id_of(d.at("category").get<std::string>());
            det.confidence = d.at("confidence").get<double>();
            dets.push_back(std::move(det));
        }
    }
    return metrics::mean_ap(dets, gts, std::max<int>(1, ids.size()));
}

double score_grounding(const pipeline::DatasetManifest& manifest,
                       const std::vector<json>& records) {
    // Predictions carry (id, index, bbox); a missing pair counts as a miss.
    std::map<std::pair<std::string, int>, HorizontalBox> preds;
    for (const json& r : records) {
        HorizontalBox box;
        const auto coords = r.at("bbox").get<std::vector<double>>();
        if (coords.size() != 4) {
            raise(ErrorCode::AnnotationParseError,
                  "grounding prediction needs [xmin, ymin, xmax, ymax]");
        }
        box.xmin = coords[0];
        box.ymin = coords[1];
        box.xmax = coords[2];
        box.ymax = coords[3];
        preds[{r.at("id").get<std::string>(), r.value("index", 0)}] = box;
    }
    std::vector<metrics::GroundingPair> pairs;
    for (const auto& entry : manifest.images) {
        const auto ann = pipeline::load_annotation(entry, manifest.format);
        const auto& refs = std::get<ReferringRecords>(ann);
        for (std::size_t i = 0; i < refs.records.size(); ++i) {
            metrics::GroundingPair pair;
            const auto& box = refs.records[i].box;
            pair.truth = std::holds_alternative<HorizontalBox>(box)
                             ? std::get<HorizontalBox>(box)
                             : quad_hull(std::get<OrientedBox>(box).corners);
            const auto it = preds.find({entry.id, static_cast<int>(i)});
            if (it != preds.end()) pair.predicted = it->second;
            pairs.push_back(std::move(pair));
        }
    }
    return metrics::grounding_accuracy(pairs);
}

double score_scalar(const pipeline::DatasetManifest& manifest,
                    const std::vector<json>& records) {
    std::map<std::string, double> scores;
    for (const json& r : records) {
        scores[r.at("id").get<std::string>()] = r.at("score").get<double>();
    }
    double sum = 0.0;
    for (const auto& entry : manifest.images) {
        const auto it = scores.find(entry.id);
        if (it == scores.end()) {
            raise(ErrorCode::IdMismatch,
                  "no score for image '" + entry.id + "'");
        }
        sum += it->second;
    }
    if (manifest.images.empty()) {
        raise(ErrorCode::IdMismatch, "manifest holds no images");
    }
    return sum / static_cast<double>(manifest.images.size());
}

int run_score(const ScoreArgs& args) {
    const pipeline::DatasetManifest manifest =
        pipeline::load_manifest(args.manifest);
    const std::vector<json> records = read_jsonl(args.predictions);
    const pipeline::TaskKind task = pipeline::parse_task(args.task);

    double value = 0.0;
    switch (task) {
        case pipeline::TaskKind::Classification:
            value = score_classification(manifest, records);
            break;
        case pipeline::TaskKind::Segmentation:
            value = score_segmentation(manifest, records, args.num_classes);
            break;
        case pipeline::TaskKind::Detection:
            value = score_detection(manifest, records);
            break;
        case pipeline::TaskKind::Grounding:
            value = score_grounding(manifest, records);
            break;
        case pipeline::TaskKind::Captioning:
        case pipeline::TaskKind::Vqa:
            value = score_scalar(manifest, records);
            break;
    }

    if (!args.out.empty()) {
        metrics::ScoreCellRecord record;
        record.model = args.model;
        record.task = std::string(pipeline::task_name(task));
        if (args.kind != "clean") {
            const auto kind = parse_kind(args.kind);
            if (!kind) {
                raise(ErrorCode::UnknownCorruption,
                      "unknown corruption '" + args.kind + "'");
            }
            record.kind = *kind;
            record.severity = args.severity > 0
                                  ? std::optional<int>(args.severity)
                                  : std::nullopt;
        }
        record.score = value;
        std::ofstream out(args.out, std::ios::trunc);
        if (!out) {
            raise(ErrorCode::IoError, "cannot write " + args.out);
        }
        out << metrics::score_cell_to_json(record);
    }
    std::printf("%.2f\n", value);
    return kExitOk;
}

int run_report(const ReportArgs& args) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(args.cells_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        raise(ErrorCode::EmptyCellSet,
              "no .json score cells in " + args.cells_dir);
    }
    std::vector<metrics::ScoreCellRecord> cells;
    for (const auto& file : files) {
        std::ifstream in(file);
        std::ostringstream buf;
        buf << in.rdbuf();
        cells.push_back(metrics::score_cell_from_json(buf.str()));
    }

    metrics::AggregatePolicy policy = metrics::AggregatePolicy::Mean;
    if (args.policy == "worst") {
        policy = metrics::AggregatePolicy::Worst;
    } else if (args.policy == "single") {
        policy = metrics::AggregatePolicy::Single;
    } else if (args.policy != "mean") {
        raise(ErrorCode::InvalidArgument,
              "unknown policy '" + args.policy + "'; use mean, worst or single");
    }
    const metrics::RobustnessReport report =
        metrics::assemble_report(cells, policy, args.single_level);

    std::string document;
    if (args.format == "csv") {
        document = metrics::render_csv(report);
    } else if (args.format == "markdown") {
        document = metrics::render_markdown(report);
    } else {
        raise(ErrorCode::InvalidArgument,
              "unknown format '" + args.format + "'; use csv or markdown");
    }

    if (!args.out.empty()) {
        std::ofstream out(args.out, std::ios::trunc);
        if (!out) {
            raise(ErrorCode::IoError, "cannot write " + args.out);
        }
        out << document;
    }
    if (!args.curves.empty()) {
        std::ofstream out(args.curves, std::ios::trunc);
        if (!out) {
            raise(ErrorCode::IoError, "cannot write " + args.curves);
        }
        out << metrics::render_severity_curves(report);
    }
    std::cout << document;
    return kExitOk;
}

int run_fidelity(const FidelityArgs& args) {
    const auto clean = fidelity::load_embeddings(args.clean);
    std::vector<fidelity::EmbeddingSet> corrupted;
    corrupted.reserve(args.corrupted.size());
    for (const auto& file : args.corrupted) {
        corrupted.push_back(fidelity::load_embeddings(file));
    }
    std::vector<int> levels = args.levels;
    if (levels.empty()) {
        for (std::size_t i = 0; i < corrupted.size(); ++i) {
            levels.push_back(static_cast<int>(i) + 1);
        }
    }
    const fidelity::SeveritySweep sweep =
        fidelity::severity_sweep(clean, corrupted, levels);

    std::ostringstream rows;
    for (std::size_t i = 0; i < sweep.levels.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%d,%.6f\n", sweep.levels[i],
                      sweep.distances[i]);
        rows << buf;
    }
    if (!args.out.empty()) {
        std::ofstream out(args.out, std::ios::trunc);
        if (!out) {
            raise(ErrorCode::IoError, "cannot write " + args.out);
        }
        out << "Severity,Distance\n" << rows.str();
    }
    std::cout << rows.str();
    return kExitOk;
}

int run_manifest(const ManifestArgs& args) {
    pipeline::DatasetManifest manifest =
        pipeline::ingest(args.input, pipeline::parse_task(args.task),
                         pipeline::parse_annotation_format(args.format));
    manifest.seed = args.seed;
    if (!args.types.empty()) {
        manifest.grid.kinds = parse_kind_list(args.types);
    }
    const auto [lo, hi] = parse_severity_range(args.severities);
    manifest.grid.severity_lo = lo;
    manifest.grid.severity_hi = hi;

    const std::string text = pipeline::manifest_to_json(manifest);
    if (!args.out.empty()) {
        std::ofstream out(args.out, std::ios::trunc);
        if (!out) {
            raise(ErrorCode::IoError, "cannot write " + args.out);
        }
        out << text;
        std::cerr << "manifest: " << manifest.images.size() << " images -> "
                  << args.out << "\n";
    } else {
        std::cout << text;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic corruption benchmark toolkit for "
                 "remote-sensing imagery"};
    app.require_subcommand(1);

    CorruptArgs corrupt_args;
    CLI::App* corrupt = app.add_subcommand(
        "corrupt", "generate a corrupted benchmark tree");
    corrupt->add_option("--input", corrupt_args.input,
                        "dataset directory or manifest JSON")->required();
    corrupt->add_option("--out", corrupt_args.out, "output root")->required();
    corrupt->add_option("--task", corrupt_args.task,
                        "task kind for directory ingestion");
    corrupt->add_option("--annotations", corrupt_args.format,
                        "annotation format for directory ingestion");
    corrupt->add_option("--types", corrupt_args.types,
                        "comma-separated corruption names (default: all)");
    corrupt->add_option("--severities", corrupt_args.severities,
                        "severity level or LO-HI range");
    corrupt->add_option("--chain", corrupt_args.chain,
                        "compound chain, e.g. brightness:3,cloud:3");
    corrupt->add_option("--seed", corrupt_args.seed, "global seed");
    corrupt->add_option("--workers", corrupt_args.workers,
                        "worker threads (0 = hardware)")
        ->envname("REOBENCH_WORKERS");

    ScoreArgs score_args;
    CLI::App* score = app.add_subcommand(
        "score", "score a prediction file against ground truth");
    score->add_option("--task", score_args.task, "task kind")->required();
    score->add_option("--manifest", score_args.manifest,
                      "manifest JSON with ground-truth annotations")
        ->required();
    score->add_option("--predictions", score_args.predictions,
                      "JSON-lines prediction file")->required();
    score->add_option("--model", score_args.model, "model name for the cell");
    score->add_option("--kind", score_args.kind,
                      "corruption kind of this cell, or 'clean'");
    score->add_option("--severity", score_args.severity,
                      "severity level of this cell");
    score->add_option("--classes", score_args.num_classes,
                      "segmentation class count (default: inferred)");
    score->add_option("--out", score_args.out, "score-cell JSON to write");

    ReportArgs report_args;
    CLI::App* report = app.add_subcommand(
        "report", "render a robustness table from score cells");
    report->add_option("--cells", report_args.cells_dir,
                       "directory of score-cell JSON files")->required();
    report->add_option("--format", report_args.format, "csv or markdown");
    report->add_option("--policy", report_args.policy,
                       "severity reduction: mean, worst or single");
    report->add_option("--severity", report_args.single_level,
                       "level used by --policy single");
    report->add_option("--out", report_args.out, "document file to write");
    report->add_option("--curves", report_args.curves,
                       "per-severity curve CSV to write");

    FidelityArgs fidelity_args;
    CLI::App* fidelity_cmd = app.add_subcommand(
        "fidelity", "severity sweep of embedding distances");
    fidelity_cmd->add_option("--clean", fidelity_args.clean,
                             "clean embedding file")->required();
    fidelity_cmd->add_option("--corrupted", fidelity_args.corrupted,
                             "per-severity embedding files, in level order")
        ->required()->expected(-1);
    fidelity_cmd->add_option("--levels", fidelity_args.levels,
                             "severity labels (default 1..N)")->expected(-1);
    fidelity_cmd->add_option("--out", fidelity_args.out, "CSV file to write");

    ManifestArgs manifest_args;
    CLI::App* manifest = app.add_subcommand(
        "manifest", "ingest a dataset directory into a manifest");
    manifest->add_option("--input", manifest_args.input,
                         "dataset directory")->required();
    manifest->add_option("--task", manifest_args.task, "task kind");
    manifest->add_option("--annotations", manifest_args.format,
                         "annotation format");
    manifest->add_option("--types", manifest_args.types,
                         "comma-separated corruption names");
    manifest->add_option("--severities", manifest_args.severities,
                         "severity level or LO-HI range");
    manifest->add_option("--seed", manifest_args.seed, "global seed");
    manifest->add_option("--out", manifest_args.out, "manifest file to write");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (corrupt->parsed()) return run_corrupt(corrupt_args);
        if (score->parsed()) return run_score(score_args);
        if (report->parsed()) return run_report(report_args);
        if (fidelity_cmd->parsed()) return run_fidelity(fidelity_args);
        if (manifest->parsed()) return run_manifest(manifest_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
