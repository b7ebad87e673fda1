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

#include "reobench/pipeline/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "reobench/error.hpp"
#include "reobench/image_io.hpp"
#include "reobench/raster.hpp"

namespace reobench::pipeline {

using nlohmann::json;

namespace {

bool is_image_file(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::vector<std::filesystem::path> sorted_images(
    const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && is_image_file(entry.path())) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        raise(ErrorCode::IoError, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        raise(ErrorCode::IoError, "cannot open " + path.string() + " for write");
    }
    out << text;
    if (!out) {
        raise(ErrorCode::IoError, "write failed for " + path.string());
    }
}

json hbox_to_json(const HorizontalBox& box) {
    json j;
    j["bbox"] = {box.xmin, box.ymin, box.xmax, box.ymax};
    if (!box.category.empty()) j["category"] = box.category;
    return j;
}

json obox_to_json(const OrientedBox& box) {
    json j;
    json corners = json::array();
    for (const Point2& p : box.corners) {
        corners.push_back(p.x);
        corners.push_back(p.y);
    }
    j["obb"] = corners;
    if (!box.category.empty()) j["category"] = box.category;
    if (box.difficult) j["difficult"] = true;
    return j;
}

HorizontalBox hbox_from_json(const json& j, const std::string& where) {
    const auto& arr = j.at("bbox");
    if (!arr.is_array() || arr.size() != 4) {
        raise(ErrorCode::AnnotationParseError,
              where + ": \"bbox\" must hold [xmin, ymin, xmax, ymax]");
    }
    HorizontalBox box;
    box.xmin = arr[0].get<double>();
    box.ymin = arr[1].get<double>();
    box.xmax = arr[2].get<double>();
    box.ymax = arr[3].get<double>();
    box.category = j.value("category", std::string{});
    return box;
}

OrientedBox obox_from_json(const json& j, const std::string& where) {
    const auto& arr = j.at("obb");
    if (!arr.is_array() || arr.size() != 8) {
        raise(ErrorCode::AnnotationParseError,
              where + ": \"obb\" must hold 8 coordinates");
    }
    OrientedBox box;
    for (int i = 0; i < 4; ++i) {
        box.corners[i] = {arr[2 * i].get<double>(),
                          arr[2 * i + 1].get<double>()};
    }
    box.category = j.value("category", std::string{});
    box.difficult = j.value("difficult", false);
    return box;
}

}  // namespace

std::string_view task_name(TaskKind task) {
    switch (task) {
        case TaskKind::Classification: return "classification";
        case TaskKind::Segmentation: return "segmentation";
        case TaskKind::Detection: return "detection";
        case TaskKind::Grounding: return "grounding";
        case TaskKind::Captioning: return "captioning";
        case TaskKind::Vqa: return "vqa";
    }
    raise(ErrorCode::InvalidArgument, "unknown task kind");
}

TaskKind parse_task(std::string_view name) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    if (key == "classification") return TaskKind::Classification;
    if (key == "segmentation") return TaskKind::Segmentation;
    if (key == "detection") return TaskKind::Detection;
    if (key == "grounding") return TaskKind::Grounding;
    if (key == "captioning") return TaskKind::Captioning;
    if (key == "vqa") return TaskKind::Vqa;
    raise(ErrorCode::InvalidArgument, "unknown task '" + std::string(name) +
                                          "'; expected classification, "
                                          "segmentation, detection, "
                                          "grounding, captioning or vqa");
}

bool is_vision_language(TaskKind task) {
    return task == TaskKind::Grounding || task == TaskKind::Captioning ||
           task == TaskKind::Vqa;
}

std::vector<CorruptionKind> default_kinds_for_task(TaskKind task) {
    std::vector<CorruptionKind> kinds;
    for (CorruptionKind kind : report_column_order()) {
        if (is_vision_language(task) && is_geometric(kind)) continue;
        kinds.push_back(kind);
    }
    return kinds;
}

std::string_view annotation_format_name(AnnotationFormat format) {
    switch (format) {
        case AnnotationFormat::ClassFolders: return "class_folders";
        case AnnotationFormat::MaskPairs: return "mask_pairs";
        case AnnotationFormat::Dota: return "dota";
        case AnnotationFormat::ReferringJson: return "referring_json";
        case AnnotationFormat::None: return "none";
    }
    raise(ErrorCode::InvalidArgument, "unknown annotation format");
}

AnnotationFormat parse_annotation_format(std::string_view name) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    if (key == "class_folders") return AnnotationFormat::ClassFolders;
    if (key == "mask_pairs") return AnnotationFormat::MaskPairs;
    if (key == "dota") return AnnotationFormat::Dota;
    if (key == "referring_json") return AnnotationFormat::ReferringJson;
    if (key == "none") return AnnotationFormat::None;
    raise(ErrorCode::InvalidArgument,
          "unknown annotation format '" + std::string(name) + "'");
}

std::vector<int> CorruptionGrid::levels() const {
    std::vector<int> out;
    for (int level = severity_lo; level <= severity_hi; ++level) {
        out.push_back(level);
    }
    return out;
}

std::string manifest_to_json(const DatasetManifest& manifest) {
    json j;
    j["dataset"] = manifest.dataset;
    j["task"] = std::string(task_name(manifest.task));
    j["annotation_format"] =
        std::string(annotation_format_name(manifest.format));
    j["seed"] = manifest.seed;
    json images = json::array();
    for (const ImageEntry& entry : manifest.images) {
        json e;
        e["id"] = entry.id;
        e["path"] = entry.path.generic_string();
        if (entry.annotation.empty()) {
            e["annotation"] = nullptr;
        } else {
            e["annotation"] = entry.annotation.generic_string();
        }
        images.push_back(std::move(e));
    }
    j["images"] = std::move(images);
    json kinds = json::array();
    for (CorruptionKind kind : manifest.grid.kinds) {
        kinds.push_back(std::string(kind_name(kind)));
    }
    j["corruption_grid"] = {
        {"kinds", std::move(kinds)},
        {"severities",
         json::array({manifest.grid.severity_lo, manifest.grid.severity_hi})},
    };
    return j.dump(2) + "\n";
}

DatasetManifest manifest_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        raise(ErrorCode::AnnotationParseError,
              std::string("manifest JSON: ") + e.what());
    }
    DatasetManifest manifest;
    try {
        manifest.dataset = j.value("dataset", std::string{});
        manifest.task = parse_task(j.value("task", "classification"));
        manifest.format = parse_annotation_format(
            j.value("annotation_format", "none"));
        manifest.seed = j.value("seed", std::uint64_t{0});
        for (const json& e : j.at("images")) {
            ImageEntry entry;
            entry.id = e.at("id").get<std::string>();
            entry.path = e.at("path").get<std::string>();
            if (e.contains("annotation") && !e.at("annotation").is_null()) {
                entry.annotation = e.at("annotation").get<std::string>();
            }
            manifest.images.push_back(std::move(entry));
        }
        if (j.contains("corruption_grid")) {
            const json& grid = j.at("corruption_grid");
            for (const json& name : grid.at("kinds")) {
                const auto kind = parse_kind(name.get<std::string>());
                if (!kind) {
                    raise(ErrorCode::UnknownCorruption,
                          "manifest kind '" + name.get<std::string>() + "'");
                }
                manifest.grid.kinds.push_back(*kind);
            }
            const json& sev = grid.at("severities");
            manifest.grid.severity_lo = sev.at(0).get<int>();
            manifest.grid.severity_hi = sev.at(1).get<int>();
        } else {
            manifest.grid.kinds = default_kinds_for_task(manifest.task);
        }
    } catch (const json::exception& e) {
        raise(ErrorCode::AnnotationParseError,
              std::string("manifest JSON: ") + e.what());
    }
    return manifest;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
    return manifest_from_json(read_text(path));
}

void save_manifest(const DatasetManifest& manifest,
                   const std::filesystem::path& path) {
    write_text(path, manifest_to_json(manifest));
}

DatasetManifest ingest(const std::filesystem::path& root, TaskKind task,
                       AnnotationFormat format) {
    if (!std::filesystem::is_directory(root)) {
        raise(ErrorCode::LayoutError, root.string() + " is not a directory");
    }
    DatasetManifest manifest;
    manifest.dataset = root.filename().string();
    manifest.task = task;
    manifest.format = format;
    manifest.grid.kinds = default_kinds_for_task(task);

    switch (format) {
        case AnnotationFormat::ClassFolders: {
            std::vector<std::filesystem::path> class_dirs;
            for (const auto& entry : std::filesystem::directory_iterator(root)) {
                if (entry.is_directory()) class_dirs.push_back(entry.path());
            }
            std::sort(class_dirs.begin(), class_dirs.end());
            if (class_dirs.empty()) {
                raise(ErrorCode::LayoutError,
                      root.string() + " has no class folders");
            }
            for (const auto& dir : class_dirs) {
                for (const auto& file : sorted_images(dir)) {
                    ImageEntry entry;
                    entry.id = dir.filename().string() + "/" +
                               file.stem().string();
                    entry.path = file;
                    manifest.images.push_back(std::move(entry));
                }
            }
            break;
        }
        case AnnotationFormat::MaskPairs:
        case AnnotationFormat::Dota:
        case AnnotationFormat::ReferringJson: {
            const std::filesystem::path images_dir = root / "images";
            if (!std::filesystem::is_directory(images_dir)) {
                raise(ErrorCode::LayoutError,
                      root.string() + " has no images/ directory");
            }
            std::filesystem::path side_dir;
            std::string side_ext;
            if (format == AnnotationFormat::MaskPairs) {
                side_dir = root / "masks";
                side_ext = ".png";
            } else if (format == AnnotationFormat::Dota) {
                side_dir = root / "labels";
                side_ext = ".txt";
            } else {
                side_dir = root / "refs";
                side_ext = ".json";
            }
            if (!std::filesystem::is_directory(side_dir)) {
                raise(ErrorCode::LayoutError,
                      root.string() + " has no " +
                          side_dir.filename().string() + "/ directory");
            }
            for (const auto& file : sorted_images(images_dir)) {
                ImageEntry entry;
                entry.id = file.stem().string();
                entry.path = file;
                entry.annotation = side_dir / (entry.id + side_ext);
                if (!std::filesystem::is_regular_file(entry.annotation)) {
                    raise(ErrorCode::AnnotationParseError,
                          "image '" + entry.id + "' has no annotation at " +
                              entry.annotation.string());
                }
                manifest.images.push_back(std::move(entry));
            }
            break;
        }
        case AnnotationFormat::None: {
            for (const auto& file : sorted_images(root)) {
                ImageEntry entry;
                entry.id = file.stem().string();
                entry.path = file;
                manifest.images.push_back(std::move(entry));
            }
            break;
        }
    }
    if (manifest.images.empty()) {
        raise(ErrorCode::LayoutError, root.string() + " holds no images");
    }
    return manifest;
}

OrientedBoxes parse_dota(const std::string& text,
                         std::string_view source_name) {
    OrientedBoxes out;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        // Real-world files open with metadata such as "imagesource:..".
        if (line.find(':') != std::string::npos &&
            line.find(' ') > line.find(':')) {
            continue;
        }
        std::istringstream tokens(line);
        OrientedBox box;
        double coords[8];
        bool ok = true;
        for (double& v : coords) {
            if (!(tokens >> v)) {
                ok = false;
                break;
            }
        }
        if (!ok || !(tokens >> box.category)) {
            raise(ErrorCode::AnnotationParseError,
                  std::string(source_name) + ":" + std::to_string(line_no) +
                      ": expected 8 coordinates and a category");
        }
        int difficult = 0;
        if (tokens >> difficult) box.difficult = difficult != 0;
        for (int i = 0; i < 4; ++i) {
            box.corners[i] = {coords[2 * i], coords[2 * i + 1]};
        }
        out.boxes.push_back(std::move(box));
    }
    return out;
}

std::string format_dota(const OrientedBoxes& boxes) {
    std::ostringstream out;
    char buf[32];
    for (const OrientedBox& box : boxes.boxes) {
        for (const Point2& p : box.corners) {
            std::snprintf(buf, sizeof buf, "%.2f", p.x);
            out << buf << ' ';
            std::snprintf(buf, sizeof buf, "%.2f", p.y);
            out << buf << ' ';
        }
        out << box.category << ' ' << (box.difficult ? 1 : 0) << '\n';
    }
    return out.str();
}

AnnotationSet load_annotation(const ImageEntry& entry,
                              AnnotationFormat format) {
    switch (format) {
        case AnnotationFormat::ClassFolders: {
            // The class is the folder component of the id.
            const auto slash = entry.id.find('/');
            if (slash == std::string::npos) {
                raise(ErrorCode::AnnotationParseError,
                      "id '" + entry.id + "' carries no class folder");
            }
            ClassLabel label;
            label.category = entry.id.substr(0, slash);
            return label;
        }
        case AnnotationFormat::MaskPairs: {
            const ImageRaster raster = load_image(entry.annotation);
            if (raster.channels != 1) {
                raise(ErrorCode::AnnotationParseError,
                      entry.annotation.string() +
                          ": class masks must be single-channel");
            }
            SegMask mask;
            mask.width = raster.width;
            mask.height = raster.height;
            mask.classes = raster_to_bytes(raster);
            return mask;
        }
        case AnnotationFormat::Dota: {
            return parse_dota(read_text(entry.annotation),
                              entry.annotation.string());
        }
        case AnnotationFormat::ReferringJson: {
            json j;
            try {
                j = json::parse(read_text(entry.annotation));
            } catch (const json::exception& e) {
                raise(ErrorCode::AnnotationParseError,
                      entry.annotation.string() + ": " + e.what());
            }
            if (!j.is_array()) {
                raise(ErrorCode::AnnotationParseError,
                      entry.annotation.string() + ": expected a record list");
            }
            ReferringRecords records;
            std::size_t index = 0;
            for (const json& r : j) {
                const std::string where =
                    entry.annotation.string() + "[" + std::to_string(index++) +
                    "]";
                ReferringRecord record;
                try {
                    record.expression = r.value("expression", std::string{});
                    if (r.contains("obb")) {
                        record.box = obox_from_json(r, where);
                    } else {
                        record.box = hbox_from_json(r, where);
                    }
                } catch (const json::exception& e) {
                    raise(ErrorCode::AnnotationParseError,
                          where + ": " + e.what());
                }
                records.records.push_back(std::move(record));
            }
            return records;
        }
        case AnnotationFormat::None:
            break;
    }
    raise(ErrorCode::UnsupportedAnnotation,
          "format carries no annotations for '" + entry.id + "'");
}

void save_annotation(const AnnotationSet& ann,
                     const std::filesystem::path& path) {
    if (const auto* label = std::get_if<ClassLabel>(&ann)) {
        json j;
        j["category"] = label->category;
        if (label->category_id >= 0) j["category_id"] = label->category_id;
        write_text(path, j.dump() + "\n");
        return;
    }
    if (const auto* mask = std::get_if<SegMask>(&ann)) {
        const ImageRaster raster =
            raster_from_bytes(mask->width, mask->height, 1, mask->classes);
        save_image(raster, path, ImageFormat::Png);
        return;
    }
    if (const auto* oboxes = std::get_if<OrientedBoxes>(&ann)) {
        write_text(path, format_dota(*oboxes));
        return;
    }
    if (const auto* hboxes = std::get_if<HorizontalBoxes>(&ann)) {
        json j = json::array();
        for (const HorizontalBox& box : hboxes->boxes) {
            j.push_back(hbox_to_json(box));
        }
        write_text(path, j.dump(2) + "\n");
        return;
    }
    if (const auto* refs = std::get_if<ReferringRecords>(&ann)) {
        json j = json::array();
        for (const ReferringRecord& record : refs->records) {
            json r = std::holds_alternative<HorizontalBox>(record.box)
                         ? hbox_to_json(std::get<HorizontalBox>(record.box))
                         : obox_to_json(std::get<OrientedBox>(record.box));
            r["expression"] = record.expression;
            j.push_back(std::move(r));
        }
        write_text(path, j.dump(2) + "\n");
        return;
    }
    raise(ErrorCode::UnsupportedAnnotation, "unrecognized annotation union");
}

}  // namespace reobench::pipeline
