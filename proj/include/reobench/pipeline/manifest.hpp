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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reobench/annotations.hpp"
#include "reobench/corruption.hpp"

namespace reobench::pipeline {

enum class TaskKind {
    Classification,
    Segmentation,
    Detection,
    Grounding,
    Captioning,
    Vqa,
};

std::string_view task_name(TaskKind task);
TaskKind parse_task(std::string_view name);

/// Vision-language tasks skip the geometric corruptions (a shifted caption
/// target is ill-defined), leaving 9 of the 12 kinds.
bool is_vision_language(TaskKind task);
std::vector<CorruptionKind> default_kinds_for_task(TaskKind task);

/// On-disk annotation encodings the ingester understands.
enum class AnnotationFormat {
    ClassFolders,   // <root>/<class>/<image>
    MaskPairs,      // images/<id>.png + masks/<id>.png (8-bit class ids)
    Dota,           // images/<id> + labels/<id>.txt, 8 coords + class + diff
    ReferringJson,  // images/<id> + refs/<id>.json expression records
    None,           // bare images
};

std::string_view annotation_format_name(AnnotationFormat format);
AnnotationFormat parse_annotation_format(std::string_view name);

struct ImageEntry {
    std::string id;
    std::filesystem::path path;
    std::filesystem::path annotation;  // empty when the format carries none
};

struct CorruptionGrid {
    std::vector<CorruptionKind> kinds;
    int severity_lo = 1;
    int severity_hi = 5;

    std::vector<int> levels() const;
};

struct DatasetManifest {
    std::string dataset;
    TaskKind task = TaskKind::Classification;
    AnnotationFormat format = AnnotationFormat::None;
    std::uint64_t seed = 0;
    std::vector<ImageEntry> images;
    CorruptionGrid grid;
};

std::string manifest_to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(const std::string& json_text);
DatasetManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const DatasetManifest& manifest,
                   const std::filesystem::path& path);

/// Scan a dataset directory into a manifest. LayoutError when the tree does
/// not match the format; AnnotationParseError (naming file and line) when a
/// sidecar annotation fails to parse.
DatasetManifest ingest(const std::filesystem::path& root,
                       TaskKind task, AnnotationFormat format);

/// Read the annotation sidecar for one entry.
AnnotationSet load_annotation(const ImageEntry& entry, AnnotationFormat format);

/// Write an annotation in the same encoding the ingester reads: class labels
/// as one-line JSON, masks as 8-bit PNG, oriented boxes as coordinate text,
/// referring records as JSON.
void save_annotation(const AnnotationSet& ann,
                     const std::filesystem::path& path);

/// Parse one oriented-box text file / serialize back. Lines are
/// "x1 y1 x2 y2 x3 y3 x4 y4 <category> <difficult>".
OrientedBoxes parse_dota(const std::string& text, std::string_view source_name);
std::string format_dota(const OrientedBoxes& boxes);

}  // namespace reobench::pipeline
