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

#include "reobench/pipeline/generate.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "reobench/error.hpp"
#include "reobench/image_io.hpp"
#include "reobench/rng.hpp"

namespace reobench::pipeline {

using nlohmann::json;

namespace {

struct ImageOutcome {
    json provenance_entries = json::array();
    std::vector<GenerationFailure> failures;
    std::size_t written = 0;
};

std::string annotation_extension(const AnnotationSet& ann) {
    if (std::holds_alternative<SegMask>(ann)) return ".png";
    if (std::holds_alternative<OrientedBoxes>(ann)) return ".txt";
    return ".json";
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

std::vector<CorruptionChain> grid_chains(const DatasetManifest& manifest) {
    std::vector<CorruptionChain> chains;
    for (CorruptionKind kind : manifest.grid.kinds) {
        for (int level : manifest.grid.levels()) {
            if (!severity_valid(kind, Severity{level})) continue;
            CorruptionChain chain;
            CorruptionSpec spec;
            spec.kind = kind;
            spec.severity = Severity{level};
            chain.specs.push_back(spec);
            chains.push_back(std::move(chain));
        }
    }
    return chains;
}

std::uint64_t plan_hash(const GenerationPlan& plan) {
    std::ostringstream material;
    material << plan.manifest.dataset << '\n'
             << task_name(plan.manifest.task) << '\n'
             << plan.manifest.seed << '\n'
             << plan.aggregation << '\n';
    for (const ImageEntry& entry : plan.manifest.images) {
        material << entry.id << '\t' << entry.path.generic_string() << '\n';
    }
    const std::vector<CorruptionChain> chains =
        plan.chains.empty() ? grid_chains(plan.manifest) : plan.chains;
    for (const CorruptionChain& chain : chains) {
        material << chain.label() << '\n';
    }
    return hash64(material.str());
}

std::filesystem::path chain_directory(const CorruptionChain& chain) {
    if (chain.specs.size() == 1) {
        const CorruptionSpec& spec = chain.specs.front();
        return std::filesystem::path(std::string(kind_name(spec.kind))) /
               ("s" + std::to_string(spec.severity.level));
    }
    return chain.label();
}

GenerationReport generate(const GenerationPlan& plan) {
    const std::vector<CorruptionChain> chains =
        plan.chains.empty() ? grid_chains(plan.manifest) : plan.chains;
    for (const CorruptionChain& chain : chains) chain.validate();
    if (chains.empty()) {
        raise(ErrorCode::InvalidArgument, "generation plan has no chains");
    }

    const bool has_annotations =
        plan.manifest.format != AnnotationFormat::None;

    // Create every output directory up front; the workers then only touch
    // disjoint files.
    std::set<std::filesystem::path> dirs;
    dirs.insert(plan.output_root);
    for (const CorruptionChain& chain : chains) {
        for (const ImageEntry& entry : plan.manifest.images) {
            dirs.insert((plan.output_root / chain_directory(chain) /
                         entry.id).parent_path());
            if (has_annotations && chain.has_geometric()) {
                dirs.insert((plan.output_root / "annotations" /
                             chain_directory(chain) / entry.id).parent_path());
            }
        }
    }
    if (has_annotations) {
        for (const ImageEntry& entry : plan.manifest.images) {
            dirs.insert((plan.output_root / "annotations" / "clean" /
                         entry.id).parent_path());
        }
    }
    for (const auto& dir : dirs) std::filesystem::create_directories(dir);

    const std::size_t image_count = plan.manifest.images.size();
    std::vector<ImageOutcome> outcomes(image_count);
    const int workers = std::max(1, plan.workers);

    auto process_image = [&](std::size_t index) {
        const ImageEntry& entry = plan.manifest.images[index];
        ImageOutcome& outcome = outcomes[index];

        ImageRaster source;
        std::optional<AnnotationSet> ann;
        ImageFormat out_format = ImageFormat::Png;
        try {
            out_format = format_from_extension(entry.path);
            source = load_image(entry.path);
            if (has_annotations) {
                ann = load_annotation(entry, plan.manifest.format);
            }
        } catch (const std::exception& e) {
            outcome.failures.push_back({entry.id, e.what()});
            return;
        }

        const std::string out_name =
            entry.id + entry.path.extension().string();

        if (has_annotations) {
            try {
                const std::filesystem::path clean_path =
                    plan.output_root / "annotations" / "clean" /
                    (entry.id +
                     (entry.annotation.empty()
                          ? annotation_extension(*ann)
                          : entry.annotation.extension().string()));
                if (entry.annotation.empty()) {
                    save_annotation(*ann, clean_path);
                } else {
                    // Byte-for-byte copy keeps the clean set identical to the
                    // source dataset.
                    std::filesystem::copy_file(
                        entry.annotation, clean_path,
                        std::filesystem::copy_options::overwrite_existing);
                }
            } catch (const std::exception& e) {
                outcome.failures.push_back({entry.id, e.what()});
            }
        }

        for (const CorruptionChain& chain : chains) {
            try {
                const ChainResult result = apply_chain(
                    source, ann, chain, plan.manifest.seed, entry.id);
                const std::filesystem::path image_path =
                    plan.output_root / chain_directory(chain) / out_name;
                save_image(result.image, image_path, out_format);
                ++outcome.written;

                if (has_annotations && chain.has_geometric() &&
                    result.annotations) {
                    const std::filesystem::path ann_path =
                        plan.output_root / "annotations" /
                        chain_directory(chain) /
                        (entry.id + annotation_extension(*result.annotations));
                    save_annotation(*result.annotations, ann_path);
                }

                for (const DrawnParams& drawn : result.drawn) {
                    json e;
                    e["image_id"] = entry.id;
                    e["chain"] = chain.label();
                    e["kind"] = std::string(kind_name(drawn.kind));
                    e["severity"] = drawn.severity.level;
                    json params = json::object();
                    for (const auto& [name, value] : drawn.params) {
                        params[name] = value;
                    }
                    e["params"] = std::move(params);
                    outcome.provenance_entries.push_back(std::move(e));
                }
            } catch (const std::exception& e) {
                outcome.failures.push_back(
                    {entry.id, chain.label() + ": " + e.what()});
            }
        }
    };

    if (workers == 1 || image_count <= 1) {
        for (std::size_t i = 0; i < image_count; ++i) process_image(i);
    } else {
        std::vector<std::thread> pool;
        const int active = static_cast<int>(
            std::min<std::size_t>(static_cast<std::size_t>(workers),
                                  image_count));
        pool.reserve(static_cast<std::size_t>(active));
        for (int w = 0; w < active; ++w) {
            pool.emplace_back([&, w]() {
                for (std::size_t i = static_cast<std::size_t>(w);
                     i < image_count; i += static_cast<std::size_t>(active)) {
                    process_image(i);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    GenerationReport report;
    json provenance;
    provenance["plan_hash"] = hex64(plan_hash(plan));
    provenance["seed"] = plan.manifest.seed;
    json entries = json::array();
    for (const ImageOutcome& outcome : outcomes) {
        report.images_written += outcome.written;
        for (const GenerationFailure& failure : outcome.failures) {
            report.failures.push_back(failure);
        }
        for (const json& e : outcome.provenance_entries) {
            entries.push_back(e);
        }
    }
    provenance["entries"] = std::move(entries);

    report.provenance_path = plan.output_root / "provenance.json";
    std::ofstream out(report.provenance_path, std::ios::trunc);
    if (!out) {
        raise(ErrorCode::IoError,
              "cannot write " + report.provenance_path.string());
    }
    out << provenance.dump(2) << '\n';
    return report;
}

}  // namespace reobench::pipeline
