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

#include "reobench/pipeline/chain.hpp"

#include <cmath>
#include <sstream>

#include "reobench/corrupt/geometric.hpp"
#include "reobench/corrupt/photometric.hpp"
#include "reobench/corrupt/spatial.hpp"
#include "reobench/error.hpp"
#include "reobench/rng.hpp"

namespace reobench::pipeline {

namespace {

std::string valid_kind_list() {
    std::string names;
    for (CorruptionKind kind : all_corruption_kinds()) {
        if (!names.empty()) names += ", ";
        names += kind_name(kind);
    }
    return names;
}

std::string trimmed(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

}  // namespace

void CorruptionChain::validate() const {
    if (specs.empty()) {
        raise(ErrorCode::InvalidArgument, "corruption chain is empty");
    }
    int geometric = 0;
    for (const CorruptionSpec& spec : specs) {
        if (!severity_valid(spec.kind, spec.severity)) {
            raise(ErrorCode::InvalidSeverity,
                  std::string(kind_name(spec.kind)) + " severity " +
                      std::to_string(spec.severity.level));
        }
        if (is_geometric(spec.kind)) ++geometric;
    }
    if (geometric > 1) {
        raise(ErrorCode::InvalidArgument,
              "chain holds " + std::to_string(geometric) +
                  " geometric members; at most one is allowed");
    }
}

bool CorruptionChain::has_geometric() const {
    for (const CorruptionSpec& spec : specs) {
        if (is_geometric(spec.kind)) return true;
    }
    return false;
}

std::string CorruptionChain::label() const {
    std::string out;
    for (const CorruptionSpec& spec : specs) {
        if (!out.empty()) out += '+';
        out += kind_name(spec.kind);
        out += "_s";
        out += std::to_string(spec.severity.level);
    }
    return out;
}

CorruptionChain parse_chain(std::string_view expression) {
    CorruptionChain chain;
    std::istringstream in{std::string(expression)};
    std::string token;
    while (std::getline(in, token, ',')) {
        token = trimmed(token);
        if (token.empty()) continue;
        std::string name = token;
        int level = 1;
        if (const auto colon = token.find(':'); colon != std::string::npos) {
            name = trimmed(token.substr(0, colon));
            const std::string level_text = trimmed(token.substr(colon + 1));
            try {
                level = std::stoi(level_text);
            } catch (const std::exception&) {
                raise(ErrorCode::InvalidArgument,
                      "bad severity '" + level_text + "' in chain element '" +
                          token + "'");
            }
        }
        const auto kind = parse_kind(name);
        if (!kind) {
            raise(ErrorCode::UnknownCorruption,
                  "unknown corruption '" + name + "'; valid names: " +
                      valid_kind_list());
        }
        CorruptionSpec spec;
        spec.kind = *kind;
        spec.severity = Severity{level};
        chain.specs.push_back(std::move(spec));
    }
    chain.validate();
    return chain;
}

ImageRaster apply_spec(const ImageRaster& img, const CorruptionSpec& spec,
                       std::uint64_t global_seed, std::string_view image_id,
                       DrawnParams* out_params) {
    RngStream rng =
        derive_stream(global_seed, image_id, spec.kind, spec.severity);
    ParamMap params = spec.resolve();
    ImageRaster out;

    switch (spec.kind) {
        case CorruptionKind::GaussianNoise:
            out = corrupt::gaussian_noise(img, params.at("sigma"), rng);
            break;
        case CorruptionKind::SaltPepper:
            out = corrupt::salt_pepper(img, params.at("amount"), rng);
            break;
        case CorruptionKind::GaussianBlur:
            out = corrupt::gaussian_blur(
                img, static_cast<int>(params.at("kernel_size")));
            break;
        case CorruptionKind::MotionBlur: {
            std::optional<double> angle;
            if (const auto it = params.find("angle_deg"); it != params.end()) {
                angle = it->second;
            } else {
                angle = rng.uniform() * 180.0;
                params["angle_deg"] = *angle;
            }
            // The angle is already drawn; pass it through explicitly so the
            // provenance record and the pixels cannot disagree.
            out = corrupt::motion_blur(
                img, static_cast<int>(params.at("kernel_size")), angle, rng);
            break;
        }
        case CorruptionKind::BrightnessContrast:
            out = corrupt::brightness_contrast(img, params.at("brightness"),
                                               params.at("contrast"));
            break;
        case CorruptionKind::Cloud:
            out = corrupt::cloud(img, params.at("threshold"), rng);
            break;
        case CorruptionKind::Haze:
            out = corrupt::haze(img, params.at("intensity"));
            break;
        case CorruptionKind::DataGaps: {
            const int num_gaps = static_cast<int>(params.at("num_gaps"));
            const int gap_width = static_cast<int>(params.at("gap_width"));
            const std::vector<int> starts = corrupt::data_gap_positions(
                img.width, num_gaps, gap_width, rng);
            out = img;
            for (std::size_t i = 0; i < starts.size(); ++i) {
                params["gap_start_" + std::to_string(i)] = starts[i];
                for (int y = 0; y < out.height; ++y) {
                    for (int x = starts[i]; x < starts[i] + gap_width; ++x) {
                        for (int c = 0; c < out.channels; ++c) {
                            out.at(x, y, c) = 0.0f;
                        }
                    }
                }
            }
            break;
        }
        case CorruptionKind::Compression:
            out = corrupt::jpeg_artifacts(
                img, static_cast<int>(params.at("quality")));
            break;
        case CorruptionKind::Rotate:
            out = corrupt::rotate(img, params.at("angle_deg"));
            break;
        case CorruptionKind::Scale:
            out = corrupt::scale(img, params.at("ratio"));
            break;
        case CorruptionKind::Translate: {
            double dx = 0.0, dy = 0.0;
            if (params.count("dx") != 0 && params.count("dy") != 0) {
                dx = params.at("dx");
                dy = params.at("dy");
                out = corrupt::translate(img, dx, dy);
            } else {
                const int bound = static_cast<int>(params.at("displacement"));
                out = corrupt::translate_random(img, bound, rng, &dx, &dy);
                params["dx"] = dx;
                params["dy"] = dy;
            }
            break;
        }
    }

    if (out_params != nullptr) {
        out_params->kind = spec.kind;
        out_params->severity = spec.severity;
        out_params->params = std::move(params);
    }
    return out;
}

ChainResult apply_chain(const ImageRaster& img,
                        const std::optional<AnnotationSet>& ann,
                        const CorruptionChain& chain,
                        std::uint64_t global_seed, std::string_view image_id) {
    chain.validate();
    ChainResult result;
    result.image = img;
    result.annotations = ann;

    for (const CorruptionSpec& spec : chain.specs) {
        DrawnParams drawn;
        result.image =
            apply_spec(result.image, spec, global_seed, image_id, &drawn);

        if (is_geometric(spec.kind) && result.annotations) {
            corrupt::AffineMap warp;
            switch (spec.kind) {
                case CorruptionKind::Rotate:
                    warp = corrupt::rotate_warp(result.image.width,
                                                result.image.height,
                                                drawn.params.at("angle_deg"));
                    break;
                case CorruptionKind::Scale:
                    warp = corrupt::scale_warp(result.image.width,
                                               result.image.height,
                                               drawn.params.at("ratio"));
                    break;
                default:
                    warp = corrupt::translate_warp(drawn.params.at("dx"),
                                                   drawn.params.at("dy"));
                    break;
            }
            result.annotations = corrupt::transform_annotations(
                *result.annotations, result.image.width, result.image.height,
                warp);
        }
        result.drawn.push_back(std::move(drawn));
    }
    return result;
}

}  // namespace reobench::pipeline
