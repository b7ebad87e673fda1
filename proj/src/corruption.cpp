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

#include "reobench/corruption.hpp"

#include <algorithm>
#include <cctype>

#include "reobench/error.hpp"

namespace reobench {

const std::array<CorruptionKind, kCorruptionKindCount>& all_corruption_kinds() {
    static const std::array<CorruptionKind, kCorruptionKindCount> kinds = {
        CorruptionKind::GaussianNoise,  CorruptionKind::SaltPepper,
        CorruptionKind::GaussianBlur,   CorruptionKind::MotionBlur,
        CorruptionKind::BrightnessContrast, CorruptionKind::Cloud,
        CorruptionKind::Haze,           CorruptionKind::DataGaps,
        CorruptionKind::Compression,    CorruptionKind::Rotate,
        CorruptionKind::Scale,          CorruptionKind::Translate,
    };
    return kinds;
}

const std::array<CorruptionKind, kCorruptionKindCount>& report_column_order() {
    static const std::array<CorruptionKind, kCorruptionKindCount> order = {
        CorruptionKind::BrightnessContrast, CorruptionKind::Cloud,
        CorruptionKind::Compression,        CorruptionKind::DataGaps,
        CorruptionKind::GaussianBlur,       CorruptionKind::GaussianNoise,
        CorruptionKind::Haze,               CorruptionKind::MotionBlur,
        CorruptionKind::Rotate,             CorruptionKind::SaltPepper,
        CorruptionKind::Scale,              CorruptionKind::Translate,
    };
    return order;
}

CorruptionCategory category(CorruptionKind kind) {
    switch (kind) {
        case CorruptionKind::BrightnessContrast:
        case CorruptionKind::Cloud:
        case CorruptionKind::Haze:
            return CorruptionCategory::Environmental;
        case CorruptionKind::GaussianNoise:
        case CorruptionKind::SaltPepper:
        case CorruptionKind::GaussianBlur:
        case CorruptionKind::MotionBlur:
        case CorruptionKind::DataGaps:
        case CorruptionKind::Compression:
            return CorruptionCategory::Sensor;
        case CorruptionKind::Rotate:
        case CorruptionKind::Scale:
        case CorruptionKind::Translate:
            return CorruptionCategory::Geometric;
    }
    raise(ErrorCode::UnknownCorruption, "unknown corruption kind");
}

bool is_geometric(CorruptionKind kind) {
    return category(kind) == CorruptionCategory::Geometric;
}

std::string_view kind_name(CorruptionKind kind) {
    switch (kind) {
        case CorruptionKind::GaussianNoise: return "gaussian_noise";
        case CorruptionKind::SaltPepper: return "salt_pepper";
        case CorruptionKind::GaussianBlur: return "gaussian_blur";
        case CorruptionKind::MotionBlur: return "motion_blur";
        case CorruptionKind::BrightnessContrast: return "brightness_contrast";
        case CorruptionKind::Cloud: return "cloud";
        case CorruptionKind::Haze: return "haze";
        case CorruptionKind::DataGaps: return "data_gaps";
        case CorruptionKind::Compression: return "compression";
        case CorruptionKind::Rotate: return "rotate";
        case CorruptionKind::Scale: return "scale";
        case CorruptionKind::Translate: return "translate";
    }
    raise(ErrorCode::UnknownCorruption, "unknown corruption kind");
}

std::string_view kind_display_name(CorruptionKind kind) {
    switch (kind) {
        case CorruptionKind::GaussianNoise: return "Gaussian Noise";
        case CorruptionKind::SaltPepper: return "Salt Pepper";
        case CorruptionKind::GaussianBlur: return "Gaussian Blur";
        case CorruptionKind::MotionBlur: return "Motion Blur";
        case CorruptionKind::BrightnessContrast: return "Brightness Contrast";
        case CorruptionKind::Cloud: return "Cloud";
        case CorruptionKind::Haze: return "Haze";
        case CorruptionKind::DataGaps: return "Data Gaps";
        case CorruptionKind::Compression: return "Compression Artifacts";
        case CorruptionKind::Rotate: return "Rotate";
        case CorruptionKind::Scale: return "Scale";
        case CorruptionKind::Translate: return "Translate";
    }
    raise(ErrorCode::UnknownCorruption, "unknown corruption kind");
}

std::optional<CorruptionKind> parse_kind(std::string_view name) {
    std::string key;
    key.reserve(name.size());
    for (char c : name) {
        if (c == '-' || c == ' ') {
            key.push_back('_');
        } else {
            key.push_back(static_cast<char>(
                std::tolower(static_cast<unsigned char>(c))));
        }
    }
    for (CorruptionKind kind : all_corruption_kinds()) {
        if (key == kind_name(kind)) return kind;
    }
    if (key == "brightness" || key == "contrast") {
        return CorruptionKind::BrightnessContrast;
    }
    if (key == "clouds") return CorruptionKind::Cloud;
    if (key == "jpeg" || key == "jpeg_compression" ||
        key == "compression_artifacts") {
        return CorruptionKind::Compression;
    }
    if (key == "noise") return CorruptionKind::GaussianNoise;
    if (key == "blur") return CorruptionKind::GaussianBlur;
    if (key == "salt_and_pepper") return CorruptionKind::SaltPepper;
    if (key == "gaps" || key == "slc_off") return CorruptionKind::DataGaps;
    return std::nullopt;
}

int max_severity(CorruptionKind kind) {
    return kind == CorruptionKind::Haze ? 9 : 5;
}

bool severity_valid(CorruptionKind kind, Severity severity) {
    return severity.level >= 1 && severity.level <= max_severity(kind);
}

ParamMap severity_params(CorruptionKind kind, Severity severity) {
    if (!severity_valid(kind, severity)) {
        raise(ErrorCode::InvalidSeverity,
              std::string(kind_name(kind)) + " severity " +
                  std::to_string(severity.level) + " out of range 1-" +
                  std::to_string(max_severity(kind)));
    }
    const int i = severity.level - 1;
    switch (kind) {
        case CorruptionKind::GaussianNoise: {
            static constexpr double sigma[] = {0.04, 0.05, 0.06, 0.07, 0.08};
            return {{"sigma", sigma[i]}};
        }
        case CorruptionKind::SaltPepper: {
            static constexpr double amount[] = {0.005, 0.01, 0.02, 0.03, 0.05};
            return {{"amount", amount[i]}};
        }
        case CorruptionKind::GaussianBlur: {
            static constexpr double kernel[] = {3, 5, 7, 9, 11};
            return {{"kernel_size", kernel[i]}};
        }
        case CorruptionKind::MotionBlur: {
            static constexpr double kernel[] = {2, 4, 6, 8, 10};
            return {{"kernel_size", kernel[i]}};
        }
        case CorruptionKind::BrightnessContrast: {
            static constexpr double brightness[] = {0.0, 0.1, 0.2, 0.3, 0.4};
            static constexpr double contrast[] = {1.0, 0.8, 0.6, 0.4, 0.2};
            return {{"brightness", brightness[i]}, {"contrast", contrast[i]}};
        }
        case CorruptionKind::Cloud: {
            static constexpr double threshold[] = {0.90, 0.85, 0.80, 0.75, 0.70};
            return {{"threshold", threshold[i]}};
        }
        case CorruptionKind::Haze: {
            static constexpr double intensity[] = {0.20, 0.30, 0.40, 0.50, 0.60,
                                                   0.70, 0.80, 0.90, 0.95};
            return {{"intensity", intensity[i]}};
        }
        case CorruptionKind::DataGaps: {
            static constexpr double num_gaps[] = {2, 3, 4, 5, 6};
            static constexpr double gap_width[] = {3, 4, 5, 6, 7};
            return {{"num_gaps", num_gaps[i]}, {"gap_width", gap_width[i]}};
        }
        case CorruptionKind::Compression: {
            static constexpr double quality[] = {30, 25, 20, 15, 10};
            return {{"quality", quality[i]}};
        }
        case CorruptionKind::Rotate: {
            static constexpr double angle[] = {30, 45, 60, 75, 90};
            return {{"angle_deg", angle[i]}};
        }
        case CorruptionKind::Scale: {
            static constexpr double ratio[] = {0.9, 0.8, 0.7, 0.6, 0.5};
            return {{"ratio", ratio[i]}};
        }
        case CorruptionKind::Translate: {
            static constexpr double displacement[] = {15, 20, 25, 30, 35};
            return {{"displacement", displacement[i]}};
        }
    }
    raise(ErrorCode::UnknownCorruption, "unknown corruption kind");
}

ParamMap CorruptionSpec::resolve() const {
    ParamMap params = severity_params(kind, severity);
    for (const auto& [name, value] : overrides) {
        params.insert_or_assign(name, value);
    }
    return params;
}

}  // namespace reobench
