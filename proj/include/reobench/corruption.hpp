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
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace reobench {

/// The twelve corruption generators, grouped into environmental,
/// sensor-induced and geometric categories.
enum class CorruptionKind {
    GaussianNoise,
    SaltPepper,
    GaussianBlur,
    MotionBlur,
    BrightnessContrast,
    Cloud,
    Haze,
    DataGaps,
    Compression,
    Rotate,
    Scale,
    Translate,
};

enum class CorruptionCategory { Environmental, Sensor, Geometric };

inline constexpr int kCorruptionKindCount = 12;

/// All kinds in declaration order.
const std::array<CorruptionKind, kCorruptionKindCount>& all_corruption_kinds();

/// The 12 kinds in benchmark report-column order (alphabetical by display
/// name: Brightness Contrast, Cloud, Compression Artifacts, ...).
const std::array<CorruptionKind, kCorruptionKindCount>& report_column_order();

CorruptionCategory category(CorruptionKind kind);
bool is_geometric(CorruptionKind kind);

/// Canonical snake_case identifier ("gaussian_noise", "brightness_contrast", ...).
std::string_view kind_name(CorruptionKind kind);

/// Human-readable column header ("Gaussian Noise", "Brightness Contrast", ...).
std::string_view kind_display_name(CorruptionKind kind);

/// Parse a canonical name or a common alias ("brightness", "clouds", "jpeg", ...).
std::optional<CorruptionKind> parse_kind(std::string_view name);

/// Integer severity grade. Levels 1-5 are valid for every kind; haze extends
/// to level 9 for the fidelity sweeps.
struct Severity {
    int level = 1;

    friend bool operator==(Severity a, Severity b) { return a.level == b.level; }
    friend auto operator<=>(Severity a, Severity b) { return a.level <=> b.level; }
};

int max_severity(CorruptionKind kind);
bool severity_valid(CorruptionKind kind, Severity severity);

/// Named parameter values; ordered map so serializations are stable.
using ParamMap = std::map<std::string, double>;

/// The severity configuration table. Returns exactly the benchmark's
/// parameter values for (kind, severity); throws InvalidSeverity outside the
/// kind's valid range. Pure and total on the valid grid.
ParamMap severity_params(CorruptionKind kind, Severity severity);

/// A concrete corruption request: kind + severity + seed, with optional
/// explicit parameter overrides (used for tests and custom sweeps).
struct CorruptionSpec {
    CorruptionKind kind = CorruptionKind::GaussianNoise;
    Severity severity{1};
    std::uint64_t seed = 0;
    ParamMap overrides;

    /// Table parameters with overrides applied on top.
    ParamMap resolve() const;
};

}  // namespace reobench
