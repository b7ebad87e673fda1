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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reobench/corruption.hpp"

namespace reobench::metrics {

/// Relative performance drop in percent:
///   100 * (clean - sum_k w_k * score_k) / clean.
/// Weights default to uniform 1/K; when given they must match the score
/// count, be positive, and sum to 1 within 1e-6 (InvalidWeights).
/// A clean score of zero raises ZeroCleanScore.
double r_tp(double clean_score, const std::vector<double>& scores,
            const std::vector<double>& weights = {});

/// One evaluated (corruption, severity) cell.
struct ScoreCell {
    CorruptionKind kind = CorruptionKind::GaussianNoise;
    Severity severity{1};
    double score = 0.0;
};

/// How per-severity cells collapse into one column value per corruption.
enum class AggregatePolicy {
    Mean,    // average over the severities present
    Worst,   // minimum score over the severities present
    Single,  // the one severity given by `single_level`
};

/// Collapse cells to one value per corruption kind. EmptyCellSet when a
/// reduction has nothing to reduce (no cells at all, or no cell at the
/// requested single level for a kind that has cells).
std::map<CorruptionKind, double> aggregate(const std::vector<ScoreCell>& cells,
                                           AggregatePolicy policy,
                                           int single_level = 1);

/// One model's results on one task.
struct ModelScores {
    std::string model;
    double clean_score = 0.0;
    std::vector<ScoreCell> cells;
    std::vector<double> weights;  // optional; empty = uniform
};

/// A full comparison table: column per corruption (fixed display order,
/// restricted to the kinds that appear), plus Avg and the relative-drop
/// column. Every model must cover the same kind set (ColumnMismatch).
struct RobustnessReport {
    std::string task;
    std::vector<ModelScores> models;
    AggregatePolicy policy = AggregatePolicy::Mean;
    int single_level = 1;
};

/// Column kinds for a report, in fixed display order.
std::vector<CorruptionKind> report_columns(const RobustnessReport& report);

/// Numeric table behind a rendering: per model, the per-column values plus
/// the Avg and relative-drop summaries, all at full precision.
struct ReportRow {
    std::string model;
    double clean_score = 0.0;
    std::vector<double> column_scores;  // parallel to report_columns()
    double average = 0.0;
    double relative_drop = 0.0;
};
std::vector<ReportRow> report_rows(const RobustnessReport& report);

/// Renderings round to two decimals at output time only.
std::string render_csv(const RobustnessReport& report);
std::string render_markdown(const RobustnessReport& report);

/// One cell as stored on disk. kind is empty for the clean cell; severity is
/// empty for clean and for pre-aggregated values.
struct ScoreCellRecord {
    std::string model;
    std::string task;
    std::optional<CorruptionKind> kind;
    std::optional<int> severity;
    double score = 0.0;
};

/// JSON form: {"model","task","kind","severity","score"} with "clean" as
/// the kind and null severity for clean cells.
std::string score_cell_to_json(const ScoreCellRecord& record);
ScoreCellRecord score_cell_from_json(const std::string& json_text);

/// Group parsed cell files into a report. Every model must contribute a
/// clean cell (EmptyCellSet names the model otherwise); tasks must agree
/// (ColumnMismatch).
RobustnessReport assemble_report(const std::vector<ScoreCellRecord>& records,
                                 AggregatePolicy policy = AggregatePolicy::Mean,
                                 int single_level = 1);

/// Per-severity curve data for one model: rows (kind, severity, score) in
/// column order then severity order, as plottable CSV.
std::string render_severity_curves(const RobustnessReport& report);

}  // namespace reobench::metrics
