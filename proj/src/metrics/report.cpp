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

#include "reobench/metrics/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "reobench/error.hpp"

namespace reobench::metrics {

using nlohmann::json;

double r_tp(double clean_score, const std::vector<double>& scores,
            const std::vector<double>& weights) {
    if (clean_score == 0.0) {
        raise(ErrorCode::ZeroCleanScore, "clean score is zero");
    }
    if (scores.empty()) {
        raise(ErrorCode::EmptyCellSet, "no corrupted scores given");
    }
    std::vector<double> w = weights;
    if (w.empty()) {
        w.assign(scores.size(), 1.0 / static_cast<double>(scores.size()));
    } else {
        if (w.size() != scores.size()) {
            raise(ErrorCode::InvalidWeights,
                  std::to_string(w.size()) + " weights for " +
                      std::to_string(scores.size()) + " scores");
        }
        double sum = 0.0;
        for (double v : w) {
            if (v <= 0.0) {
                raise(ErrorCode::InvalidWeights, "weights must be positive");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-6) {
            raise(ErrorCode::InvalidWeights,
                  "weights sum to " + std::to_string(sum) + ", expected 1");
        }
    }
    double corrupted_avg = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        corrupted_avg += w[i] * scores[i];
    }
    return 100.0 * (clean_score - corrupted_avg) / clean_score;
}

std::map<CorruptionKind, double> aggregate(const std::vector<ScoreCell>& cells,
                                           AggregatePolicy policy,
                                           int single_level) {
    if (cells.empty()) {
        raise(ErrorCode::EmptyCellSet, "no score cells to aggregate");
    }
    std::map<CorruptionKind, std::vector<ScoreCell>> by_kind;
    for (const ScoreCell& cell : cells) by_kind[cell.kind].push_back(cell);

    std::map<CorruptionKind, double> out;
    for (const auto& [kind, group] : by_kind) {
        switch (policy) {
            case AggregatePolicy::Mean: {
                double sum = 0.0;
                for (const ScoreCell& cell : group) sum += cell.score;
                out[kind] = sum / static_cast<double>(group.size());
                break;
            }
            case AggregatePolicy::Worst: {
                double worst = group.front().score;
                for (const ScoreCell& cell : group) {
                    worst = std::min(worst, cell.score);
                }
                out[kind] = worst;
                break;
            }
            case AggregatePolicy::Single: {
                const auto it = std::find_if(
                    group.begin(), group.end(), [&](const ScoreCell& cell) {
                        return cell.severity.level == single_level;
                    });
                if (it == group.end()) {
                    raise(ErrorCode::EmptyCellSet,
                          std::string(kind_name(kind)) + " has no cell at " +
                              "severity " + std::to_string(single_level));
                }
                out[kind] = it->score;
                break;
            }
        }
    }
    return out;
}

std::vector<CorruptionKind> report_columns(const RobustnessReport& report) {
    if (report.models.empty()) {
        raise(ErrorCode::EmptyCellSet, "report has no models");
    }
    std::set<CorruptionKind> reference;
    for (const ScoreCell& cell : report.models.front().cells) {
        reference.insert(cell.kind);
    }
    for (const ModelScores& model : report.models) {
        std::set<CorruptionKind> kinds;
        for (const ScoreCell& cell : model.cells) kinds.insert(cell.kind);
        if (kinds != reference) {
            raise(ErrorCode::ColumnMismatch,
                  "model '" + model.model +
                      "' covers a different corruption set");
        }
    }
    std::vector<CorruptionKind> columns;
    for (CorruptionKind kind : report_column_order()) {
        if (reference.count(kind) != 0) columns.push_back(kind);
    }
    return columns;
}

std::vector<ReportRow> report_rows(const RobustnessReport& report) {
    const std::vector<CorruptionKind> columns = report_columns(report);
    std::vector<ReportRow> rows;
    rows.reserve(report.models.size());
    for (const ModelScores& model : report.models) {
        const std::map<CorruptionKind, double> collapsed =
            aggregate(model.cells, report.policy, report.single_level);
        ReportRow row;
        row.model = model.model;
        row.clean_score = model.clean_score;
        row.column_scores.reserve(columns.size());
        for (CorruptionKind kind : columns) {
            row.column_scores.push_back(collapsed.at(kind));
        }
        double avg = 0.0;
        for (double v : row.column_scores) avg += v;
        row.average = avg / static_cast<double>(row.column_scores.size());
        row.relative_drop =
            r_tp(model.clean_score, row.column_scores, model.weights);
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string two_decimals(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_csv(const RobustnessReport& report) {
    const std::vector<CorruptionKind> columns = report_columns(report);
    std::ostringstream out;
    out << "Model,Clean";
    for (CorruptionKind kind : columns) out << ',' << kind_display_name(kind);
    out << ",Avg,R_TP\n";
    for (const ReportRow& row : report_rows(report)) {
        out << row.model << ',' << two_decimals(row.clean_score);
        for (double v : row.column_scores) out << ',' << two_decimals(v);
        out << ',' << two_decimals(row.average) << ','
            << two_decimals(row.relative_drop) << '\n';
    }
    return out.str();
}

std::string render_markdown(const RobustnessReport& report) {
    const std::vector<CorruptionKind> columns = report_columns(report);
    std::ostringstream out;
    out << "| Model | Clean |";
    for (CorruptionKind kind : columns) {
        out << ' ' << kind_display_name(kind) << " |";
    }
    out << " Avg | R_TP |\n";
    out << "| --- | --- |";
    for (std::size_t i = 0; i < columns.size(); ++i) out << " --- |";
    out << " --- | --- |\n";
    for (const ReportRow& row : report_rows(report)) {
        out << "| " << row.model << " | " << two_decimals(row.clean_score)
            << " |";
        for (double v : row.column_scores) out << ' ' << two_decimals(v) << " |";
        out << ' ' << two_decimals(row.average) << " | "
            << two_decimals(row.relative_drop) << " |\n";
    }
    return out.str();
}

std::string score_cell_to_json(const ScoreCellRecord& record) {
    json j;
    j["model"] = record.model;
    j["task"] = record.task;
    j["kind"] = record.kind ? std::string(kind_name(*record.kind)) : "clean";
    if (record.severity) {
        j["severity"] = *record.severity;
    } else {
        j["severity"] = nullptr;
    }
    j["score"] = record.score;
    return j.dump(2) + "\n";
}

ScoreCellRecord score_cell_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        raise(ErrorCode::AnnotationParseError,
              std::string("score cell JSON: ") + e.what());
    }
    ScoreCellRecord record;
    try {
        record.model = j.at("model").get<std::string>();
        record.task = j.value("task", std::string{});
        const std::string kind = j.at("kind").get<std::string>();
        if (kind != "clean") {
            const auto parsed = parse_kind(kind);
            if (!parsed) {
                raise(ErrorCode::UnknownCorruption,
                      "score cell kind '" + kind + "'");
            }
            record.kind = *parsed;
        }
        if (j.contains("severity") && !j.at("severity").is_null()) {
            record.severity = j.at("severity").get<int>();
        }
        record.score = j.at("score").get<double>();
    } catch (const json::exception& e) {
        raise(ErrorCode::AnnotationParseError,
              std::string("score cell JSON: ") + e.what());
    }
    return record;
}

RobustnessReport assemble_report(const std::vector<ScoreCellRecord>& records,
                                 AggregatePolicy policy, int single_level) {
    if (records.empty()) {
        raise(ErrorCode::EmptyCellSet, "no score cells given");
    }
    RobustnessReport report;
    report.policy = policy;
    report.single_level = single_level;

    std::map<std::string, ModelScores> by_model;
    std::map<std::string, bool> has_clean;
    std::vector<std::string> model_order;
    for (const ScoreCellRecord& record : records) {
        if (!record.task.empty()) {
            if (report.task.empty()) {
                report.task = record.task;
            } else if (report.task != record.task) {
                raise(ErrorCode::ColumnMismatch,
                      "cells mix tasks '" + report.task + "' and '" +
                          record.task + "'");
            }
        }
        auto [it, inserted] = by_model.try_emplace(record.model);
        if (inserted) {
            it->second.model = record.model;
            model_order.push_back(record.model);
        }
        if (!record.kind) {
            it->second.clean_score = record.score;
            has_clean[record.model] = true;
        } else {
            ScoreCell cell;
            cell.kind = *record.kind;
            cell.severity = Severity{record.severity.value_or(1)};
            cell.score = record.score;
            it->second.cells.push_back(cell);
        }
    }
    for (const std::string& model : model_order) {
        if (!has_clean[model]) {
            raise(ErrorCode::EmptyCellSet,
                  "model '" + model + "' has no clean cell");
        }
        report.models.push_back(by_model.at(model));
    }
    return report;
}

std::string render_severity_curves(const RobustnessReport& report) {
    const std::vector<CorruptionKind> columns = report_columns(report);
    std::ostringstream out;
    out << "Model,Corruption,Severity,Score\n";
    for (const ModelScores& model : report.models) {
        for (CorruptionKind kind : columns) {
            std::vector<ScoreCell> cells;
            for (const ScoreCell& cell : model.cells) {
                if (cell.kind == kind) cells.push_back(cell);
            }
            std::sort(cells.begin(), cells.end(),
                      [](const ScoreCell& a, const ScoreCell& b) {
                          return a.severity.level < b.severity.level;
                      });
            for (const ScoreCell& cell : cells) {
                out << model.model << ',' << kind_display_name(kind) << ','
                    << cell.severity.level << ',' << two_decimals(cell.score)
                    << '\n';
            }
        }
    }
    return out.str();
}

}  // namespace reobench::metrics
