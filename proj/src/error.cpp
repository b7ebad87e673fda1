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

#include "reobench/error.hpp"

namespace reobench {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidSeverity: return "InvalidSeverity";
        case ErrorCode::UnknownCorruption: return "UnknownCorruption";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DecodeError: return "DecodeError";
        case ErrorCode::EncodeError: return "EncodeError";
        case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::InvalidKernel: return "InvalidKernel";
        case ErrorCode::GapOverflow: return "GapOverflow";
        case ErrorCode::LayoutError: return "LayoutError";
        case ErrorCode::AnnotationParseError: return "AnnotationParseError";
        case ErrorCode::UnsupportedAnnotation: return "UnsupportedAnnotation";
        case ErrorCode::IdMismatch: return "IdMismatch";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::ClassOutOfRange: return "ClassOutOfRange";
        case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
        case ErrorCode::NonConvexPolygon: return "NonConvexPolygon";
        case ErrorCode::ZeroCleanScore: return "ZeroCleanScore";
        case ErrorCode::InvalidWeights: return "InvalidWeights";
        case ErrorCode::EmptyCellSet: return "EmptyCellSet";
        case ErrorCode::ColumnMismatch: return "ColumnMismatch";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonConvergentEigen: return "NonConvergentEigen";
    }
    return "UnknownError";
}

}  // namespace reobench
