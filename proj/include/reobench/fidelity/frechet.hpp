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

#include <string>
#include <vector>

#include "reobench/raster.hpp"

namespace reobench::fidelity {

/// n feature vectors of equal dimension, row-major.
struct EmbeddingSet {
    std::size_t count = 0;
    std::size_t dim = 0;
    std::vector<double> data;  // count * dim

    double at(std::size_t row, std::size_t col) const {
        return data[row * dim + col];
    }
};

/// Sample mean and unbiased (n-1) covariance.
struct EmbeddingStats {
    std::vector<double> mean;        // dim
    std::vector<double> covariance;  // dim * dim, row-major
};

/// TooFewSamples when count < 2.
EmbeddingStats embedding_stats(const EmbeddingSet& set);

/// Principal square root of a symmetric positive semi-definite matrix
/// (row-major, dim x dim) via eigendecomposition; negative eigenvalues from
/// numerical noise clamp to zero. NonConvergentEigen when the solver fails.
std::vector<double> matrix_sqrt_psd(const std::vector<double>& matrix,
                                    std::size_t dim);

/// Squared Frechet distance between the Gaussians fitted to two sets:
///   |mu_a - mu_b|^2 + tr(Ca) + tr(Cb) - 2 tr((Ca^{1/2} Cb Ca^{1/2})^{1/2}).
/// Near-singular products get an epsilon ridge on both covariances before
/// the square root; tiny negative eigenvalues clamp to zero; the result is
/// clamped at zero. DimensionMismatch when the dims differ.
double frechet_distance(const EmbeddingStats& a, const EmbeddingStats& b);
double frechet_distance(const EmbeddingSet& a, const EmbeddingSet& b);

/// Fixed hand-rolled image embedding for fidelity checks without an external
/// network: the image is averaged into a grid_w x grid_h grid and each cell
/// contributes per-channel mean and mean-of-squares, giving
/// dim = grid_w * grid_h * channels * 2.
std::vector<double> pixel_embedding(const ImageRaster& img, int grid_w = 4,
                                    int grid_h = 4);
EmbeddingSet pixel_embedding_set(const std::vector<ImageRaster>& images,
                                 int grid_w = 4, int grid_h = 4);

/// Distance of each severity rung from the clean reference, in input order.
struct SeveritySweep {
    std::vector<int> levels;
    std::vector<double> distances;

    /// True when distances strictly increase with the level order given.
    bool strictly_increasing() const;
};
SeveritySweep severity_sweep(const EmbeddingSet& clean,
                             const std::vector<EmbeddingSet>& per_level,
                             const std::vector<int>& levels);

}  // namespace reobench::fidelity
