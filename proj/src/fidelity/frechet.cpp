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

#include "reobench/fidelity/frechet.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "reobench/error.hpp"

namespace reobench::fidelity {

namespace {

constexpr double kRidge = 1e-6;

Eigen::MatrixXd to_matrix(const std::vector<double>& values, std::size_t dim) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(dim),
                      static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                values[r * dim + c];
        }
    }
    return m;
}

Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
        raise(ErrorCode::NonConvergentEigen,
              "eigendecomposition failed on a covariance matrix");
    }
    Eigen::VectorXd roots = solver.eigenvalues();
    for (Eigen::Index i = 0; i < roots.size(); ++i) {
        roots(i) = roots(i) > 0.0 ? std::sqrt(roots(i)) : 0.0;
    }
    return solver.eigenvectors() * roots.asDiagonal() *
           solver.eigenvectors().transpose();
}

double trace_sqrt(const Eigen::MatrixXd& m) {
    // Symmetrize against accumulated asymmetry before decomposing.
    const Eigen::MatrixXd sym = (m + m.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) {
        raise(ErrorCode::NonConvergentEigen,
              "eigendecomposition failed on the cross-covariance product");
    }
    double trace = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double v = solver.eigenvalues()(i);
        if (v > 0.0) trace += std::sqrt(v);
    }
    return trace;
}

}  // namespace

std::vector<double> matrix_sqrt_psd(const std::vector<double>& matrix,
                                    std::size_t dim) {
    if (dim == 0 || matrix.size() != dim * dim) {
        raise(ErrorCode::DimensionMismatch,
              "matrix buffer does not hold dim x dim values");
    }
    const Eigen::MatrixXd root = spd_sqrt(to_matrix(matrix, dim));
    std::vector<double> out(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            out[r * dim + c] = root(static_cast<Eigen::Index>(r),
                                    static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

EmbeddingStats embedding_stats(const EmbeddingSet& set) {
    if (set.count < 2) {
        raise(ErrorCode::TooFewSamples,
              "need >= 2 embedding vectors, got " + std::to_string(set.count));
    }
    if (set.dim == 0 || set.data.size() != set.count * set.dim) {
        raise(ErrorCode::DimensionMismatch,
              "embedding buffer does not match count x dim");
    }
    EmbeddingStats stats;
    stats.mean.assign(set.dim, 0.0);
    for (std::size_t r = 0; r < set.count; ++r) {
        for (std::size_t c = 0; c < set.dim; ++c) {
            stats.mean[c] += set.at(r, c);
        }
    }
    for (double& v : stats.mean) v /= static_cast<double>(set.count);

    stats.covariance.assign(set.dim * set.dim, 0.0);
    for (std::size_t r = 0; r < set.count; ++r) {
        for (std::size_t i = 0; i < set.dim; ++i) {
            const double di = set.at(r, i) - stats.mean[i];
            for (std::size_t j = i; j < set.dim; ++j) {
                stats.covariance[i * set.dim + j] +=
                    di * (set.at(r, j) - stats.mean[j]);
            }
        }
    }
    const double divisor = static_cast<double>(set.count - 1);
    for (std::size_t i = 0; i < set.dim; ++i) {
        for (std::size_t j = i; j < set.dim; ++j) {
            const double v = stats.covariance[i * set.dim + j] / divisor;
            stats.covariance[i * set.dim + j] = v;
            stats.covariance[j * set.dim + i] = v;
        }
    }
    return stats;
}

double frechet_distance(const EmbeddingStats& a, const EmbeddingStats& b) {
    if (a.mean.size() != b.mean.size()) {
        raise(ErrorCode::DimensionMismatch,
              "embedding dims " + std::to_string(a.mean.size()) + " vs " +
                  std::to_string(b.mean.size()));
    }
    const std::size_t dim = a.mean.size();
    Eigen::MatrixXd ca = to_matrix(a.covariance, dim);
    Eigen::MatrixXd cb = to_matrix(b.covariance, dim);

    // Ridge both covariances when either is near-singular; keeps the product
    // root defined for rank-deficient small corpora.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> probe_a(ca);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> probe_b(cb);
    if (probe_a.info() != Eigen::Success || probe_b.info() != Eigen::Success) {
        raise(ErrorCode::NonConvergentEigen,
              "eigendecomposition failed on input covariance");
    }
    const double min_eig =
        std::min(probe_a.eigenvalues().minCoeff(),
                 probe_b.eigenvalues().minCoeff());
    if (min_eig < 1e-10) {
        const Eigen::MatrixXd ridge =
            kRidge * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim),
                                               static_cast<Eigen::Index>(dim));
        ca += ridge;
        cb += ridge;
    }

    double mean_sq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double d = a.mean[i] - b.mean[i];
        mean_sq += d * d;
    }

    const Eigen::MatrixXd root_a = spd_sqrt(ca);
    const double cross = trace_sqrt(root_a * cb * root_a);
    const double dist = mean_sq + ca.trace() + cb.trace() - 2.0 * cross;
    return dist < 0.0 ? 0.0 : dist;
}

double frechet_distance(const EmbeddingSet& a, const EmbeddingSet& b) {
    return frechet_distance(embedding_stats(a), embedding_stats(b));
}

std::vector<double> pixel_embedding(const ImageRaster& img, int grid_w,
                                    int grid_h) {
    if (grid_w < 1 || grid_h < 1) {
        raise(ErrorCode::InvalidArgument, "embedding grid must be >= 1x1");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(grid_w) * grid_h * img.channels * 2);
    for (int gy = 0; gy < grid_h; ++gy) {
        const int y0 = static_cast<int>(
            static_cast<std::int64_t>(gy) * img.height / grid_h);
        const int y1 = static_cast<int>(
            static_cast<std::int64_t>(gy + 1) * img.height / grid_h);
        for (int gx = 0; gx < grid_w; ++gx) {
            const int x0 = static_cast<int>(
                static_cast<std::int64_t>(gx) * img.width / grid_w);
            const int x1 = static_cast<int>(
                static_cast<std::int64_t>(gx + 1) * img.width / grid_w);
            for (int c = 0; c < img.channels; ++c) {
                double sum = 0.0, sum_sq = 0.0;
                std::int64_t n = 0;
                for (int y = y0; y < y1; ++y) {
                    for (int x = x0; x < x1; ++x) {
                        const double v = img.at(x, y, c);
                        sum += v;
                        sum_sq += v * v;
                        ++n;
                    }
                }
                if (n == 0) {
                    out.push_back(0.0);
                    out.push_back(0.0);
                } else {
                    out.push_back(sum / static_cast<double>(n));
                    out.push_back(sum_sq / static_cast<double>(n));
                }
            }
        }
    }
    return out;
}

EmbeddingSet pixel_embedding_set(const std::vector<ImageRaster>& images,
                                 int grid_w, int grid_h) {
    EmbeddingSet set;
    for (const ImageRaster& img : images) {
        const std::vector<double> vec = pixel_embedding(img, grid_w, grid_h);
        if (set.count == 0) {
            set.dim = vec.size();
        } else if (vec.size() != set.dim) {
            raise(ErrorCode::DimensionMismatch,
                  "image embeddings disagree on dimension");
        }
        set.data.insert(set.data.end(), vec.begin(), vec.end());
        ++set.count;
    }
    return set;
}

bool SeveritySweep::strictly_increasing() const {
    for (std::size_t i = 1; i < distances.size(); ++i) {
        if (distances[i] <= distances[i - 1]) return false;
    }
    return true;
}

SeveritySweep severity_sweep(const EmbeddingSet& clean,
                             const std::vector<EmbeddingSet>& per_level,
                             const std::vector<int>& levels) {
    if (per_level.size() != levels.size()) {
        raise(ErrorCode::InvalidArgument,
              "severity list and embedding list differ in length");
    }
    const EmbeddingStats clean_stats = embedding_stats(clean);
    SeveritySweep sweep;
    sweep.levels = levels;
    sweep.distances.reserve(per_level.size());
    for (const EmbeddingSet& set : per_level) {
        sweep.distances.push_back(
            frechet_distance(clean_stats, embedding_stats(set)));
    }
    return sweep;
}

}  // namespace reobench::fidelity
