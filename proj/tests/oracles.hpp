// SPDX-License-Identifier: Apache-2.0
//
// zfbeam: zero-forcing beamforming for full-duplex mmWave MIMO links
// Copyright (C) 2026 The zfbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ZFBEAM_TESTS_ORACLES_HPP
#define ZFBEAM_TESTS_ORACLES_HPP

// Second implementations of library quantities, written without reusing library code paths.

#include "zfbeam/zfbeam.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle
{
using zfbeam::Complex;
using zfbeam::ComplexMatrix;
using zfbeam::ComplexVector;

inline double distance(const zfbeam::Position &a, const zfbeam::Position &b)
{
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// beta - A x with x = argmin |A x - beta|, from a complete orthogonal decomposition.
inline ComplexVector least_squares_residual(const ComplexMatrix &a, const ComplexVector &beta)
{
    const ComplexVector x = a.completeOrthogonalDecomposition().solve(beta);
    return beta - a * x;
}

inline ComplexMatrix least_squares(const ComplexMatrix &a, const ComplexMatrix &b)
{
    return a.completeOrthogonalDecomposition().pseudoInverse() * b;
}

/// log2 det(I + (rho/n) T^-1 G G^H) from the eigenvalues of the (non-Hermitian) product.
inline double link_rate(const ComplexMatrix &w, const ComplexMatrix &h, const ComplexMatrix &f,
                        const ComplexMatrix &h_si, const ComplexMatrix &f_si, double rho, double tau, double sigma_sq,
                        double streams)
{
    const ComplexMatrix g = w.adjoint() * h * f;
    const ComplexMatrix s = w.adjoint() * h_si * f_si;
    const ComplexMatrix t = sigma_sq * w.adjoint() * w + tau * s * s.adjoint();
    const ComplexMatrix m = ComplexMatrix::Identity(g.rows(), g.rows()) + (rho / streams) * t.inverse() * g * g.adjoint();
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m);
    Complex logdet = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        logdet += std::log(es.eigenvalues()(i));
    return logdet.real() / std::log(2.0);
}

inline double upper_bound(const ComplexMatrix &h21, const ComplexMatrix &h12, double rho, double sigma_sq, int ns)
{
    double r = 0.0;
    for (const ComplexMatrix *h : {&h21, &h12})
    {
        Eigen::BDCSVD<ComplexMatrix> svd(*h);
        for (int n = 0; n < ns; ++n)
            r += std::log2(1.0 + rho / (ns * sigma_sq) * std::pow(svd.singularValues()(n), 2));
    }
    return r;
}

struct OmpTrace
{
    std::vector<Eigen::Index> selected;
    std::vector<double> errors;
};

/// Scores every dictionary column by explicit loops and refits by pseudo-inverse.
inline OmpTrace omp(const ComplexMatrix &full, const ComplexMatrix &dict, int rounds)
{
    OmpTrace tr;
    ComplexMatrix residual = full;
    for (int r = 0; r < rounds; ++r)
    {
        Eigen::Index best = -1;
        double best_score = -1.0;
        for (Eigen::Index j = 0; j < dict.cols(); ++j)
        {
            double score = 0.0;
            for (Eigen::Index k = 0; k < full.cols(); ++k)
            {
                Complex c = 0.0;
                for (Eigen::Index i = 0; i < full.rows(); ++i)
                    c += std::conj(dict(i, j)) * residual(i, k);
                score += std::norm(c);
            }
            if (score > best_score * (1.0 + 1e-12))
            {
                best_score = score;
                best = j;
            }
        }
        tr.selected.push_back(best);
        ComplexMatrix a(full.rows(), static_cast<Eigen::Index>(tr.selected.size()));
        for (std::size_t c = 0; c < tr.selected.size(); ++c)
            a.col(static_cast<Eigen::Index>(c)) = dict.col(tr.selected[c]);
        residual = full - a * least_squares(a, full);
        tr.errors.push_back(residual.norm());
    }
    return tr;
}

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed)
{
    zfbeam::RandomStream rng(seed);
    return rng.complex_normal_matrix(rows, cols);
}
} // namespace oracle

#endif // ZFBEAM_TESTS_ORACLES_HPP
