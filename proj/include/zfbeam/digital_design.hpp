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

#ifndef ZFBEAM_DIGITAL_DESIGN_HPP
#define ZFBEAM_DIGITAL_DESIGN_HPP

#include "zfbeam/beamformers.hpp"
#include "zfbeam/channel.hpp"
#include "zfbeam/metrics.hpp"
#include "zfbeam/projector.hpp"
#include "zfbeam/random.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

namespace zfbeam
{
struct DigitalSolverOptions
{
    int ns = 2;
    double tol = 1e-6; // relative change of the sum rate between outer cycles
    int max_outer = 100;
    int zf_iter = 4;   // zf_cyclic_max passes per column
    LinkPowers powers; // powers at which the stopping objective is evaluated
};

struct DigitalSolveResult
{
    DigitalBeamformers beams;
    std::vector<double> objective_trace; // sum rate after each outer cycle
    int iterations = 0;
    bool converged = false;
};

namespace detail
{
/// Designs the columns of one beamformer: column i maximizes |z^H b_i| subject to
/// z orthogonal to range(si_directions) and to columns 0..i-1 (deflation).
/// The result has orthonormal columns.
inline ComplexMatrix design_zf_columns(const ComplexMatrix &matched, const ComplexMatrix &si_directions, int zf_iter,
                                       RandomStream &rng, const char *what)
{
    const Eigen::Index n = matched.rows();
    const Eigen::Index cols = matched.cols();
    ComplexMatrix z(n, cols);
    ComplexMatrix constraint(n, si_directions.cols() + cols);
    constraint.leftCols(si_directions.cols()) = si_directions;

    for (Eigen::Index i = 0; i < cols; ++i)
    {
        constraint.col(si_directions.cols() + i).setZero();
        const NullSpaceProjector projector(constraint.leftCols(si_directions.cols() + i));
        if (projector.null_dimension() < 1)
            throw Infeasible(std::string(what) + ": no zero-forcing dimension left for column " + std::to_string(i));

        ComplexVector beta = matched.col(i);
        ComplexVector col;
        for (int attempt = 0;; ++attempt)
        {
            try
            {
                col = zf_cyclic_max(beta, projector, 1e-12, zf_iter);
                break;
            }
            catch (const DegenerateStart &)
            {
                if (attempt >= 8)
                    throw Infeasible(std::string(what) + ": matched direction stays inside the zero-forcing span");
                beta = rng.complex_normal_matrix(n, 1);
            }
        }
        // one more pass tightens orthogonality after normalization
        col = projector.apply(col);
        col.normalize();
        z.col(i) = col;
        constraint.col(si_directions.cols() + i) = col;
    }
    return z;
}

inline void scale_to_frobenius(ComplexMatrix &m, double target_sq, const char *what)
{
    const double nrm = m.norm();
    if (!(nrm > 0.0))
        throw NumericDegeneracy(std::string(what) + ": zero-norm matrix");
    m *= std::sqrt(target_sq) / nrm;
}

inline ComplexMatrix random_unit_frobenius(Eigen::Index rows, Eigen::Index cols, double target_sq, RandomStream &rng)
{
    ComplexMatrix m = rng.complex_normal_matrix(rows, cols);
    scale_to_frobenius(m, target_sq, "initialization");
    return m;
}
} // namespace detail

/// Fully-digital zero-forcing max-power design for both nodes.
///
/// Each outer cycle updates W1, W2 (precoders fixed), then F1, F2 (combiners fixed).
/// Every column solves max |z^H beta|^2 s.t. z orthogonal to the SI directions, with beta
/// the matched direction (e.g. H21 F2 e_i for W1) and earlier columns deflated. After
/// each update the SI product W_u^H H_uu F_u is zero for the current pair.
inline DigitalSolveResult solve_p1(const ChannelSet &ch, const DigitalSolverOptions &opt, RandomStream &rng)
{
    const int ns = opt.ns;
    if (ns < 1)
        throw InvalidArgument("solve_p1: n_s must be >= 1");
    const Eigen::Index min_dim =
        std::min({ch.h21.rows(), ch.h21.cols(), ch.h12.rows(), ch.h12.cols()});
    if (ns > min_dim)
        throw Infeasible("solve_p1: n_s exceeds the antenna count");
    if (opt.max_outer < 1)
        throw InvalidArgument("solve_p1: max_outer must be >= 1");

    DigitalBeamformers b;
    b.f1 = detail::random_unit_frobenius(ch.h12.cols(), ns, ns, rng);
    b.f2 = detail::random_unit_frobenius(ch.h21.cols(), ns, ns, rng);

    DigitalSolveResult res;
    double prev = 0.0;
    for (int it = 0; it < opt.max_outer; ++it)
    {
        b.w1 = detail::design_zf_columns(ch.h21 * b.f2, ch.h11 * b.f1, opt.zf_iter, rng, "solve_p1 W1");
        b.w2 = detail::design_zf_columns(ch.h12 * b.f1, ch.h22 * b.f2, opt.zf_iter, rng, "solve_p1 W2");
        b.f1 = detail::design_zf_columns(ch.h12.adjoint() * b.w2, ch.h11.adjoint() * b.w1, opt.zf_iter, rng,
                                         "solve_p1 F1");
        b.f2 = detail::design_zf_columns(ch.h21.adjoint() * b.w1, ch.h22.adjoint() * b.w2, opt.zf_iter, rng,
                                         "solve_p1 F2");

        const double rate = sum_rate_digital(b, ch, opt.powers).sum;
        res.objective_trace.push_back(rate);
        res.iterations = it + 1;
        if (it > 0 && std::abs(rate - prev) <= opt.tol * std::abs(prev))
        {
            res.converged = true;
            break;
        }
        prev = rate;
    }

    for (ComplexMatrix *m : {&b.f1, &b.f2, &b.w1, &b.w2})
        detail::scale_to_frobenius(*m, ns, "solve_p1");
    res.beams = std::move(b);
    return res;
}
} // namespace zfbeam

#endif // ZFBEAM_DIGITAL_DESIGN_HPP
