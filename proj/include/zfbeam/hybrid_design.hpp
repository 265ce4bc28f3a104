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

#ifndef ZFBEAM_HYBRID_DESIGN_HPP
#define ZFBEAM_HYBRID_DESIGN_HPP

#include "zfbeam/beamformers.hpp"
#include "zfbeam/channel.hpp"
#include "zfbeam/digital_design.hpp"
#include "zfbeam/metrics.hpp"
#include "zfbeam/projector.hpp"
#include "zfbeam/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace zfbeam
{
struct AnalogSolverOptions
{
    int n_rf = 4;
    int cycles = 3; // combiner/precoder alternations
    AlternatingProjectionParams ap;
};

struct AnalogSolveResult
{
    AnalogBeamformers analog;
    // Per-column residuals of the last update of each matrix, order W_RF1, W_RF2, F_RF1, F_RF2.
    std::vector<double> column_residuals;
    double si_residual_node1 = 0.0; // |W_RF1^H H11 F_RF1|_F / (|W_RF1|_F |H11|_F |F_RF1|_F)
    double si_residual_node2 = 0.0;
    bool feasible = false; // both SI residuals below the alternating-projection threshold
};

/// CA entry modulus for an N-element array; |F_RF|_F^2 = N_RF then holds exactly.
inline double ca_entry_magnitude(Eigen::Index n_antennas) { return 1.0 / std::sqrt(static_cast<double>(n_antennas)); }

namespace detail
{
inline ComplexMatrix random_ca_matrix(Eigen::Index rows, Eigen::Index cols, RandomStream &rng)
{
    ComplexMatrix m = rng.complex_normal_matrix(rows, cols);
    const CaSubspaceSpec ca{ca_entry_magnitude(rows)};
    for (Eigen::Index c = 0; c < cols; ++c)
        m.col(c) = ca_project(m.col(c), ca);
    return m;
}

// One analog matrix: column i maximizes |B^H z|^2 on the CA set subject to z orthogonal to
// the SI directions and to the previous columns.
inline ComplexMatrix design_ca_columns(const ComplexMatrix &matched, const ComplexMatrix &si_directions,
                                       const AlternatingProjectionParams &ap, std::vector<double> &residuals,
                                       const char *what)
{
    const Eigen::Index n = matched.rows();
    const Eigen::Index cols = matched.cols();
    const CaSubspaceSpec ca{ca_entry_magnitude(n)};
    const QuadraticPower objective(matched);

    ComplexMatrix z(n, cols);
    ComplexMatrix constraint(n, si_directions.cols() + cols);
    constraint.leftCols(si_directions.cols()) = si_directions;
    for (Eigen::Index i = 0; i < cols; ++i)
    {
        const NullSpaceProjector projector(constraint.leftCols(si_directions.cols() + i));
        if (projector.null_dimension() < 1)
            throw Infeasible(std::string(what) + ": no zero-forcing dimension left for column " + std::to_string(i));
        const AlternatingProjectionResult r = alternating_zf_ca(matched.col(i), projector, ca, objective, ap);
        z.col(i) = r.z;
        constraint.col(si_directions.cols() + i) = r.z;
        residuals.push_back(r.residual);
    }
    return z;
}
} // namespace detail

/// Analog constant-amplitude design for both nodes by alternating projection.
///
/// Same alternation as the digital design (W_RF1, W_RF2, then F_RF1, F_RF2); each column is
/// produced by alternating_zf_ca with the matched effective-channel direction as start and
/// |B^H z|^2 as objective, B the effective channel seen by that matrix (e.g. H21 F_RF2 for W_RF1).
inline AnalogSolveResult solve_p2_analog(const ChannelSet &ch, const AnalogSolverOptions &opt, RandomStream &rng)
{
    const int n_rf = opt.n_rf;
    const Eigen::Index min_dim = std::min({ch.h21.rows(), ch.h21.cols(), ch.h12.rows(), ch.h12.cols()});
    if (n_rf < 1 || n_rf > min_dim)
        throw Infeasible("solve_p2_analog: n_rf must lie in [1, antenna count]");
    if (opt.cycles < 1)
        throw InvalidArgument("solve_p2_analog: cycles must be >= 1");

    AnalogBeamformers a;
    a.f_rf1 = detail::random_ca_matrix(ch.h12.cols(), n_rf, rng);
    a.f_rf2 = detail::random_ca_matrix(ch.h21.cols(), n_rf, rng);

    AnalogSolveResult res;
    for (int c = 0; c < opt.cycles; ++c)
    {
        res.column_residuals.clear();
        a.w_rf1 = detail::design_ca_columns(ch.h21 * a.f_rf2, ch.h11 * a.f_rf1, opt.ap, res.column_residuals,
                                            "solve_p2_analog W_RF1");
        a.w_rf2 = detail::design_ca_columns(ch.h12 * a.f_rf1, ch.h22 * a.f_rf2, opt.ap, res.column_residuals,
                                            "solve_p2_analog W_RF2");
        a.f_rf1 = detail::design_ca_columns(ch.h12.adjoint() * a.w_rf2, ch.h11.adjoint() * a.w_rf1, opt.ap,
                                            res.column_residuals, "solve_p2_analog F_RF1");
        a.f_rf2 = detail::design_ca_columns(ch.h21.adjoint() * a.w_rf1, ch.h22.adjoint() * a.w_rf2, opt.ap,
                                            res.column_residuals, "solve_p2_analog F_RF2");
    }

    res.si_residual_node1 = relative_zf_residual(a.w_rf1, ch.h11, a.f_rf1);
    res.si_residual_node2 = relative_zf_residual(a.w_rf2, ch.h22, a.f_rf2);
    res.feasible = res.si_residual_node1 < opt.ap.residual_threshold &&
                   res.si_residual_node2 < opt.ap.residual_threshold;
    res.analog = std::move(a);
    return res;
}

struct BasebandSolverOptions
{
    int ns = 2;
    double tol = 1e-6; // relative change of the hybrid sum rate
    int max_iter = 100;
    LinkPowers powers;
};

struct BasebandSolveResult
{
    BasebandBeamformers baseband;
    // Hybrid sum rate per iterate: all-identity baseband, identity precoders with their
    // combiners, then one entry per iteration.
    std::vector<double> objective_trace;
    double rate = 0.0;                   // sum rate of the returned iterate
    int iterations = 0;
};

namespace detail
{
// sqrt(n_s) X / |X|_F.
inline ComplexMatrix frobenius_direction(const ComplexMatrix &x, double ns, const char *what)
{
    const double nrm = x.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw NumericDegeneracy(std::string(what) + ": zero-norm closed-form update (degenerate analog stage)");
    return x * (std::sqrt(ns) / nrm);
}

// Orthonormal basis of range(X) with the phase of each column fixed by a positive QR diagonal.
inline ComplexMatrix orthonormal_columns(const ComplexMatrix &x, const char *what)
{
    const double nrm = x.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw NumericDegeneracy(std::string(what) + ": zero-norm closed-form update (degenerate analog stage)");
    Eigen::HouseholderQR<ComplexMatrix> qr(x);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(x.rows(), x.cols());
    const ComplexMatrix &r = qr.matrixQR();
    for (Eigen::Index k = 0; k < x.cols(); ++k)
    {
        const Complex d = r(k, k);
        if (!(std::abs(d) > 1e-12 * nrm))
            throw NumericDegeneracy(std::string(what) + ": rank-deficient closed-form update");
        q.col(k) *= d / std::abs(d);
    }
    return q;
}
} // namespace detail

/// Baseband combiners from the precoders, W_BB,1 = sqrt(n_s) G21 F_BB,2 / |G21 F_BB,2|_F with
/// G21 = W_RF,1^H H21 F_RF,2 (and the mirror for node 2).
inline void baseband_combiners(const ComplexMatrix &g21, const ComplexMatrix &g12, BasebandBeamformers &bb, int ns)
{
    bb.w_bb1 = detail::frobenius_direction(g21 * bb.f_bb2, ns, "solve_p3_digital W_BB1");
    bb.w_bb2 = detail::frobenius_direction(g12 * bb.f_bb1, ns, "solve_p3_digital W_BB2");
}

/// Closed-form baseband design on a fixed analog stage.
///
/// Each iteration applies the combiner closed forms, then the precoder closed forms
/// F_BB,1 ~ F_RF,1^H H12^H W_RF,2 W_BB,2 and F_BB,2 ~ F_RF,2^H H21^H W_RF,1 W_BB,1. Precoder
/// updates are orthonormalized (|F_BB|_F^2 = n_s) so the streams stay separated; the
/// combiners of every iterate are the closed forms of its precoders. Starts from the
/// identity precoders; the returned stage is the best by hybrid sum rate among the iterates
/// and the all-identity baseband. Stops when the rate changes by less than tol (relative).
inline BasebandSolveResult solve_p3_digital(const ChannelSet &ch, const AnalogBeamformers &analog,
                                            const BasebandSolverOptions &opt)
{
    const int ns = opt.ns;
    const Eigen::Index n_rf = analog.f_rf1.cols();
    if (ns < 1 || ns > n_rf)
        throw InvalidArgument("solve_p3_digital: n_s must lie in [1, N_RF]");
    if (opt.max_iter < 1)
        throw InvalidArgument("solve_p3_digital: max_iter must be >= 1");

    const ComplexMatrix g21 = analog.w_rf1.adjoint() * ch.h21 * analog.f_rf2;
    const ComplexMatrix g12 = analog.w_rf2.adjoint() * ch.h12 * analog.f_rf1;

    HybridBeamformers state{analog, BasebandBeamformers::identity(n_rf, ns)};
    BasebandSolveResult res;
    res.baseband = state.baseband;
    res.rate = sum_rate_hybrid(state, ch, opt.powers, ns).sum;
    res.objective_trace.push_back(res.rate);

    baseband_combiners(g21, g12, state.baseband, ns);
    double rate = sum_rate_hybrid(state, ch, opt.powers, ns).sum;
    res.objective_trace.push_back(rate);
    if (rate > res.rate)
    {
        res.rate = rate;
        res.baseband = state.baseband;
    }

    for (int it = 0; it < opt.max_iter; ++it)
    {
        BasebandBeamformers &bb = state.baseband;
        bb.f_bb1 = detail::orthonormal_columns(g12.adjoint() * bb.w_bb2, "solve_p3_digital F_BB1");
        bb.f_bb2 = detail::orthonormal_columns(g21.adjoint() * bb.w_bb1, "solve_p3_digital F_BB2");
        baseband_combiners(g21, g12, bb, ns);

        const double next = sum_rate_hybrid(state, ch, opt.powers, ns).sum;
        res.objective_trace.push_back(next);
        res.iterations = it + 1;
        if (next > res.rate)
        {
            res.rate = next;
            res.baseband = bb;
        }
        const bool settled = std::abs(next - rate) <= opt.tol * std::abs(rate);
        rate = next;
        if (settled)
            break;
    }
    return res;
}

struct HybridSolverOptions
{
    AnalogSolverOptions analog;
    BasebandSolverOptions baseband;
};

struct HybridSolveResult
{
    HybridBeamformers beams;
    AnalogSolveResult analog_report;
    BasebandSolveResult baseband_report;
};

/// Analog stage first, then the baseband stage on top of it.
inline HybridSolveResult solve_hybrid(const ChannelSet &ch, const HybridSolverOptions &opt, RandomStream &rng)
{
    if (opt.baseband.ns > opt.analog.n_rf)
        throw InvalidArgument("solve_hybrid: n_s must not exceed n_rf");
    HybridSolveResult out;
    out.analog_report = solve_p2_analog(ch, opt.analog, rng);
    out.baseband_report = solve_p3_digital(ch, out.analog_report.analog, opt.baseband);
    out.beams = {out.analog_report.analog, out.baseband_report.baseband};
    return out;
}
} // namespace zfbeam

#endif // ZFBEAM_HYBRID_DESIGN_HPP
