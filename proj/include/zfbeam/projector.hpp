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

#ifndef ZFBEAM_PROJECTOR_HPP
#define ZFBEAM_PROJECTOR_HPP

#include "zfbeam/types.hpp"

#include <cmath>
#include <concepts>
#include <limits>
#include <vector>

namespace zfbeam
{
/// Columns of null_basis span the directions a beamformer column must be orthogonal to.
struct ZfConstraint
{
    ComplexMatrix null_basis; // N x K

    [[nodiscard]] Eigen::Index dimension() const { return null_basis.rows(); }
};

/// Every entry of a CA-feasible vector has modulus entry_magnitude.
struct CaSubspaceSpec
{
    double entry_magnitude = 1.0;
};

/// Cached orthogonal projector onto the orthogonal complement of range(A):
/// P = I - A (A^H A)^+ A^H = I - Q Q^H, Q an orthonormal basis of range(A).
/// Singular values below 1e-10 sigma_max are treated as zero.
class NullSpaceProjector
{
public:
    static constexpr double kRankTolerance = 1e-10;

    NullSpaceProjector() = default;

    explicit NullSpaceProjector(const ComplexMatrix &a) : a_(a), a_norm_(a.norm())
    {
        if (a.cols() == 0 || a_norm_ == 0.0 || !a.allFinite())
        {
            if (!a.allFinite())
                throw InvalidArgument("ZfConstraint: null_basis has non-finite entries");
            basis_.resize(a.rows(), 0);
            return;
        }
        Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU);
        const RealVector &s = svd.singularValues();
        Eigen::Index rank = 0;
        while (rank < s.size() && s(rank) > kRankTolerance * s(0))
            ++rank;
        basis_ = svd.matrixU().leftCols(rank);
    }

    explicit NullSpaceProjector(const ZfConstraint &c) : NullSpaceProjector(c.null_basis) {}

    [[nodiscard]] Eigen::Index ambient_dimension() const { return basis_.rows(); }
    [[nodiscard]] Eigen::Index rank() const { return basis_.cols(); }
    [[nodiscard]] Eigen::Index null_dimension() const { return basis_.rows() - basis_.cols(); }
    [[nodiscard]] const ComplexMatrix &range_basis() const { return basis_; }

    [[nodiscard]] ComplexVector apply(const ComplexVector &beta) const
    {
        if (basis_.cols() == 0)
            return beta;
        return beta - basis_ * (basis_.adjoint() * beta);
    }

    /// sin of the angle between z and the null space, |Q^H z| / |z|.
    [[nodiscard]] double distance(const ComplexVector &z) const
    {
        const double zn = z.norm();
        if (basis_.cols() == 0 || zn == 0.0)
            return 0.0;
        return (basis_.adjoint() * z).norm() / zn;
    }

    /// |A^H z| / (|A|_F |z|).
    [[nodiscard]] double residual(const ComplexVector &z) const
    {
        const double zn = z.norm();
        if (a_norm_ == 0.0 || zn == 0.0 || a_.cols() == 0)
            return 0.0;
        return (a_.adjoint() * z).norm() / (a_norm_ * zn);
    }

private:
    ComplexMatrix a_;
    double a_norm_ = 0.0;
    ComplexMatrix basis_;
};

/// (I - A (A^H A)^+ A^H) beta.
inline ComplexVector zf_project(const ComplexVector &beta, const ZfConstraint &constraint)
{
    if (beta.size() != constraint.dimension())
        throw InvalidArgument("zf_project: beta length does not match the constraint dimension");
    return NullSpaceProjector(constraint).apply(beta);
}

/// Entry i -> entry_magnitude * z_i / |z_i|; zero entries take phase 0.
inline ComplexVector ca_project(const ComplexVector &z, const CaSubspaceSpec &spec)
{
    ComplexVector out(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i)
    {
        const double mag = std::abs(z(i));
        out(i) = mag > 0.0 ? z(i) * (spec.entry_magnitude / mag) : Complex(spec.entry_magnitude, 0.0);
    }
    return out;
}

namespace detail
{
inline void ca_project_inplace(ComplexVector &z, double magnitude)
{
    for (Eigen::Index i = 0; i < z.size(); ++i)
    {
        const double mag = std::abs(z(i));
        z(i) = mag > 0.0 ? z(i) * (magnitude / mag) : Complex(magnitude, 0.0);
    }
}
} // namespace detail

/// Zero-forcing cyclic maximization: z(n) = P z(n-1) from z(0) = beta0 until the relative
/// change drops below tol or max_iter passes. Returns a unit-norm vector.
inline ComplexVector zf_cyclic_max(const ComplexVector &beta0, const NullSpaceProjector &projector, double tol,
                                   int max_iter)
{
    if (max_iter < 1)
        throw InvalidArgument("zf_cyclic_max: max_iter must be >= 1");
    if (beta0.size() != projector.ambient_dimension())
        throw InvalidArgument("zf_cyclic_max: beta0 length does not match the constraint dimension");
    const double start_norm = beta0.norm();
    if (!(start_norm > 0.0))
        throw DegenerateStart("zf_cyclic_max: zero start vector");

    ComplexVector z = beta0;
    for (int n = 0; n < max_iter; ++n)
    {
        ComplexVector next = projector.apply(z);
        const double prev_norm = z.norm();
        if (next.norm() <= 1e-12 * start_norm)
            throw DegenerateStart("zf_cyclic_max: start vector lies inside the zero-forcing span");
        const double change = (next - z).norm() / prev_norm;
        z = std::move(next);
        if (change < tol)
            break;
    }
    z.normalize();
    return z;
}

inline ComplexVector zf_cyclic_max(const ComplexVector &beta0, const ZfConstraint &constraint, double tol,
                                   int max_iter)
{
    return zf_cyclic_max(beta0, NullSpaceProjector(constraint), tol, max_iter);
}

/// A power objective exposes its value and the power-iteration ascent step.
template <typename T>
concept PowerObjective = requires(const T &obj, const ComplexVector &z) {
    { obj.value(z) } -> std::convertible_to<double>;
    { obj.ascent(z) } -> std::convertible_to<ComplexVector>;
};

/// f(z) = |B^H z|^2, ascent z -> B B^H z.
class QuadraticPower
{
public:
    explicit QuadraticPower(ComplexMatrix factor) : factor_(std::move(factor)) {}

    [[nodiscard]] double value(const ComplexVector &z) const { return (factor_.adjoint() * z).squaredNorm(); }
    [[nodiscard]] ComplexVector ascent(const ComplexVector &z) const { return factor_ * (factor_.adjoint() * z); }
    [[nodiscard]] const ComplexMatrix &factor() const { return factor_; }

private:
    ComplexMatrix factor_;
};

struct AlternatingProjectionParams
{
    int inner_iter = 20;   // power-ascent + CA steps per outer iteration
    int outer_iter = 50;   // ZF cycles
    double tol = 1e-6;     // relative objective change
    int zf_cycle_iter = 4000;        // alternating ZF/CA projections per ZF cycle
    double zf_tol = 1e-12;           // stop a ZF cycle once the null-space distance is below this
    double residual_threshold = 1e-3; // iterates above this residual are not eligible as "best"
};

struct AlternatingProjectionResult
{
    ComplexVector z;
    double residual = std::numeric_limits<double>::infinity(); // |A^H z| / (|A|_F |z|)
    double objective = 0.0;
    bool feasible = false; // residual below threshold
    int outer_iterations = 0;
    std::vector<double> best_history; // best objective after each outer iteration (feasible iterates only)
};

/// Alternating projection between the ZF null space and the CA set, with power ascent.
///
/// Outer loop (ZF cycle): alternate z <- CA(P z) until z is within zf_tol of the null space.
/// Inner loop: z <- CA(P B B^H P z), the power-iteration update restricted to the null space.
/// The returned vector is the best CA point (by objective) whose residual is below the
/// threshold; if none qualifies, the minimum-residual CA point. Its entries have modulus
/// entry_magnitude exactly.
template <PowerObjective Objective>
AlternatingProjectionResult alternating_zf_ca(const ComplexVector &beta0, const NullSpaceProjector &projector,
                                              const CaSubspaceSpec &ca, const Objective &objective,
                                              const AlternatingProjectionParams &params = {})
{
    if (params.inner_iter < 1 || params.outer_iter < 1)
        throw InvalidArgument("alternating_zf_ca: iteration counts must be >= 1");
    if (beta0.size() != projector.ambient_dimension())
        throw InvalidArgument("alternating_zf_ca: beta0 length does not match the constraint dimension");

    const double magnitude = ca.entry_magnitude;
    const ComplexMatrix &q = projector.range_basis();
    const bool empty = q.cols() == 0;

    ComplexVector z = projector.apply(beta0);
    if (z.norm() == 0.0)
        z = beta0;
    detail::ca_project_inplace(z, magnitude);

    AlternatingProjectionResult best;
    AlternatingProjectionResult fallback;
    ComplexVector coeff(q.cols());

    for (int outer = 0; outer < params.outer_iter; ++outer)
    {
        // inner: power ascent inside the null space, then back onto the CA set
        double f = objective.value(z);
        for (int inner = 0; inner < params.inner_iter; ++inner)
        {
            ComplexVector y = objective.ascent(projector.apply(z));
            y = projector.apply(y);
            if (!(y.norm() > 0.0))
                break;
            detail::ca_project_inplace(y, magnitude);
            const double fn = objective.value(y);
            z = std::move(y);
            const bool settled = std::abs(fn - f) <= params.tol * std::abs(f);
            f = fn;
            if (settled)
                break;
        }

        // ZF cycle
        if (!empty)
        {
            for (int k = 0; k < params.zf_cycle_iter; ++k)
            {
                coeff.noalias() = q.adjoint() * z;
                if (coeff.norm() < params.zf_tol * z.norm())
                    break;
                z.noalias() -= q * coeff;
                detail::ca_project_inplace(z, magnitude);
            }
        }

        const double r = projector.residual(z);
        const double value = objective.value(z);
        if (r < fallback.residual)
        {
            fallback.z = z;
            fallback.residual = r;
            fallback.objective = value;
        }

        bool improved = false;
        if (r < params.residual_threshold)
        {
            if (!best.feasible || value > best.objective)
            {
                improved = !best.feasible || value > best.objective * (1.0 + params.tol);
                best.z = z;
                best.residual = r;
                best.objective = value;
                best.feasible = true;
            }
        }
        if (best.feasible)
            best.best_history.push_back(best.objective);
        best.outer_iterations = outer + 1;
        if (best.feasible && !improved)
            break;
    }

    if (best.feasible)
        return best;
    fallback.outer_iterations = best.outer_iterations;
    fallback.best_history = std::move(best.best_history);
    return fallback;
}

template <PowerObjective Objective>
AlternatingProjectionResult alternating_zf_ca(const ComplexVector &beta0, const ZfConstraint &constraint,
                                              const CaSubspaceSpec &ca, const Objective &objective,
                                              const AlternatingProjectionParams &params = {})
{
    return alternating_zf_ca(beta0, NullSpaceProjector(constraint), ca, objective, params);
}
} // namespace zfbeam

#endif // ZFBEAM_PROJECTOR_HPP
