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

#ifndef ZFBEAM_BASELINES_HPP
#define ZFBEAM_BASELINES_HPP

#include "zfbeam/beamformers.hpp"
#include "zfbeam/channel.hpp"
#include "zfbeam/digital_design.hpp"
#include "zfbeam/geometry.hpp"
#include "zfbeam/hybrid_design.hpp"
#include "zfbeam/metrics.hpp"
#include "zfbeam/projector.hpp"

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace zfbeam
{
/// Covariance inverted by the MMSE combiner of the SVD baseline.
enum class MmseCovariance
{
    kSignalPlusNoise,       // (rho/n_s) H F F^H H^H + sigma^2 I; SI ignored
    kInterferencePlusNoise, // sigma^2 I + tau (H_uu F_u)(H_uu F_u)^H
};

inline MmseCovariance parse_mmse_covariance(std::string_view s)
{
    if (s == "signal_plus_noise")
        return MmseCovariance::kSignalPlusNoise;
    if (s == "interference_plus_noise")
        return MmseCovariance::kInterferencePlusNoise;
    throw InvalidArgument("unknown MMSE covariance '" + std::string(s) + "'");
}

namespace detail
{
inline ComplexMatrix top_right_singular_vectors(const ComplexMatrix &h, int ns, const char *what)
{
    Eigen::JacobiSVD<ComplexMatrix> svd(h, Eigen::ComputeThinV);
    const RealVector &s = svd.singularValues();
    if (ns > s.size() || !(s(0) > 0.0) || !(s(ns - 1) > 1e-10 * s(0)))
        throw Infeasible(std::string(what) + ": link channel rank is below n_s");
    return svd.matrixV().leftCols(ns);
}

inline ComplexMatrix mmse_combiner(const ComplexMatrix &h_link, const ComplexMatrix &f_link, const ComplexMatrix &h_si,
                                   const ComplexMatrix &f_si, const NodePowers &pw, int ns, MmseCovariance mode)
{
    const ComplexMatrix hf = h_link * f_link;
    const Eigen::Index n = h_link.rows();
    ComplexMatrix r = pw.sigma_sq * ComplexMatrix::Identity(n, n);
    if (mode == MmseCovariance::kSignalPlusNoise)
        r += (pw.rho / ns) * hf * hf.adjoint();
    else
    {
        const ComplexMatrix s = h_si * f_si;
        r += pw.tau * s * s.adjoint();
    }
    ComplexMatrix w = r.llt().solve(hf);
    scale_to_frobenius(w, ns, "svd_mmse_design");
    return w;
}
} // namespace detail

/// SVD precoding with MMSE combining; the SI is not nulled.
/// F_u holds the top-n_s right singular vectors of the outgoing link (|F_u|_F^2 = n_s); W_u is
/// the MMSE combiner for the chosen covariance, scaled to |W_u|_F^2 = n_s.
inline DigitalBeamformers svd_mmse_design(const ChannelSet &ch, int ns, const LinkPowers &powers,
                                          MmseCovariance mode = MmseCovariance::kSignalPlusNoise)
{
    if (ns < 1)
        throw InvalidArgument("svd_mmse_design: n_s must be >= 1");
    DigitalBeamformers b;
    b.f1 = detail::top_right_singular_vectors(ch.h12, ns, "svd_mmse_design H12");
    b.f2 = detail::top_right_singular_vectors(ch.h21, ns, "svd_mmse_design H21");
    b.w1 = detail::mmse_combiner(ch.h21, b.f2, ch.h11, b.f1, powers.node1(), ns, mode);
    b.w2 = detail::mmse_combiner(ch.h12, b.f1, ch.h22, b.f2, powers.node2(), ns, mode);
    return b;
}

/// Unit-norm steering vectors on an n_azimuth x n_elevation grid of cell centers over
/// azimuth [-pi, pi) and elevation [pi/4, 3pi/4). Column index i * n_elevation + j.
inline ComplexMatrix steering_dictionary(const UraSpec &ura, double wavelength, int n_azimuth = 8,
                                         int n_elevation = 8)
{
    if (n_azimuth < 1 || n_elevation < 1)
        throw InvalidArgument("steering_dictionary: grid sizes must be >= 1");
    ComplexMatrix d(ura.size(), static_cast<Eigen::Index>(n_azimuth) * n_elevation);
    for (int i = 0; i < n_azimuth; ++i)
        for (int j = 0; j < n_elevation; ++j)
        {
            const AnglePair a{-kPi + 2.0 * kPi * (i + 0.5) / n_azimuth, kPi / 4.0 + (kPi / 2.0) * (j + 0.5) / n_elevation};
            d.col(static_cast<Eigen::Index>(i) * n_elevation + j) = ura_response(ura, a, wavelength);
        }
    return d;
}

struct SplitResult
{
    ComplexMatrix analog;             // N x N_RF, CA entries of modulus 1/sqrt(N)
    ComplexMatrix baseband;           // N_RF x N_s, |.|_F^2 = N_s
    ComplexMatrix ls_baseband;        // least-squares fit before rescaling
    std::vector<double> round_errors; // |full - analog[:, :r] B_ls|_F after round r
    std::vector<Eigen::Index> selected; // dictionary indices (OMP only)
};

namespace detail
{
inline ComplexMatrix least_squares(const ComplexMatrix &a, const ComplexMatrix &b)
{
    return a.colPivHouseholderQr().solve(b);
}

inline void finish_split(SplitResult &r, const ComplexMatrix &full)
{
    const double mag = ca_entry_magnitude(full.rows());
    for (Eigen::Index c = 0; c < r.analog.cols(); ++c)
        r.analog.col(c) = ca_project(r.analog.col(c), CaSubspaceSpec{mag});
    r.baseband = r.ls_baseband;
    scale_to_frobenius(r.baseband, static_cast<double>(full.cols()), "hybrid split");
}
} // namespace detail

/// Orthogonal matching pursuit over the dictionary columns (assumed unit-norm).
/// Ties in the correlation (equal to within 1e-12 relative) go to the smallest index.
inline SplitResult omp_split(const ComplexMatrix &full, const ComplexMatrix &dictionary, int n_rf)
{
    if (n_rf < 1 || n_rf > dictionary.cols())
        throw InvalidArgument("omp_split: n_rf must lie in [1, dictionary size]");
    if (dictionary.rows() != full.rows())
        throw InvalidArgument("omp_split: dictionary row count does not match the target");

    SplitResult r;
    r.analog.resize(full.rows(), n_rf);
    ComplexMatrix residual = full;
    for (int k = 0; k < n_rf; ++k)
    {
        const RealVector corr = (dictionary.adjoint() * residual).rowwise().norm();
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j < corr.size(); ++j)
            if (corr(j) > corr(best) * (1.0 + 1e-12))
                best = j;
        r.selected.push_back(best);
        r.analog.col(k) = dictionary.col(best);
        r.ls_baseband = detail::least_squares(r.analog.leftCols(k + 1), full);
        residual = full - r.analog.leftCols(k + 1) * r.ls_baseband;
        r.round_errors.push_back(residual.norm());
    }
    detail::finish_split(r, full);
    return r;
}

/// Rank-one greedy peeling: each round CA-projects the dominant left singular vector of the
/// residual and refits the baseband by least squares.
inline SplitResult greedy_split(const ComplexMatrix &full, int n_rf)
{
    if (n_rf < 1)
        throw InvalidArgument("greedy_split: n_rf must be >= 1");
    const CaSubspaceSpec ca{ca_entry_magnitude(full.rows())};

    SplitResult r;
    r.analog.resize(full.rows(), n_rf);
    ComplexMatrix residual = full;
    for (int k = 0; k < n_rf; ++k)
    {
        Eigen::JacobiSVD<ComplexMatrix> svd(residual, Eigen::ComputeThinU);
        r.analog.col(k) = ca_project(svd.matrixU().col(0), ca);
        r.ls_baseband = detail::least_squares(r.analog.leftCols(k + 1), full);
        residual = full - r.analog.leftCols(k + 1) * r.ls_baseband;
        r.round_errors.push_back(residual.norm());
    }
    detail::finish_split(r, full);
    return r;
}

enum class SplitMethod
{
    kOmp,
    kGreedy,
};

/// Splits every fully-digital beamformer into an analog and a baseband stage.
/// dict_tx serves the precoders, dict_rx the combiners (OMP only).
inline HybridBeamformers split_digital(const DigitalBeamformers &d, SplitMethod method, const ComplexMatrix &dict_tx,
                                       const ComplexMatrix &dict_rx, int n_rf)
{
    auto one = [&](const ComplexMatrix &m, const ComplexMatrix &dict) {
        return method == SplitMethod::kOmp ? omp_split(m, dict, n_rf) : greedy_split(m, n_rf);
    };
    const SplitResult f1 = one(d.f1, dict_tx), f2 = one(d.f2, dict_tx);
    const SplitResult w1 = one(d.w1, dict_rx), w2 = one(d.w2, dict_rx);
    return {{f1.analog, f2.analog, w1.analog, w2.analog}, {f1.baseband, f2.baseband, w1.baseband, w2.baseband}};
}

/// Phase-shifter resolution.
struct QuantizerSpec
{
    int bits = 6;

    void validate() const
    {
        if (bits < 1 || bits > 30)
            throw InvalidArgument("QuantizerSpec: bits must lie in [1, 30]");
    }
};

/// Rounds every phase to the nearest multiple of 2pi / 2^bits (ties toward the smaller
/// multiple) and keeps the modulus. Phase pi and -pi map to the same output.
inline ComplexMatrix quantize_phases(const ComplexMatrix &analog, const QuantizerSpec &spec)
{
    spec.validate();
    const double levels = std::ldexp(1.0, spec.bits);
    const double step = 2.0 * kPi / levels;
    ComplexMatrix out(analog.rows(), analog.cols());
    for (Eigen::Index c = 0; c < analog.cols(); ++c)
        for (Eigen::Index r = 0; r < analog.rows(); ++r)
        {
            const Complex z = analog(r, c);
            double k = std::ceil(std::arg(z) / step - 0.5);
            if (k <= -levels / 2.0)
                k = levels / 2.0;
            out(r, c) = std::polar(std::abs(z), k * step);
        }
    return out;
}

/// Quantizes the four analog stages of a hybrid design; the baseband is kept.
inline AnalogBeamformers quantize_analog(const AnalogBeamformers &a, const QuantizerSpec &spec)
{
    return {quantize_phases(a.f_rf1, spec), quantize_phases(a.f_rf2, spec), quantize_phases(a.w_rf1, spec),
            quantize_phases(a.w_rf2, spec)};
}
} // namespace zfbeam

#endif // ZFBEAM_BASELINES_HPP
