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

#ifndef ZFBEAM_METRICS_HPP
#define ZFBEAM_METRICS_HPP

#include "zfbeam/beamformers.hpp"
#include "zfbeam/channel.hpp"
#include "zfbeam/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace zfbeam
{
/// Received-signal, received-SI and noise powers at one node (linear).
struct NodePowers
{
    double rho = 1.0;
    double tau = 0.0;
    double sigma_sq = 1.0;
};

struct LinkPowers
{
    double rho1 = 1.0, rho2 = 1.0;
    double tau1 = 0.0, tau2 = 0.0;
    double sigma1_sq = 1.0, sigma2_sq = 1.0;

    [[nodiscard]] NodePowers node1() const { return {rho1, tau1, sigma1_sq}; }
    [[nodiscard]] NodePowers node2() const { return {rho2, tau2, sigma2_sq}; }

    /// SNR = rho / sigma^2 and INR = tau / sigma^2, identical at both nodes.
    static LinkPowers from_snr_inr_db(double snr_db, double inr_db, double sigma_sq)
    {
        const double rho = db_to_linear(snr_db) * sigma_sq;
        const double tau = db_to_linear(inr_db) * sigma_sq;
        return {rho, rho, tau, tau, sigma_sq, sigma_sq};
    }

    [[nodiscard]] LinkPowers with_rho_scaled(double factor) const
    {
        LinkPowers p = *this;
        p.rho1 *= factor;
        p.rho2 *= factor;
        return p;
    }
};

struct RateReport
{
    double rate_node1 = 0.0; // bits/s/Hz
    double rate_node2 = 0.0;
    double sum = 0.0;
    std::vector<double> per_stream_sinr; // node-1 streams, then node-2 streams (linear)
};

/// Thermal noise floor in dBm: -173.8 + 10 log10(bandwidth).
inline double noise_variance_dbm(double bandwidth_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw InvalidArgument("noise_variance_dbm: bandwidth must be > 0");
    return -173.8 + 10.0 * std::log10(bandwidth_hz);
}

/// Noise variance in mW.
inline double noise_variance_linear(double bandwidth_hz) { return db_to_linear(noise_variance_dbm(bandwidth_hz)); }

/// Interference-plus-noise covariance T = sigma^2 W^H W + tau (W^H H_si F)(W^H H_si F)^H.
inline ComplexMatrix covariance_t(const ComplexMatrix &w, const ComplexMatrix &f_si, const ComplexMatrix &h_si,
                                  double tau, double sigma_sq)
{
    const ComplexMatrix s = w.adjoint() * h_si * f_si;
    ComplexMatrix t = sigma_sq * (w.adjoint() * w) + tau * (s * s.adjoint());
    // exact Hermitian symmetry
    return 0.5 * (t + t.adjoint());
}

namespace detail
{
// log2 det of a Hermitian positive-definite matrix via Cholesky; throws on a singular matrix.
inline double log2_det_hpd(const ComplexMatrix &m, const char *what)
{
    if (m.size() == 0)
        return 0.0;
    if (!m.allFinite())
        throw NumericDegeneracy(std::string(what) + ": non-finite covariance");
    Eigen::LLT<ComplexMatrix> llt(m);
    if (llt.info() != Eigen::Success)
        throw NumericDegeneracy(std::string(what) + ": covariance is not positive definite");
    const auto diag = llt.matrixLLT().diagonal().real();
    const double dmax = diag.maxCoeff();
    if (!(diag.minCoeff() > 1e-7 * dmax))
        throw NumericDegeneracy(std::string(what) + ": covariance is numerically singular");
    return 2.0 * diag.array().log().sum() / std::log(2.0);
}

struct LinkTerms
{
    ComplexMatrix t;      // interference-plus-noise covariance
    ComplexMatrix signal; // (rho/n) G G^H
    ComplexMatrix g;      // effective link channel W^H H F
    double gain = 0.0;    // rho / n
};

inline LinkTerms link_terms(const ComplexMatrix &w, const ComplexMatrix &h_link, const ComplexMatrix &f_link,
                            const ComplexMatrix &h_si, const ComplexMatrix &f_si, const NodePowers &pw, double streams)
{
    LinkTerms lt;
    lt.g = w.adjoint() * h_link * f_link;
    lt.t = covariance_t(w, f_si, h_si, pw.tau, pw.sigma_sq);
    const ComplexMatrix gg = lt.g * lt.g.adjoint();
    lt.gain = pw.rho / streams;
    lt.signal = lt.gain * 0.5 * (gg + gg.adjoint());
    return lt;
}

// log2 det(I + (rho/n) T^-1 G G^H) = log2 det(T + (rho/n) G G^H) - log2 det(T).
inline double link_rate(const LinkTerms &lt)
{
    const double with_signal = log2_det_hpd(lt.t + lt.signal, "link rate");
    const double without = log2_det_hpd(lt.t, "link rate");
    return std::max(0.0, with_signal - without);
}

// Per-stream SINR: desired (k, k) entry against the other streams plus T(k, k).
inline void append_stream_sinr(const LinkTerms &lt, std::vector<double> &out)
{
    for (Eigen::Index k = 0; k < lt.g.rows(); ++k)
    {
        const double desired = k < lt.g.cols() ? lt.gain * std::norm(lt.g(k, k)) : 0.0;
        const double cross = lt.gain * lt.g.row(k).squaredNorm() - desired;
        const double denom = lt.t(k, k).real() + cross;
        out.push_back(denom > 0.0 ? desired / denom : 0.0);
    }
}

inline RateReport two_way_rate(const ComplexMatrix &w1, const ComplexMatrix &f2, const ComplexMatrix &w2,
                               const ComplexMatrix &f1, const ChannelSet &ch, const LinkPowers &powers,
                               double streams)
{
    const LinkTerms l1 = link_terms(w1, ch.h21, f2, ch.h11, f1, powers.node1(), streams);
    const LinkTerms l2 = link_terms(w2, ch.h12, f1, ch.h22, f2, powers.node2(), streams);
    RateReport rep;
    rep.rate_node1 = link_rate(l1);
    rep.rate_node2 = link_rate(l2);
    rep.sum = rep.rate_node1 + rep.rate_node2;
    append_stream_sinr(l1, rep.per_stream_sinr);
    append_stream_sinr(l2, rep.per_stream_sinr);
    return rep;
}
} // namespace detail

/// Fully-digital sum rate, SI treated as noise, n_s = columns of F.
inline RateReport sum_rate_digital(const DigitalBeamformers &b, const ChannelSet &ch, const LinkPowers &powers)
{
    return detail::two_way_rate(b.w1, b.f2, b.w2, b.f1, ch, powers, static_cast<double>(b.f1.cols()));
}

/// Analog-only sum rate over the effective channels W_RF,u^H H_vu F_RF,v with prefactor rho / N_RF.
inline RateReport sum_rate_analog(const AnalogBeamformers &a, const ChannelSet &ch, const LinkPowers &powers,
                                  int n_rf)
{
    return detail::two_way_rate(a.w_rf1, a.f_rf2, a.w_rf2, a.f_rf1, ch, powers, static_cast<double>(n_rf));
}

/// Hybrid sum rate over W_BB^H W_RF^H H F_RF F_BB with prefactor rho / N_s; the noise term
/// is sigma^2 W_BB^H W_RF^H W_RF W_BB.
inline RateReport sum_rate_hybrid(const HybridBeamformers &h, const ChannelSet &ch, const LinkPowers &powers, int ns)
{
    const DigitalBeamformers c = h.composite();
    return detail::two_way_rate(c.w1, c.f2, c.w2, c.f1, ch, powers, static_cast<double>(ns));
}

/// Interference-free bound: top-n_s singular values of H21 and H12 with uniform power.
inline double upper_bound(const ChannelSet &ch, const LinkPowers &powers, int ns)
{
    auto one = [ns](const ComplexMatrix &h, double rho, double sigma_sq) {
        if (ns > std::min(h.rows(), h.cols()))
            throw InvalidArgument("upper_bound: n_s exceeds the channel dimension");
        const RealVector s = Eigen::JacobiSVD<ComplexMatrix>(h).singularValues();
        double r = 0.0;
        for (int n = 0; n < ns; ++n)
            r += std::log2(1.0 + rho / (ns * sigma_sq) * s(n) * s(n));
        return r;
    };
    return one(ch.h21, powers.rho1, powers.sigma1_sq) + one(ch.h12, powers.rho2, powers.sigma2_sq);
}

/// Aggregate SINR rho |W^H H F|_F^2 / (sigma^2 |W|_F^2 + tau |W^H H_si F_si|_F^2).
inline double sinr_aggregate(const ComplexMatrix &w, const ComplexMatrix &f_link, const ComplexMatrix &f_si,
                             const ComplexMatrix &h_link, const ComplexMatrix &h_si, const NodePowers &pw)
{
    const double signal = pw.rho * (w.adjoint() * h_link * f_link).squaredNorm();
    const double leak = std::isinf(pw.tau) ? ((w.adjoint() * h_si * f_si).squaredNorm() > 0.0
                                                   ? std::numeric_limits<double>::infinity()
                                                   : 0.0)
                                           : pw.tau * (w.adjoint() * h_si * f_si).squaredNorm();
    const double denom = pw.sigma_sq * w.squaredNorm() + leak;
    if (std::isinf(denom))
        return 0.0;
    if (!(denom > 0.0))
        throw NumericDegeneracy("sinr_aggregate: zero interference-plus-noise power");
    return signal / denom;
}
} // namespace zfbeam

#endif // ZFBEAM_METRICS_HPP
