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

#ifndef ZFBEAM_CHANNEL_HPP
#define ZFBEAM_CHANNEL_HPP

#include "zfbeam/geometry.hpp"
#include "zfbeam/random.hpp"
#include "zfbeam/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>

namespace zfbeam
{
struct ClusterSpec
{
    int n_cl = 6;
    int n_ray = 8;
    double angular_spread = 20.0 * kPi / 180.0; // std-dev of ray offsets around the cluster center [rad]

    void validate() const
    {
        if (n_cl < 1 || n_ray < 1)
            throw InvalidArgument("ClusterSpec: n_cl and n_ray must be >= 1");
        if (!(angular_spread >= 0.0))
            throw InvalidArgument("ClusterSpec: angular_spread must be >= 0");
    }
};

struct RicianSpec
{
    double kappa = 0.0; // linear LOS-to-NLOS power ratio

    static RicianSpec from_db(double kappa_db) { return RicianSpec{db_to_linear(kappa_db)}; }
};

/// One realization of the four channels of the two-node link.
/// h_vu is the channel into node v's receiver; h11/h22 are the self-interference channels.
struct ChannelSet
{
    ComplexMatrix h21; // N_r,1 x N_t,2 : node 2 -> node 1
    ComplexMatrix h12; // N_r,2 x N_t,1 : node 1 -> node 2
    ComplexMatrix h11; // N_r,1 x N_t,1
    ComplexMatrix h22; // N_r,2 x N_t,2

    /// FNV-1a over the raw entries; used to prove that schemes share a realization.
    [[nodiscard]] std::uint64_t fingerprint() const
    {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        auto eat = [&h](const ComplexMatrix &m) {
            for (Eigen::Index i = 0; i < m.size(); ++i)
            {
                const double parts[2] = {m.data()[i].real(), m.data()[i].imag()};
                unsigned char bytes[sizeof parts];
                std::memcpy(bytes, parts, sizeof parts);
                for (unsigned char b : bytes)
                {
                    h ^= b;
                    h *= 0x100000001B3ULL;
                }
            }
        };
        eat(h21);
        eat(h12);
        eat(h11);
        eat(h22);
        return h;
    }
};

namespace detail
{
inline double wrap_azimuth(double phi) { return std::remainder(phi, 2.0 * kPi); }
inline double clamp_elevation(double theta) { return std::clamp(theta, 0.0, kPi); }
} // namespace detail

/// Clustered geometric channel, N_r x N_t:
///   H = sqrt(N_t N_r / (N_cl N_ray)) sum_k sum_l alpha_kl a_rx(aoa_kl) a_tx(aod_kl)^H
/// with alpha_kl ~ CN(0, 1). Cluster centers: azimuth U[-pi, pi], elevation U[pi/4, 3pi/4],
/// drawn AoA then AoD. Rays: Gaussian offsets with std-dev angular_spread on all four angles.
inline ComplexMatrix draw_cluster_channel(const ClusterSpec &spec, const UraSpec &tx_spec, const UraSpec &rx_spec,
                                          double wavelength, RandomStream &rng)
{
    spec.validate();
    const int nt = tx_spec.size();
    const int nr = rx_spec.size();
    ComplexMatrix h = ComplexMatrix::Zero(nr, nt);

    for (int k = 0; k < spec.n_cl; ++k)
    {
        const double aoa_phi = rng.uniform(-kPi, kPi);
        const double aoa_theta = rng.uniform(kPi / 4.0, 3.0 * kPi / 4.0);
        const double aod_phi = rng.uniform(-kPi, kPi);
        const double aod_theta = rng.uniform(kPi / 4.0, 3.0 * kPi / 4.0);
        for (int l = 0; l < spec.n_ray; ++l)
        {
            const AnglePair aoa{detail::wrap_azimuth(aoa_phi + spec.angular_spread * rng.normal()),
                                detail::clamp_elevation(aoa_theta + spec.angular_spread * rng.normal())};
            const AnglePair aod{detail::wrap_azimuth(aod_phi + spec.angular_spread * rng.normal()),
                                detail::clamp_elevation(aod_theta + spec.angular_spread * rng.normal())};
            const Complex alpha = rng.complex_normal();
            h.noalias() += alpha * ura_response(rx_spec, aoa, wavelength) * ura_response(tx_spec, aod, wavelength).adjoint();
        }
    }
    h *= std::sqrt(static_cast<double>(nt) * nr / (static_cast<double>(spec.n_cl) * spec.n_ray));
    return h;
}

/// Near-field LOS self-interference, N_r x N_t: entry (q, p) = exp(-j 2pi d_pq / lambda) / d_pq,
/// with p the TX and q the RX element.
inline ComplexMatrix si_los_channel(const NodeGeometry &geom, double wavelength)
{
    if (!(wavelength > 0.0))
        throw InvalidArgument("si_los_channel: wavelength must be > 0");
    const RealMatrix d = pairwise_distances(geom);
    ComplexMatrix h(d.cols(), d.rows());
    for (Eigen::Index p = 0; p < d.rows(); ++p)
        for (Eigen::Index q = 0; q < d.cols(); ++q)
        {
            const double dist = d(p, q);
            if (!(dist > 0.0))
                throw SingularGeometry("si_los_channel: TX element " + std::to_string(p) + " coincides with RX element " +
                                       std::to_string(q));
            // Reduce the phase in cycles first so whole-wavelength distances land exactly on 0.
            const double cycles = dist / wavelength;
            const double frac = cycles - std::floor(cycles);
            h(q, p) = std::polar(1.0 / dist, -2.0 * kPi * frac);
        }
    return h;
}

/// LOS matrix rescaled to |H|_F^2 = N_t N_r.
inline ComplexMatrix normalized_si_los(const NodeGeometry &geom, double wavelength)
{
    ComplexMatrix h = si_los_channel(geom, wavelength);
    h *= std::sqrt(static_cast<double>(h.size())) / h.norm();
    return h;
}

/// Rician mixture sqrt(k/(k+1)) H_los + sqrt(1/(k+1)) H_nlos.
inline ComplexMatrix mix_si_channel(const ComplexMatrix &los, const ComplexMatrix &nlos, const RicianSpec &rician)
{
    if (!(rician.kappa >= 0.0))
        throw InvalidArgument("RicianSpec: kappa must be >= 0");
    const double k = rician.kappa;
    if (std::isinf(k))
        return los;
    return std::sqrt(k / (k + 1.0)) * los + std::sqrt(1.0 / (k + 1.0)) * nlos;
}

inline ComplexMatrix draw_si_channel(const NodeGeometry &geom, const RicianSpec &rician, double wavelength,
                                     RandomStream &rng)
{
    const ComplexMatrix los = normalized_si_los(geom, wavelength);
    const ComplexMatrix nlos = rng.complex_normal_matrix(los.rows(), los.cols());
    return mix_si_channel(los, nlos, rician);
}

/// Everything needed to draw one ChannelSet. Both nodes share the array layout.
struct LinkSetup
{
    double wavelength = kSpeedOfLight / 28e9;
    UraSpec tx_array;
    UraSpec rx_array;
    ClusterSpec clusters;
    RicianSpec rician;
    double gap_d = 0.0;
    double incline_omega = 0.0;
};

/// Draw order: h21, h12, h11 (NLOS), h22 (NLOS). h21 and h12 are independent.
inline ChannelSet draw_channel_set(const LinkSetup &setup, RandomStream &rng)
{
    const NodeGeometry geom =
        build_node_geometry(setup.tx_array, setup.rx_array, setup.gap_d, setup.incline_omega, setup.wavelength);
    const ComplexMatrix los = normalized_si_los(geom, setup.wavelength);

    ChannelSet cs;
    cs.h21 = draw_cluster_channel(setup.clusters, setup.tx_array, setup.rx_array, setup.wavelength, rng);
    cs.h12 = draw_cluster_channel(setup.clusters, setup.tx_array, setup.rx_array, setup.wavelength, rng);
    cs.h11 = mix_si_channel(los, rng.complex_normal_matrix(los.rows(), los.cols()), setup.rician);
    cs.h22 = mix_si_channel(los, rng.complex_normal_matrix(los.rows(), los.cols()), setup.rician);
    return cs;
}
} // namespace zfbeam

#endif // ZFBEAM_CHANNEL_HPP
