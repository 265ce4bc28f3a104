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

#ifndef ZFBEAM_GEOMETRY_HPP
#define ZFBEAM_GEOMETRY_HPP

#include "zfbeam/types.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace zfbeam
{
/// Uniform rectangular array: m_horizontal x n_vertical elements, spacings in meters.
struct UraSpec
{
    int m_horizontal = 4;
    int n_vertical = 4;
    double d_h = 0.0;
    double d_v = 0.0;

    [[nodiscard]] int size() const { return m_horizontal * n_vertical; }

    void validate() const
    {
        if (m_horizontal < 1 || n_vertical < 1)
            throw InvalidArgument("UraSpec: element counts must be >= 1");
        if (!(d_h > 0.0) || !(d_v > 0.0))
            throw InvalidArgument("UraSpec: element spacings must be > 0");
    }

    /// Square-as-possible URA with `elements` entries and half-wavelength spacing scaled by `spacing_wavelengths`.
    static UraSpec for_count(int elements, double wavelength, double spacing_wavelengths = 0.5)
    {
        if (elements < 1)
            throw InvalidArgument("UraSpec: element count must be >= 1");
        int m = static_cast<int>(std::sqrt(static_cast<double>(elements)));
        while (elements % m != 0)
            --m;
        return UraSpec{elements / m, m, spacing_wavelengths * wavelength, spacing_wavelengths * wavelength};
    }
};

/// Azimuth phi in [-pi, pi], elevation theta in [0, pi].
struct AnglePair
{
    double phi = 0.0;
    double theta = 0.0;
};

using Position = std::array<double, 3>;

struct NodeGeometry
{
    std::vector<Position> tx_positions;
    std::vector<Position> rx_positions;
    double gap_d = 0.0;
    double incline_omega = 0.0;
};

/// Flat index of element (p, q): p horizontal, q vertical, p-major.
inline int ura_flat_index(const UraSpec &spec, int p, int q) { return p * spec.n_vertical + q; }

/// Unit-norm URA response. Entry (p, q) is
/// exp(j 2pi/lambda [p d_h sin(phi) sin(theta) + q d_v cos(theta)]) / sqrt(MN).
inline ComplexVector ura_response(const UraSpec &spec, const AnglePair &angles, double wavelength)
{
    if (!(wavelength > 0.0))
        throw InvalidArgument("ura_response: wavelength must be > 0");
    const double k = 2.0 * kPi / wavelength;
    const double h_phase = k * spec.d_h * std::sin(angles.phi) * std::sin(angles.theta);
    const double v_phase = k * spec.d_v * std::cos(angles.theta);
    const double scale = 1.0 / std::sqrt(static_cast<double>(spec.size()));

    ComplexVector a(spec.size());
    for (int p = 0; p < spec.m_horizontal; ++p)
        for (int q = 0; q < spec.n_vertical; ++q)
            a(ura_flat_index(spec, p, q)) = std::polar(scale, p * h_phase + q * v_phase);
    return a;
}

namespace detail
{
// Element offsets of a URA centered at its origin, in local (horizontal, vertical) coordinates.
inline std::vector<std::array<double, 2>> centered_offsets(const UraSpec &spec)
{
    std::vector<std::array<double, 2>> out(static_cast<std::size_t>(spec.size()));
    const double ch = 0.5 * (spec.m_horizontal - 1);
    const double cv = 0.5 * (spec.n_vertical - 1);
    for (int p = 0; p < spec.m_horizontal; ++p)
        for (int q = 0; q < spec.n_vertical; ++q)
            out[static_cast<std::size_t>(ura_flat_index(spec, p, q))] = {(p - ch) * spec.d_h, (q - cv) * spec.d_v};
    return out;
}
} // namespace detail

/// Places the RX URA in the y-z plane centered at the origin and the TX URA centered
/// at (gap_d, 0, 0), its plane rotated by incline_omega about the z-axis.
inline NodeGeometry build_node_geometry(const UraSpec &spec_tx, const UraSpec &spec_rx, double gap_d,
                                        double incline_omega, double wavelength)
{
    spec_tx.validate();
    spec_rx.validate();
    if (!(gap_d > 0.0))
        throw InvalidArgument("build_node_geometry: gap_d must be > 0");
    if (!(wavelength > 0.0))
        throw InvalidArgument("build_node_geometry: wavelength must be > 0");

    NodeGeometry g;
    g.gap_d = gap_d;
    g.incline_omega = incline_omega;

    for (const auto &[h, v] : detail::centered_offsets(spec_rx))
        g.rx_positions.push_back({0.0, h, v});

    // Local horizontal axis (0, 1, 0) rotated about z by omega: (-sin w, cos w, 0).
    const double s = std::sin(incline_omega);
    const double c = std::cos(incline_omega);
    for (const auto &[h, v] : detail::centered_offsets(spec_tx))
        g.tx_positions.push_back({gap_d - h * s, h * c, v});
    return g;
}

/// N_t x N_r matrix of Euclidean distances between TX element p and RX element q.
inline RealMatrix pairwise_distances(const NodeGeometry &geom)
{
    const auto nt = static_cast<Eigen::Index>(geom.tx_positions.size());
    const auto nr = static_cast<Eigen::Index>(geom.rx_positions.size());
    RealMatrix d(nt, nr);
    for (Eigen::Index p = 0; p < nt; ++p)
    {
        const auto &a = geom.tx_positions[static_cast<std::size_t>(p)];
        for (Eigen::Index q = 0; q < nr; ++q)
        {
            const auto &b = geom.rx_positions[static_cast<std::size_t>(q)];
            d(p, q) = std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
        }
    }
    return d;
}
} // namespace zfbeam

#endif // ZFBEAM_GEOMETRY_HPP
