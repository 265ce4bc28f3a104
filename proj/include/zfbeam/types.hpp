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

#ifndef ZFBEAM_TYPES_HPP
#define ZFBEAM_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace zfbeam
{
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0; // m/s

// Base of every error the library throws.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error
{
public:
    using Error::Error;
};

// Two antenna elements share a position (zero TX-RX distance).
class SingularGeometry : public Error
{
public:
    using Error::Error;
};

// Start vector lies entirely inside the span that is being projected out.
class DegenerateStart : public Error
{
public:
    using Error::Error;
};

// Requested stream/RF-chain count exceeds the dimension left after zero-forcing.
class Infeasible : public Error
{
public:
    using Error::Error;
};

// A normalization or inverse hit a zero-norm or singular operand.
class NumericDegeneracy : public Error
{
public:
    using Error::Error;
};

class ConfigError : public Error
{
public:
    using Error::Error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// Relative zero-forcing residual |W^H H F|_F / (|W|_F |H|_F |F|_F); 0 for any zero factor.
inline double relative_zf_residual(const ComplexMatrix &w, const ComplexMatrix &h, const ComplexMatrix &f)
{
    const double denom = w.norm() * h.norm() * f.norm();
    if (denom == 0.0)
        return 0.0;
    return (w.adjoint() * h * f).norm() / denom;
}

// First `cols` columns of the n x n identity.
inline ComplexMatrix identity_columns(Eigen::Index n, Eigen::Index cols)
{
    return ComplexMatrix::Identity(n, cols);
}
} // namespace zfbeam

#endif // ZFBEAM_TYPES_HPP
