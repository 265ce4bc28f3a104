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

#include "catch_amalgamated.hpp"
#include "oracles.hpp"

using namespace zfbeam;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("projection leaves the null space unchanged", "[projector]")
{
    const ComplexMatrix a = oracle::random_matrix(8, 2, 1);
    const ComplexVector seed = oracle::random_matrix(8, 1, 2);
    const ComplexVector inside = oracle::least_squares_residual(a, seed);
    CHECK((zf_project(inside, ZfConstraint{a}) - inside).norm() < 1e-12 * inside.norm());
}

TEST_CASE("projection removes the constraint span", "[projector]")
{
    const ComplexMatrix a = oracle::random_matrix(8, 2, 3);
    const ComplexVector beta = a * oracle::random_matrix(2, 1, 4);
    CHECK(zf_project(beta, ZfConstraint{a}).norm() < 1e-12 * beta.norm());
}

TEST_CASE("projection matches the least-squares residual", "[projector][oracle]")
{
    for (std::uint64_t s = 0; s < 20; ++s)
    {
        const ComplexMatrix a = oracle::random_matrix(8, 2, 100 + s);
        const ComplexVector beta = oracle::random_matrix(8, 1, 200 + s);
        const ComplexVector p = zf_project(beta, ZfConstraint{a});
        CHECK((p - oracle::least_squares_residual(a, beta)).norm() < 1e-10 * beta.norm());
        CHECK((a.adjoint() * p).norm() < 1e-10 * a.norm() * beta.norm());
    }
}

TEST_CASE("single-direction projection has the rank-one form", "[projector]")
{
    const ComplexVector alpha = oracle::random_matrix(6, 1, 5);
    const ComplexVector beta = oracle::random_matrix(6, 1, 6);
    const ComplexVector expect = beta - alpha * (alpha.adjoint() * beta)(0) / alpha.squaredNorm();
    CHECK((zf_project(beta, ZfConstraint{alpha}) - expect).norm() < 1e-12 * beta.norm());
}

TEST_CASE("zero or empty constraints act as identity", "[projector]")
{
    const ComplexVector beta = oracle::random_matrix(5, 1, 7);
    CHECK((zf_project(beta, ZfConstraint{ComplexMatrix::Zero(5, 2)}) - beta).norm() == 0.0);
    CHECK((zf_project(beta, ZfConstraint{ComplexMatrix(5, 0)}) - beta).norm() == 0.0);
}

TEST_CASE("rank-deficient constraints project onto the true complement", "[projector]")
{
    const ComplexVector u = oracle::random_matrix(6, 1, 8);
    ComplexMatrix a(6, 3);
    a << u, 2.0 * u, Complex(0, 1) * u;
    const NullSpaceProjector p(a);
    CHECK(p.rank() == 1);
    CHECK(p.null_dimension() == 5);
    const ComplexVector beta = oracle::random_matrix(6, 1, 9);
    CHECK((p.apply(beta) - oracle::least_squares_residual(a, beta)).norm() < 1e-10 * beta.norm());
}

TEST_CASE("non-finite constraints are rejected", "[projector]")
{
    ComplexMatrix a = ComplexMatrix::Ones(4, 1);
    a(2, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS(NullSpaceProjector(a), InvalidArgument);
    CHECK_THROWS_AS(zf_project(ComplexVector::Ones(3), ZfConstraint{ComplexMatrix::Ones(4, 1)}), InvalidArgument);
}

TEST_CASE("projection is idempotent and contractive", "[projector][property]")
{
    RandomStream rng(10);
    for (int i = 0; i < 200; ++i)
    {
        const Eigen::Index n = 4 + static_cast<Eigen::Index>(rng.uniform() * 12);
        const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.uniform() * (n - 1));
        const NullSpaceProjector p(rng.complex_normal_matrix(n, k));
        const ComplexVector beta = rng.complex_normal_matrix(n, 1);
        const ComplexVector once = p.apply(beta);
        CHECK((p.apply(once) - once).norm() < 1e-12 * beta.norm());
        CHECK(once.norm() <= beta.norm() * (1 + 1e-15));
    }
}

TEST_CASE("CA projection forces the modulus and keeps the phase", "[projector]")
{
    ComplexVector z(2);
    z << Complex(2, 0), Complex(0, -2);
    const ComplexVector out = ca_project(z, CaSubspaceSpec{0.5});
    CHECK(std::abs(out(0) - Complex(0.5, 0)) < 1e-16);
    CHECK(std::abs(out(1) - Complex(0, -0.5)) < 1e-16);

    ComplexVector zero = ComplexVector::Zero(3);
    const ComplexVector z0 = ca_project(zero, CaSubspaceSpec{0.25});
    for (Eigen::Index i = 0; i < 3; ++i)
        CHECK(z0(i) == Complex(0.25, 0.0));
}

TEST_CASE("CA projection is idempotent with a fixed modulus", "[projector][property]")
{
    RandomStream rng(11);
    const CaSubspaceSpec spec{0.25};
    for (int i = 0; i < 200; ++i)
    {
        const ComplexVector z = rng.complex_normal_matrix(16, 1);
        const ComplexVector once = ca_project(z, spec);
        const ComplexVector twice = ca_project(once, spec);
        for (Eigen::Index k = 0; k < 16; ++k)
        {
            CHECK_THAT(std::abs(once(k)), WithinAbs(0.25, 1e-16));
            CHECK(std::abs(twice(k) - once(k)) <= 1e-16);
        }
    }
}

TEST_CASE("CA projection keeps vectors already on the set", "[projector]")
{
    RandomStream rng(12);
    ComplexVector z(8);
    for (Eigen::Index i = 0; i < 8; ++i)
        z(i) = std::polar(0.5, rng.uniform(-kPi, kPi));
    CHECK((ca_project(z, CaSubspaceSpec{0.5}) - z).norm() < 1e-15);
}

TEST_CASE("cyclic maximization returns a unit vector in the null space", "[projector]")
{
    const ComplexMatrix a = oracle::random_matrix(10, 3, 20);
    const ComplexVector beta = oracle::random_matrix(10, 1, 21);
    const ComplexVector z = zf_cyclic_max(beta, ZfConstraint{a}, 1e-12, 10);
    CHECK_THAT(z.norm(), WithinAbs(1.0, 1e-14));
    CHECK((a.adjoint() * z).norm() / z.norm() < 1e-10 * a.norm());

    // idempotent projector: one pass equals the normalized projection
    const ComplexVector p = zf_project(beta, ZfConstraint{a});
    CHECK((z - p.normalized()).norm() < 1e-12);
}

TEST_CASE("cyclic maximization without a constraint normalizes", "[projector]")
{
    const ComplexVector beta = oracle::random_matrix(4, 1, 22);
    const ComplexVector z = zf_cyclic_max(beta, ZfConstraint{ComplexMatrix(4, 0)}, 1e-12, 1);
    CHECK((z - beta.normalized()).norm() < 1e-15);
}

TEST_CASE("cyclic maximization flags degenerate starts", "[projector]")
{
    const ComplexMatrix a = oracle::random_matrix(6, 2, 23);
    CHECK_THROWS_AS(zf_cyclic_max(a.col(0), ZfConstraint{a}, 1e-12, 5), DegenerateStart);
    CHECK_THROWS_AS(zf_cyclic_max(ComplexVector::Zero(6), ZfConstraint{a}, 1e-12, 5), DegenerateStart);
    CHECK_THROWS_AS(zf_cyclic_max(a.col(0), ZfConstraint{a}, 1e-12, 0), InvalidArgument);
}

TEST_CASE("alternating projection without constraint tracks the dominant direction", "[projector]")
{
    const ComplexMatrix h = oracle::random_matrix(8, 8, 30);
    const QuadraticPower obj(h.adjoint());
    const CaSubspaceSpec ca{1 / std::sqrt(8.0)};
    const AlternatingProjectionResult r =
        alternating_zf_ca(oracle::random_matrix(8, 1, 31), ZfConstraint{ComplexMatrix(8, 0)}, ca, obj);
    CHECK(r.feasible);
    CHECK(r.residual == 0.0);
    for (std::size_t i = 1; i < r.best_history.size(); ++i)
        CHECK(r.best_history[i] >= r.best_history[i - 1]);
    for (Eigen::Index k = 0; k < 8; ++k)
        CHECK_THAT(std::abs(r.z(k)), WithinAbs(ca.entry_magnitude, 1e-16));

    // never worse than the CA projection of the top right singular vector
    Eigen::JacobiSVD<ComplexMatrix> svd(h, Eigen::ComputeFullV);
    const ComplexVector v = ca_project(svd.matrixV().col(0), ca);
    CHECK(r.objective >= 0.9 * obj.value(v));
}

TEST_CASE("alternating projection reaches the small-instance residual target", "[projector]")
{
    const ComplexMatrix a = oracle::random_matrix(4, 1, 40);
    const ComplexMatrix b = oracle::random_matrix(4, 2, 41);
    const CaSubspaceSpec ca{0.5};
    const AlternatingProjectionResult r =
        alternating_zf_ca(b.col(0), ZfConstraint{a}, ca, QuadraticPower(b));
    CHECK(r.residual < 1e-3);
    CHECK(r.feasible);
    for (Eigen::Index k = 0; k < 4; ++k)
        CHECK_THAT(std::abs(r.z(k)), WithinAbs(0.5, 1e-16));
}

TEST_CASE("alternating projection at reference scale", "[projector][property]")
{
    RandomStream rng(50);
    int feasible = 0;
    for (int i = 0; i < 20; ++i)
    {
        const ComplexMatrix a = rng.complex_normal_matrix(16, 4);
        const ComplexMatrix b = rng.complex_normal_matrix(16, 4);
        const NullSpaceProjector p(a);
        const AlternatingProjectionResult r =
            alternating_zf_ca(b.col(0), p, CaSubspaceSpec{0.25}, QuadraticPower(b));
        CHECK_THAT(r.residual, WithinAbs(p.residual(r.z), 1e-15));
        for (std::size_t k = 1; k < r.best_history.size(); ++k)
            CHECK(r.best_history[k] >= r.best_history[k - 1]);
        for (Eigen::Index k = 0; k < 16; ++k)
            CHECK_THAT(std::abs(r.z(k)), WithinAbs(0.25, 1e-16));
        feasible += r.feasible;
    }
    CHECK(feasible == 20);
}

TEST_CASE("alternating projection rejects bad parameters", "[projector]")
{
    AlternatingProjectionParams p;
    p.inner_iter = 0;
    const ComplexMatrix b = oracle::random_matrix(4, 1, 60);
    CHECK_THROWS_AS(alternating_zf_ca(b.col(0), ZfConstraint{b}, CaSubspaceSpec{0.5}, QuadraticPower(b), p),
                    InvalidArgument);
}
