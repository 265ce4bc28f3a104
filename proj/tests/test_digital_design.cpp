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

namespace
{
const SimConfig kConfig{};

ChannelSet reference_channels(std::uint64_t index) { return realization_channels(kConfig, index); }
} // namespace

TEST_CASE("digital design zero-forces the SI at reference scale", "[digital]")
{
    for (std::uint64_t i = 0; i < 20; ++i)
    {
        const ChannelSet ch = reference_channels(i);
        RandomStream rng(1000 + i);
        const DigitalSolveResult r = solve_p1(ch, kConfig.digital_options(), rng);
        const DigitalBeamformers &b = r.beams;
        CHECK(relative_zf_residual(b.w1, ch.h11, b.f1) < 1e-8);
        CHECK(relative_zf_residual(b.w2, ch.h22, b.f2) < 1e-8);
        for (const ComplexMatrix *m : {&b.f1, &b.f2, &b.w1, &b.w2})
        {
            CHECK(m->cols() == 2);
            CHECK_THAT(m->squaredNorm(), WithinRel(2.0, 1e-9));
            const ComplexMatrix gram = m->adjoint() * *m;
            CHECK(std::abs(gram(0, 1)) < 1e-6);
        }
    }
}

TEST_CASE("digital design objective is non-decreasing", "[digital]")
{
    for (std::uint64_t i = 0; i < 10; ++i)
    {
        const ChannelSet ch = reference_channels(50 + i);
        RandomStream rng(2000 + i);
        const DigitalSolveResult r = solve_p1(ch, kConfig.digital_options(), rng);
        REQUIRE(!r.objective_trace.empty());
        for (std::size_t k = 1; k < r.objective_trace.size(); ++k)
            CHECK(r.objective_trace[k] >= r.objective_trace[k - 1] - 1e-9);
    }
}

TEST_CASE("without SI a single stream reaches the top singular value", "[digital][oracle]")
{
    for (std::uint64_t i = 0; i < 5; ++i)
    {
        ChannelSet ch = reference_channels(100 + i);
        ch.h11.setZero();
        ch.h22.setZero();
        DigitalSolverOptions opt = kConfig.digital_options();
        opt.ns = 1;
        opt.tol = 1e-14;
        opt.max_outer = 500;
        RandomStream rng(3000 + i);
        const DigitalBeamformers b = solve_p1(ch, opt, rng).beams;
        const double achieved = std::abs((b.w1.adjoint() * ch.h21 * b.f2)(0, 0));
        const double top = Eigen::JacobiSVD<ComplexMatrix>(ch.h21).singularValues()(0);
        CHECK_THAT(achieved, WithinAbs(top, 1e-6 * top));
    }
}

TEST_CASE("digital design is deterministic for a fixed stream", "[digital]")
{
    const ChannelSet ch = reference_channels(3);
    RandomStream a(5), b(5);
    const DigitalBeamformers x = solve_p1(ch, kConfig.digital_options(), a).beams;
    const DigitalBeamformers y = solve_p1(ch, kConfig.digital_options(), b).beams;
    CHECK((x.w1 - y.w1).norm() == 0.0);
    CHECK((x.f2 - y.f2).norm() == 0.0);
}

TEST_CASE("too many streams are infeasible", "[digital]")
{
    RandomStream rng(1);
    ChannelSet ch;
    ch.h21 = rng.complex_normal_matrix(4, 4);
    ch.h12 = rng.complex_normal_matrix(4, 4);
    ch.h11 = rng.complex_normal_matrix(4, 4);
    ch.h22 = rng.complex_normal_matrix(4, 4);
    DigitalSolverOptions opt;
    opt.ns = 3; // 3 SI directions plus deflation exhaust C^4
    CHECK_THROWS_AS(solve_p1(ch, opt, rng), Infeasible);
    opt.ns = 5;
    CHECK_THROWS_AS(solve_p1(ch, opt, rng), Infeasible);
    opt.ns = 0;
    CHECK_THROWS_AS(solve_p1(ch, opt, rng), InvalidArgument);
}
