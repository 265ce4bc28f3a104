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

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace zfbeam;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
SimConfig small_config(int mc, std::vector<double> snr)
{
    SimConfig c;
    c.mc_iterations = mc;
    c.snr_sweep_db = std::move(snr);
    c.seed = 7;
    return c;
}

const SweepResult &find(const SweepReport &r, const std::string &label)
{
    for (const SweepResult &s : r.results)
        if (s.scheme == label)
            return s;
    FAIL("missing scheme " << label);
    return r.results.front();
}
} // namespace

TEST_CASE("default config reproduces the reference parameters", "[harness][config]")
{
    const SimConfig c = load_config("default");
    CHECK(c.carrier_hz == 28e9);
    CHECK(c.bandwidth_hz == 850e6);
    CHECK(c.tx_antennas == 16);
    CHECK(c.rx_antennas == 16);
    CHECK(c.n_cl == 6);
    CHECK(c.n_ray == 8);
    CHECK_THAT(c.angular_spread_rad, WithinRel(20.0 * kPi / 180.0, 1e-15));
    CHECK(c.gap_d_wavelengths == 2.0);
    CHECK_THAT(c.incline_omega_rad, WithinRel(kPi / 6, 1e-15));
    CHECK(c.rician_kappa_db == 5.0);
    CHECK(c.si_power_db == 30.0);
    CHECK(c.antenna_spacing_wavelengths == 0.5);
    CHECK(c.n_s == 2);
    CHECK(c.n_rf == 4);
    CHECK(c.mc_iterations == 1000);
    CHECK(c.snr_sweep_db.front() == -10.0);
    CHECK(c.snr_sweep_db.back() == 20.0);
    CHECK(c.snr_sweep_db.size() == 13);
    CHECK_THAT(linear_to_db(c.noise_variance()), WithinAbs(-84.506, 1e-3));
}

TEST_CASE("config keys are type-checked and named in errors", "[harness][config]")
{
    const SimConfig c = config_from_json(nlohmann::json{{"n_rf", 6}, {"seed", 99}, {"snr_sweep_db", {0, 5}}});
    CHECK(c.n_rf == 6);
    CHECK(c.seed == 99);
    CHECK(c.snr_sweep_db == std::vector<double>{0.0, 5.0});

    auto message = [](const nlohmann::json &j) {
        try
        {
            config_from_json(j);
        }
        catch (const ConfigError &e)
        {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK_THAT(message({{"n_rf", "four"}}), Catch::Matchers::ContainsSubstring("n_rf"));
    CHECK_THAT(message({{"bogus_key", 1}}), Catch::Matchers::ContainsSubstring("bogus_key"));
    CHECK_THAT(message({{"n_s", 5}}), Catch::Matchers::ContainsSubstring("n_s"));
    CHECK_THAT(message({{"snr_sweep_db", nlohmann::json::array()}}), Catch::Matchers::ContainsSubstring("snr_sweep_db"));
    CHECK_THAT(message({{"mmse_covariance", "x"}}), Catch::Matchers::ContainsSubstring("mmse_covariance"));
    CHECK_THAT(message(nlohmann::json::array()), Catch::Matchers::ContainsSubstring("object"));
}

TEST_CASE("config files report their path", "[harness][config]")
{
    const std::string missing = "/nonexistent/zfbeam.json";
    CHECK_THROWS_WITH(load_config(missing), Catch::Matchers::ContainsSubstring(missing));

    const auto path = std::filesystem::temp_directory_path() / "zfbeam_bad_config.json";
    {
        std::ofstream(path) << "{ not json";
    }
    CHECK_THROWS_WITH(load_config(path.string()), Catch::Matchers::ContainsSubstring(path.string()));
    {
        std::ofstream(path) << R"({"tx_antennas": 9, "rx_antennas": 9})";
    }
    CHECK(load_config(path.string()).tx_antennas == 9);
    std::filesystem::remove(path);
}

TEST_CASE("scheme parsing", "[harness]")
{
    CHECK(parse_scheme("hybrid_q6").bits == 6);
    CHECK(parse_scheme("hybrid_q6").label() == "hybrid_q6");
    for (const char *s : {"upper_bound", "digital_p1", "hybrid", "hybrid_identity_bb", "analog_only", "svd_mmse",
                          "omp_split", "greedy_split"})
        CHECK(parse_scheme(s).label() == s);
    CHECK(parse_scheme_list("hybrid,svd_mmse").size() == 2);
    CHECK_THROWS_AS(parse_scheme("hybrid_q"), ConfigError);
    CHECK_THROWS_AS(parse_scheme("hybrid_qx"), ConfigError);
    CHECK_THROWS_AS(parse_scheme_list("hybrid,,svd_mmse"), ConfigError);
}

TEST_CASE("standard error is the sample deviation over root n", "[harness]")
{
    const auto [m, se] = mean_and_stderr({1.0, 2.0, 3.0, 4.0});
    CHECK(m == 2.5);
    CHECK_THAT(se, WithinRel(std::sqrt(5.0 / 3.0) / 2.0, 1e-15));
    CHECK(mean_and_stderr({3.0}).second == 0.0);
}

TEST_CASE("a one-realization sweep is bit-identical across runs", "[harness]")
{
    const SimConfig c = small_config(1, {10.0});
    std::ostringstream a, b;
    write_rates_csv(a, run_rate_sweep(c, rate_schemes()));
    write_rates_csv(b, run_rate_sweep(c, rate_schemes()));
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind(std::string(kRateCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("every scheme of a realization sees the same channels", "[harness]")
{
    const SimConfig c = small_config(4, {0.0, 10.0});
    const SweepReport r = run_rate_sweep(c, {parse_scheme("upper_bound"), parse_scheme("hybrid"),
                                             parse_scheme("omp_split"), parse_scheme("svd_mmse")});
    REQUIRE(r.results.size() == 4);
    const std::size_t n = r.results[0].points[0].samples.size();
    CHECK(n + static_cast<std::size_t>(r.skipped) == 4);
    for (std::size_t k = 0; k < n; ++k)
    {
        const RateSample &ref = r.results[0].points[0].samples[k];
        CHECK(ref.fingerprint == realization_channels(c, ref.realization).fingerprint());
        for (const SweepResult &s : r.results)
            for (const SweepPoint &p : s.points)
            {
                REQUIRE(p.samples.size() == n);
                CHECK(p.samples[k].realization == ref.realization);
                CHECK(p.samples[k].fingerprint == ref.fingerprint);
            }
    }
}

TEST_CASE("rate chain holds per realization and in the means", "[harness]")
{
    const SimConfig c = small_config(10, {0.0, 10.0});
    const SweepReport r = run_rate_sweep(
        c, {parse_scheme("upper_bound"), parse_scheme("digital_p1"), parse_scheme("hybrid"),
            parse_scheme("hybrid_identity_bb")});
    const SweepResult &ub = find(r, "upper_bound"), &p1 = find(r, "digital_p1"), &hy = find(r, "hybrid"),
                      &id = find(r, "hybrid_identity_bb");
    for (std::size_t k = 0; k < c.snr_sweep_db.size(); ++k)
    {
        CHECK(ub.points[k].mean >= p1.points[k].mean);
        CHECK(p1.points[k].mean >= hy.points[k].mean);
        for (std::size_t s = 0; s < ub.points[k].samples.size(); ++s)
        {
            CHECK(ub.points[k].samples[s].rate >= p1.points[k].samples[s].rate);
            CHECK(p1.points[k].samples[s].rate >= hy.points[k].samples[s].rate - 1e-6);
            CHECK(hy.points[k].samples[s].rate >= id.points[k].samples[s].rate - 1e-6);
        }
    }
    for (double res : r.p1_zf_residuals)
        CHECK(res < 1e-8);
}

TEST_CASE("CSV and JSON carry the same records", "[harness]")
{
    const SimConfig c = small_config(2, {5.0});
    const SweepReport r = run_rate_sweep(c, {parse_scheme("upper_bound"), parse_scheme("svd_mmse")});
    std::ostringstream csv, js;
    write_rates_csv(csv, r);
    write_rates_json(js, r);
    const auto j = nlohmann::json::parse(js.str());
    REQUIRE(j.size() == 2);
    CHECK(j[0]["scheme"] == "upper_bound");
    CHECK(j[0]["snr_db"] == 5.0);
    CHECK(j[0]["n_samples"] == 2);
    CHECK(j[1]["mean_rate_bpshz"].get<double>() == r.results[1].points[0].mean);

    std::istringstream lines(csv.str());
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "scheme,snr_db,mean_rate_bpshz,stderr,n_samples");
    CHECK(row.rfind("upper_bound,5,", 0) == 0);
}

TEST_CASE("numbers format as shortest round-trip decimals", "[harness]")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-10.0) == "-10");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("SINR samples per antenna count and SNR", "[harness]")
{
    SimConfig c = small_config(6, {0.0});
    const SinrReport r = run_sinr_cdf(c, {8, 16}, {0.0, 10.0});
    REQUIRE(r.sets.size() == 4);
    CHECK(r.sets[0].antennas == 8);
    CHECK(r.sets[1].snr_db == 10.0);
    CHECK(r.sets[0].sinr_db.size() == r.sets[1].sinr_db.size());
    CHECK(r.sets[0].sinr_db.size() + r.sets[2].sinr_db.size() + static_cast<std::size_t>(r.skipped) == 12);
    // nulled SI: 10 dB more signal power shifts every sample by 10 dB
    for (std::size_t i = 0; i < r.sets[2].sinr_db.size(); ++i)
        CHECK_THAT(r.sets[3].sinr_db[i] - r.sets[2].sinr_db[i], WithinAbs(10.0, 1e-3));
}
