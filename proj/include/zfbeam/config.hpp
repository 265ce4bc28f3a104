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

#ifndef ZFBEAM_CONFIG_HPP
#define ZFBEAM_CONFIG_HPP

#include "zfbeam/baselines.hpp"
#include "zfbeam/channel.hpp"
#include "zfbeam/digital_design.hpp"
#include "zfbeam/hybrid_design.hpp"
#include "zfbeam/metrics.hpp"

#include <json.hpp>

#include <climits>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace zfbeam
{
/// Simulation parameters. Defaults reproduce the reference link configuration.
struct SimConfig
{
    double carrier_hz = 28e9;
    double bandwidth_hz = 850e6;
    int tx_antennas = 16;
    int rx_antennas = 16;
    int n_cl = 6;
    int n_ray = 8;
    double angular_spread_rad = 20.0 * kPi / 180.0;
    double gap_d_wavelengths = 2.0;
    double incline_omega_rad = kPi / 6.0;
    double rician_kappa_db = 5.0;
    double si_power_db = 30.0; // INR
    double antenna_spacing_wavelengths = 0.5;
    int n_s = 2;
    int n_rf = 4;
    std::vector<double> snr_sweep_db = {-10.0, -7.5, -5.0, -2.5, 0.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0};
    int mc_iterations = 1000;
    std::uint64_t seed = 1;

    // solvers
    int ap_inner_iter = 20;
    int ap_outer_iter = 50;
    double ap_tol = 1e-6;
    int ap_zf_cycle_iter = 4000;
    double ap_zf_tol = 1e-12;
    double ap_residual_threshold = 1e-3;
    int analog_cycles = 3;
    double digital_tol = 1e-6;
    int digital_max_outer = 100;
    int digital_zf_iter = 4;
    double baseband_tol = 1e-6;
    int baseband_max_iter = 100;
    double design_snr_db = 10.0; // SNR at which the SNR-independent designs evaluate their stopping rate

    // baselines
    std::vector<int> quantizer_bits = {6, 4};
    std::string mmse_covariance = "signal_plus_noise";
    int dictionary_azimuth = 8;
    int dictionary_elevation = 8;

    void validate() const
    {
        auto need = [](bool ok, const char *key, const char *rule) {
            if (!ok)
                throw ConfigError(std::string("config key '") + key + "': " + rule);
        };
        need(carrier_hz > 0.0, "carrier_hz", "must be > 0");
        need(bandwidth_hz > 0.0, "bandwidth_hz", "must be > 0");
        need(tx_antennas >= 1, "tx_antennas", "must be >= 1");
        need(rx_antennas >= 1, "rx_antennas", "must be >= 1");
        need(n_cl >= 1, "n_cl", "must be >= 1");
        need(n_ray >= 1, "n_ray", "must be >= 1");
        need(angular_spread_rad >= 0.0, "angular_spread_rad", "must be >= 0");
        need(gap_d_wavelengths > 0.0, "gap_d_wavelengths", "must be > 0");
        need(antenna_spacing_wavelengths > 0.0, "antenna_spacing_wavelengths", "must be > 0");
        need(n_s >= 1, "n_s", "must be >= 1");
        need(n_rf >= 1, "n_rf", "must be >= 1");
        need(n_s <= n_rf, "n_s", "must not exceed n_rf");
        need(!snr_sweep_db.empty(), "snr_sweep_db", "must be non-empty");
        need(mc_iterations >= 1, "mc_iterations", "must be >= 1");
        need(ap_inner_iter >= 1, "ap_inner_iter", "must be >= 1");
        need(ap_outer_iter >= 1, "ap_outer_iter", "must be >= 1");
        need(ap_zf_cycle_iter >= 0, "ap_zf_cycle_iter", "must be >= 0");
        need(ap_tol >= 0.0, "ap_tol", "must be >= 0");
        need(ap_zf_tol >= 0.0, "ap_zf_tol", "must be >= 0");
        need(ap_residual_threshold > 0.0, "ap_residual_threshold", "must be > 0");
        need(analog_cycles >= 1, "analog_cycles", "must be >= 1");
        need(digital_tol >= 0.0, "digital_tol", "must be >= 0");
        need(digital_max_outer >= 1, "digital_max_outer", "must be >= 1");
        need(digital_zf_iter >= 1, "digital_zf_iter", "must be >= 1");
        need(baseband_tol >= 0.0, "baseband_tol", "must be >= 0");
        need(baseband_max_iter >= 1, "baseband_max_iter", "must be >= 1");
        for (int b : quantizer_bits)
            need(b >= 1 && b <= 30, "quantizer_bits", "entries must lie in [1, 30]");
        need(mmse_covariance == "signal_plus_noise" || mmse_covariance == "interference_plus_noise",
             "mmse_covariance", "must be 'signal_plus_noise' or 'interference_plus_noise'");
        need(dictionary_azimuth >= 1, "dictionary_azimuth", "must be >= 1");
        need(dictionary_elevation >= 1, "dictionary_elevation", "must be >= 1");
    }

    [[nodiscard]] double wavelength() const { return kSpeedOfLight / carrier_hz; }
    [[nodiscard]] double noise_variance() const { return noise_variance_linear(bandwidth_hz); }

    [[nodiscard]] LinkSetup link_setup() const
    {
        LinkSetup s;
        s.wavelength = wavelength();
        s.tx_array = UraSpec::for_count(tx_antennas, s.wavelength, antenna_spacing_wavelengths);
        s.rx_array = UraSpec::for_count(rx_antennas, s.wavelength, antenna_spacing_wavelengths);
        s.clusters = ClusterSpec{n_cl, n_ray, angular_spread_rad};
        s.rician = RicianSpec::from_db(rician_kappa_db);
        s.gap_d = gap_d_wavelengths * s.wavelength;
        s.incline_omega = incline_omega_rad;
        return s;
    }

    [[nodiscard]] LinkPowers powers(double snr_db) const
    {
        return LinkPowers::from_snr_inr_db(snr_db, si_power_db, noise_variance());
    }

    [[nodiscard]] AlternatingProjectionParams ap_params() const
    {
        return {ap_inner_iter, ap_outer_iter, ap_tol, ap_zf_cycle_iter, ap_zf_tol, ap_residual_threshold};
    }

    [[nodiscard]] DigitalSolverOptions digital_options() const
    {
        return {n_s, digital_tol, digital_max_outer, digital_zf_iter, powers(design_snr_db)};
    }

    [[nodiscard]] AnalogSolverOptions analog_options() const { return {n_rf, analog_cycles, ap_params()}; }

    [[nodiscard]] BasebandSolverOptions baseband_options(double snr_db) const
    {
        return {n_s, baseband_tol, baseband_max_iter, powers(snr_db)};
    }
};

namespace detail
{
using JsonSetter = std::function<void(SimConfig &, const nlohmann::json &, const std::string &)>;

inline void config_type_error(const std::string &key, const char *expected)
{
    throw ConfigError("config key '" + key + "': expected " + expected);
}

inline JsonSetter real_field(double SimConfig::*m)
{
    return [m](SimConfig &c, const nlohmann::json &v, const std::string &key) {
        if (!v.is_number())
            config_type_error(key, "a number");
        c.*m = v.get<double>();
    };
}

inline JsonSetter int_field(int SimConfig::*m)
{
    return [m](SimConfig &c, const nlohmann::json &v, const std::string &key) {
        if (!v.is_number_integer())
            config_type_error(key, "an integer");
        const auto x = v.get<std::int64_t>();
        if (x < INT_MIN || x > INT_MAX)
            config_type_error(key, "an integer in 32-bit range");
        c.*m = static_cast<int>(x);
    };
}

inline const std::map<std::string, JsonSetter> &config_setters()
{
    static const std::map<std::string, JsonSetter> table = {
        {"carrier_hz", real_field(&SimConfig::carrier_hz)},
        {"bandwidth_hz", real_field(&SimConfig::bandwidth_hz)},
        {"tx_antennas", int_field(&SimConfig::tx_antennas)},
        {"rx_antennas", int_field(&SimConfig::rx_antennas)},
        {"n_cl", int_field(&SimConfig::n_cl)},
        {"n_ray", int_field(&SimConfig::n_ray)},
        {"angular_spread_rad", real_field(&SimConfig::angular_spread_rad)},
        {"gap_d_wavelengths", real_field(&SimConfig::gap_d_wavelengths)},
        {"incline_omega_rad", real_field(&SimConfig::incline_omega_rad)},
        {"rician_kappa_db", real_field(&SimConfig::rician_kappa_db)},
        {"si_power_db", real_field(&SimConfig::si_power_db)},
        {"antenna_spacing_wavelengths", real_field(&SimConfig::antenna_spacing_wavelengths)},
        {"n_s", int_field(&SimConfig::n_s)},
        {"n_rf", int_field(&SimConfig::n_rf)},
        {"snr_sweep_db",
         [](SimConfig &c, const nlohmann::json &v, const std::string &key) {
             if (!v.is_array())
                 config_type_error(key, "an array of numbers");
             c.snr_sweep_db.clear();
             for (const auto &x : v)
             {
                 if (!x.is_number())
                     config_type_error(key, "an array of numbers");
                 c.snr_sweep_db.push_back(x.get<double>());
             }
         }},
        {"mc_iterations", int_field(&SimConfig::mc_iterations)},
        {"seed",
         [](SimConfig &c, const nlohmann::json &v, const std::string &key) {
             if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
                 config_type_error(key, "a non-negative integer");
             c.seed = v.get<std::uint64_t>();
         }},
        {"ap_inner_iter", int_field(&SimConfig::ap_inner_iter)},
        {"ap_outer_iter", int_field(&SimConfig::ap_outer_iter)},
        {"ap_tol", real_field(&SimConfig::ap_tol)},
        {"ap_zf_cycle_iter", int_field(&SimConfig::ap_zf_cycle_iter)},
        {"ap_zf_tol", real_field(&SimConfig::ap_zf_tol)},
        {"ap_residual_threshold", real_field(&SimConfig::ap_residual_threshold)},
        {"analog_cycles", int_field(&SimConfig::analog_cycles)},
        {"digital_tol", real_field(&SimConfig::digital_tol)},
        {"digital_max_outer", int_field(&SimConfig::digital_max_outer)},
        {"digital_zf_iter", int_field(&SimConfig::digital_zf_iter)},
        {"baseband_tol", real_field(&SimConfig::baseband_tol)},
        {"baseband_max_iter", int_field(&SimConfig::baseband_max_iter)},
        {"design_snr_db", real_field(&SimConfig::design_snr_db)},
        {"quantizer_bits",
         [](SimConfig &c, const nlohmann::json &v, const std::string &key) {
             if (!v.is_array())
                 config_type_error(key, "an array of integers");
             c.quantizer_bits.clear();
             for (const auto &x : v)
             {
                 if (!x.is_number_integer())
                     config_type_error(key, "an array of integers");
                 c.quantizer_bits.push_back(x.get<int>());
             }
         }},
        {"mmse_covariance",
         [](SimConfig &c, const nlohmann::json &v, const std::string &key) {
             if (!v.is_string())
                 config_type_error(key, "a string");
             c.mmse_covariance = v.get<std::string>();
         }},
        {"dictionary_azimuth", int_field(&SimConfig::dictionary_azimuth)},
        {"dictionary_elevation", int_field(&SimConfig::dictionary_elevation)},
    };
    return table;
}
} // namespace detail

/// Applies the keys of a flat JSON object on top of the defaults. Unknown keys are errors.
inline SimConfig config_from_json(const nlohmann::json &j)
{
    if (!j.is_object())
        throw ConfigError("config: top level must be a JSON object");
    SimConfig c;
    const auto &setters = detail::config_setters();
    for (const auto &[key, value] : j.items())
    {
        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError("config key '" + key + "': unknown key");
        it->second(c, value, key);
    }
    c.validate();
    return c;
}

/// "default" yields the built-in configuration; anything else is a path to a JSON file.
inline SimConfig load_config(const std::string &path_or_default)
{
    if (path_or_default == "default")
        return SimConfig{};
    std::ifstream in(path_or_default);
    if (!in)
        throw ConfigError("cannot open config file '" + path_or_default + "'");
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError("config file '" + path_or_default + "': " + e.what());
    }
    try
    {
        return config_from_json(j);
    }
    catch (const ConfigError &e)
    {
        throw ConfigError("config file '" + path_or_default + "': " + e.what());
    }
}
} // namespace zfbeam

#endif // ZFBEAM_CONFIG_HPP
