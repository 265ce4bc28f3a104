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

#ifndef ZFBEAM_CLI_HPP
#define ZFBEAM_CLI_HPP

#include "zfbeam/channel_io.hpp"
#include "zfbeam/config.hpp"
#include "zfbeam/harness.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

namespace zfbeam
{
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNumericDegeneracy = 2;

namespace detail
{
struct CommonFlags
{
    std::string config = "default";
    std::optional<std::uint64_t> seed;
    std::optional<int> mc_iterations;
    std::string out;
    std::string format = "csv";
};

inline void add_common(CLI::App *cmd, CommonFlags &f)
{
    cmd->add_option("--config", f.config, "JSON config file, or 'default'");
    cmd->add_option("--seed", f.seed, "Monte Carlo seed (overrides the config)");
    cmd->add_option("--mc-iterations", f.mc_iterations, "Realization count (overrides the config)");
    cmd->add_option("--out", f.out, "Output file (default: stdout)");
    cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

inline SimConfig resolve_config(const CommonFlags &f)
{
    SimConfig c = load_config(f.config);
    if (f.seed)
        c.seed = *f.seed;
    if (f.mc_iterations)
        c.mc_iterations = *f.mc_iterations;
    c.validate();
    return c;
}

inline std::vector<double> parse_real_list(const std::string &s, const char *what)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size())
            throw ConfigError(std::string(what) + ": malformed entry '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw ConfigError(std::string(what) + ": empty list");
    return out;
}

// Writes to the file named by `path`, or to `fallback` when path is empty.
template <typename Fn>
void emit(const std::string &path, std::ostream &fallback, Fn &&write)
{
    if (path.empty())
    {
        write(fallback);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot open output file '" + path + "'");
    write(out);
}

inline void dump_realizations(const SimConfig &c, const std::string &dir)
{
    std::filesystem::create_directories(dir);
    for (int i = 0; i < c.mc_iterations; ++i)
    {
        const auto index = static_cast<std::uint64_t>(i);
        write_channel_dump((std::filesystem::path(dir) / ("realization_" + std::to_string(i) + ".json")).string(),
                           realization_channels(c, index), index);
    }
}
} // namespace detail

/// Command-line entry point. Exit codes: 0 success, 1 configuration or usage error,
/// 2 numeric degeneracy in a rate evaluation.
inline int cli_main(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
    CLI::App app{"Zero-forcing beamforming for full-duplex mmWave MIMO links"};
    app.require_subcommand(1);

    detail::CommonFlags rates_f, compare_f, sinr_f, dump_f;
    std::string rates_schemes, compare_schemes_list, rates_snr, compare_snr, rates_dump, compare_dump;
    std::string sinr_antennas = "16,32", sinr_snr = "0,10";
    std::uint64_t dump_index = 0;

    CLI::App *rates = app.add_subcommand("rates", "Sum rate versus SNR");
    detail::add_common(rates, rates_f);
    rates->add_option("--schemes", rates_schemes, "Comma-separated scheme list");
    rates->add_option("--snr", rates_snr, "Comma-separated SNR points in dB (overrides the config sweep)");
    rates->add_option("--dump-channels", rates_dump, "Directory receiving one channel dump per realization");

    CLI::App *compare = app.add_subcommand("compare", "Hybrid design against splits and quantized phase shifters");
    detail::add_common(compare, compare_f);
    compare->add_option("--schemes", compare_schemes_list, "Comma-separated scheme list");
    compare->add_option("--snr", compare_snr, "Comma-separated SNR points in dB (overrides the config sweep)");
    compare->add_option("--dump-channels", compare_dump, "Directory receiving one channel dump per realization");

    CLI::App *sinr = app.add_subcommand("sinr-cdf", "Per-realization SINR samples of the analog design");
    detail::add_common(sinr, sinr_f);
    sinr->add_option("--antennas", sinr_antennas, "Comma-separated antenna counts per array");
    sinr->add_option("--snr", sinr_snr, "Comma-separated SNR points in dB");

    CLI::App *dump = app.add_subcommand("dump-channels", "Write the channel set of one realization as JSON");
    detail::add_common(dump, dump_f);
    dump->add_option("--realization", dump_index, "Realization index");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        out << app.help();
        return kExitOk;
    }
    catch (const CLI::ParseError &e)
    {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }

    try
    {
        auto run_sweep = [&](const detail::CommonFlags &f, const std::string &schemes, const std::string &snr,
                             const std::string &dump_dir, bool is_compare) {
            SimConfig c = detail::resolve_config(f);
            if (!snr.empty())
                c.snr_sweep_db = detail::parse_real_list(snr, "--snr");
            const std::vector<Scheme> list =
                !schemes.empty() ? parse_scheme_list(schemes) : (is_compare ? compare_schemes(c) : rate_schemes());
            if (!dump_dir.empty())
                detail::dump_realizations(c, dump_dir);
            const SweepReport rep = run_rate_sweep(c, list);
            if (rep.skipped > 0)
                err << "skipped " << rep.skipped << " of " << rep.realizations << " realizations (infeasible design)\n";
            detail::emit(f.out, out, [&](std::ostream &os) {
                if (f.format == "json")
                    write_rates_json(os, rep);
                else
                    write_rates_csv(os, rep);
            });
        };

        if (rates->parsed())
            run_sweep(rates_f, rates_schemes, rates_snr, rates_dump, false);
        else if (compare->parsed())
            run_sweep(compare_f, compare_schemes_list, compare_snr, compare_dump, true);
        else if (sinr->parsed())
        {
            const SimConfig c = detail::resolve_config(sinr_f);
            std::vector<int> antennas;
            for (double a : detail::parse_real_list(sinr_antennas, "--antennas"))
            {
                if (a < 1.0 || a != static_cast<int>(a))
                    throw ConfigError("--antennas: entries must be positive integers");
                antennas.push_back(static_cast<int>(a));
            }
            const SinrReport rep = run_sinr_cdf(c, antennas, detail::parse_real_list(sinr_snr, "--snr"));
            if (rep.skipped > 0)
                err << "skipped " << rep.skipped << " realizations (infeasible design)\n";
            detail::emit(sinr_f.out, out, [&](std::ostream &os) {
                if (sinr_f.format == "json")
                    write_sinr_json(os, rep);
                else
                    write_sinr_csv(os, rep);
            });
        }
        else if (dump->parsed())
        {
            const SimConfig c = detail::resolve_config(dump_f);
            const ChannelSet cs = realization_channels(c, dump_index);
            detail::emit(dump_f.out, out,
                         [&](std::ostream &os) { os << channel_set_to_json(cs, dump_index).dump(1) << '\n'; });
        }
    }
    catch (const NumericDegeneracy &e)
    {
        err << "numeric degeneracy: " << e.what() << '\n';
        return kExitNumericDegeneracy;
    }
    catch (const Error &e)
    {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
    catch (const std::filesystem::filesystem_error &e)
    {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
    return kExitOk;
}
} // namespace zfbeam

#endif // ZFBEAM_CLI_HPP
