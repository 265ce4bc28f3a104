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

#ifndef ZFBEAM_HARNESS_HPP
#define ZFBEAM_HARNESS_HPP

#include "zfbeam/baselines.hpp"
#include "zfbeam/channel.hpp"
#include "zfbeam/config.hpp"
#include "zfbeam/digital_design.hpp"
#include "zfbeam/hybrid_design.hpp"
#include "zfbeam/metrics.hpp"
#include "zfbeam/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <tuple>
#include <utility>
#include <vector>

namespace zfbeam
{
enum class SchemeKind
{
    kUpperBound,
    kDigitalP1,
    kHybrid,
    kHybridQuantized,
    kHybridIdentityBaseband, // analog stage of the hybrid design with identity baseband
    kAnalogOnly,             // analog stage alone, N_RF streams
    kSvdMmse,
    kOmpSplit,
    kGreedySplit,
};

struct Scheme
{
    SchemeKind kind = SchemeKind::kHybrid;
    int bits = 0; // kHybridQuantized only

    [[nodiscard]] std::string label() const
    {
        switch (kind)
        {
        case SchemeKind::kUpperBound: return "upper_bound";
        case SchemeKind::kDigitalP1: return "digital_p1";
        case SchemeKind::kHybrid: return "hybrid";
        case SchemeKind::kHybridQuantized: return "hybrid_q" + std::to_string(bits);
        case SchemeKind::kHybridIdentityBaseband: return "hybrid_identity_bb";
        case SchemeKind::kAnalogOnly: return "analog_only";
        case SchemeKind::kSvdMmse: return "svd_mmse";
        case SchemeKind::kOmpSplit: return "omp_split";
        case SchemeKind::kGreedySplit: return "greedy_split";
        }
        return "unknown";
    }
};

/// Accepts the labels produced by Scheme::label, with hybrid_q<bits> for any bit count.
inline Scheme parse_scheme(std::string_view s)
{
    static constexpr std::pair<std::string_view, SchemeKind> fixed[] = {
        {"upper_bound", SchemeKind::kUpperBound},
        {"digital_p1", SchemeKind::kDigitalP1},
        {"hybrid", SchemeKind::kHybrid},
        {"hybrid_identity_bb", SchemeKind::kHybridIdentityBaseband},
        {"analog_only", SchemeKind::kAnalogOnly},
        {"svd_mmse", SchemeKind::kSvdMmse},
        {"omp_split", SchemeKind::kOmpSplit},
        {"greedy_split", SchemeKind::kGreedySplit},
    };
    for (const auto &[name, kind] : fixed)
        if (s == name)
            return {kind, 0};
    constexpr std::string_view prefix = "hybrid_q";
    if (s.substr(0, prefix.size()) == prefix && s.size() > prefix.size())
    {
        int bits = 0;
        const auto digits = s.substr(prefix.size());
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bits);
        if (ec == std::errc() && ptr == digits.data() + digits.size() && bits >= 1 && bits <= 30)
            return {SchemeKind::kHybridQuantized, bits};
    }
    throw ConfigError("unknown scheme '" + std::string(s) + "'");
}

/// Comma-separated scheme list; empty entries are rejected.
inline std::vector<Scheme> parse_scheme_list(std::string_view list)
{
    std::vector<Scheme> out;
    std::size_t start = 0;
    while (start <= list.size())
    {
        const std::size_t end = std::min(list.find(',', start), list.size());
        out.push_back(parse_scheme(list.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

/// Schemes of the rate sweep and of the baseline comparison.
inline std::vector<Scheme> rate_schemes()
{
    return {{SchemeKind::kUpperBound}, {SchemeKind::kDigitalP1}, {SchemeKind::kHybrid}, {SchemeKind::kSvdMmse}};
}

inline std::vector<Scheme> compare_schemes(const SimConfig &c)
{
    std::vector<Scheme> s = {{SchemeKind::kHybrid}};
    for (int b : c.quantizer_bits)
        s.push_back({SchemeKind::kHybridQuantized, b});
    s.push_back({SchemeKind::kOmpSplit});
    s.push_back({SchemeKind::kGreedySplit});
    return s;
}

struct RateSample
{
    std::uint64_t realization = 0;
    std::uint64_t fingerprint = 0; // ChannelSet::fingerprint of the realization
    double rate = 0.0;
};

struct SweepPoint
{
    double snr_db = 0.0;
    double mean = 0.0;
    double stderr_ = 0.0; // sample stdev / sqrt(n)
    std::vector<RateSample> samples;
};

struct SweepResult
{
    std::string scheme;
    std::vector<SweepPoint> points;
};

struct SweepReport
{
    std::vector<SweepResult> results;
    int realizations = 0;
    int skipped = 0;            // realizations dropped because a design was infeasible
    int analog_not_converged = 0; // analog designs whose SI residual stayed above the threshold
    std::vector<double> p1_zf_residuals; // max SI residual of the digital design per kept realization
};

/// Mean and standard error of a sample; n = 1 gives a standard error of 0.
inline std::pair<double, double> mean_and_stderr(const std::vector<double> &x)
{
    if (x.empty())
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    double mean = 0.0;
    for (double v : x)
        mean += v;
    mean /= static_cast<double>(x.size());
    if (x.size() < 2)
        return {mean, 0.0};
    double ss = 0.0;
    for (double v : x)
        ss += (v - mean) * (v - mean);
    const double n = static_cast<double>(x.size());
    return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

namespace detail
{
struct RealizationStreams
{
    RandomStream channel;
    RandomStream digital;
    RandomStream analog;
};

inline RealizationStreams realization_streams(std::uint64_t seed, std::uint64_t index)
{
    RandomStream root = RandomStream::for_realization(seed, index);
    RandomStream channel = root.fork(0);
    RandomStream digital = root.fork(1);
    RandomStream analog = root.fork(2);
    return {channel, digital, analog};
}

inline bool needs_digital(SchemeKind k)
{
    return k == SchemeKind::kDigitalP1 || k == SchemeKind::kOmpSplit || k == SchemeKind::kGreedySplit;
}

inline bool needs_analog(SchemeKind k)
{
    return k == SchemeKind::kHybrid || k == SchemeKind::kHybridQuantized ||
           k == SchemeKind::kHybridIdentityBaseband || k == SchemeKind::kAnalogOnly;
}
} // namespace detail

/// Channel set of realization `index`.
inline ChannelSet realization_channels(const SimConfig &c, std::uint64_t index)
{
    detail::RealizationStreams s = detail::realization_streams(c.seed, index);
    return draw_channel_set(c.link_setup(), s.channel);
}

/// Paired Monte Carlo sweep: every scheme and SNR point of a realization sees the same
/// ChannelSet. SNR-independent designs (digital, analog, splits) are computed once per
/// realization; the baseband stage and the MMSE combiner are recomputed per SNR point.
inline SweepReport run_rate_sweep(const SimConfig &c, const std::vector<Scheme> &schemes)
{
    c.validate();
    const LinkSetup setup = c.link_setup();
    bool want_digital = false, want_analog = false;
    for (const Scheme &s : schemes)
    {
        want_digital = want_digital || detail::needs_digital(s.kind);
        want_analog = want_analog || detail::needs_analog(s.kind);
    }
    const MmseCovariance mmse_mode = parse_mmse_covariance(c.mmse_covariance);
    ComplexMatrix dict_tx, dict_rx;
    for (const Scheme &s : schemes)
        if (s.kind == SchemeKind::kOmpSplit && dict_tx.size() == 0)
        {
            dict_tx = steering_dictionary(setup.tx_array, setup.wavelength, c.dictionary_azimuth, c.dictionary_elevation);
            dict_rx = steering_dictionary(setup.rx_array, setup.wavelength, c.dictionary_azimuth, c.dictionary_elevation);
        }

    SweepReport rep;
    rep.realizations = c.mc_iterations;
    for (const Scheme &s : schemes)
    {
        SweepResult r{s.label(), {}};
        for (double snr : c.snr_sweep_db)
            r.points.push_back({snr, 0.0, 0.0, {}});
        rep.results.push_back(std::move(r));
    }

    const DigitalSolverOptions digital_opt = c.digital_options();
    const AnalogSolverOptions analog_opt = c.analog_options();

    for (int it = 0; it < c.mc_iterations; ++it)
    {
        const auto index = static_cast<std::uint64_t>(it);
        detail::RealizationStreams streams = detail::realization_streams(c.seed, index);
        const ChannelSet ch = draw_channel_set(setup, streams.channel);
        const std::uint64_t fp = ch.fingerprint();

        std::vector<std::vector<double>> rates(schemes.size(), std::vector<double>(c.snr_sweep_db.size()));
        double p1_residual = 0.0;
        bool analog_ok = true;
        try
        {
            std::optional<DigitalSolveResult> p1;
            std::optional<AnalogSolveResult> p2;
            std::optional<HybridBeamformers> omp, greedy;
            std::vector<std::pair<int, AnalogBeamformers>> quantized;
            if (want_digital)
            {
                p1 = solve_p1(ch, digital_opt, streams.digital);
                p1_residual = std::max(relative_zf_residual(p1->beams.w1, ch.h11, p1->beams.f1),
                                       relative_zf_residual(p1->beams.w2, ch.h22, p1->beams.f2));
            }
            if (want_analog)
            {
                p2 = solve_p2_analog(ch, analog_opt, streams.analog);
                analog_ok = p2->feasible;
            }
            for (const Scheme &s : schemes)
            {
                if (s.kind == SchemeKind::kOmpSplit && !omp)
                    omp = split_digital(p1->beams, SplitMethod::kOmp, dict_tx, dict_rx, c.n_rf);
                if (s.kind == SchemeKind::kGreedySplit && !greedy)
                    greedy = split_digital(p1->beams, SplitMethod::kGreedy, dict_tx, dict_rx, c.n_rf);
                if (s.kind == SchemeKind::kHybridQuantized)
                    quantized.emplace_back(s.bits, quantize_analog(p2->analog, QuantizerSpec{s.bits}));
            }

            for (std::size_t k = 0; k < c.snr_sweep_db.size(); ++k)
            {
                const double snr = c.snr_sweep_db[k];
                const LinkPowers pw = c.powers(snr);
                std::optional<double> hybrid_rate;
                for (std::size_t si = 0; si < schemes.size(); ++si)
                {
                    const Scheme &s = schemes[si];
                    double r = 0.0;
                    switch (s.kind)
                    {
                    case SchemeKind::kUpperBound: r = upper_bound(ch, pw, c.n_s); break;
                    case SchemeKind::kDigitalP1: r = sum_rate_digital(p1->beams, ch, pw).sum; break;
                    case SchemeKind::kHybrid:
                        if (!hybrid_rate)
                            hybrid_rate = solve_p3_digital(ch, p2->analog, c.baseband_options(snr)).rate;
                        r = *hybrid_rate;
                        break;
                    case SchemeKind::kHybridQuantized:
                        for (const auto &[bits, a] : quantized)
                            if (bits == s.bits)
                                r = solve_p3_digital(ch, a, c.baseband_options(snr)).rate;
                        break;
                    case SchemeKind::kHybridIdentityBaseband:
                        r = sum_rate_hybrid({p2->analog, BasebandBeamformers::identity(c.n_rf, c.n_s)}, ch, pw, c.n_s)
                                .sum;
                        break;
                    case SchemeKind::kAnalogOnly: r = sum_rate_analog(p2->analog, ch, pw, c.n_rf).sum; break;
                    case SchemeKind::kSvdMmse:
                        r = sum_rate_digital(svd_mmse_design(ch, c.n_s, pw, mmse_mode), ch, pw).sum;
                        break;
                    case SchemeKind::kOmpSplit: r = sum_rate_hybrid(*omp, ch, pw, c.n_s).sum; break;
                    case SchemeKind::kGreedySplit: r = sum_rate_hybrid(*greedy, ch, pw, c.n_s).sum; break;
                    }
                    rates[si][k] = r;
                }
            }
        }
        catch (const Infeasible &)
        {
            ++rep.skipped;
            continue;
        }

        if (want_analog && !analog_ok)
            ++rep.analog_not_converged;
        if (want_digital)
            rep.p1_zf_residuals.push_back(p1_residual);
        for (std::size_t si = 0; si < schemes.size(); ++si)
            for (std::size_t k = 0; k < c.snr_sweep_db.size(); ++k)
                rep.results[si].points[k].samples.push_back({index, fp, rates[si][k]});
    }

    for (SweepResult &r : rep.results)
        for (SweepPoint &p : r.points)
        {
            std::vector<double> x;
            x.reserve(p.samples.size());
            for (const RateSample &s : p.samples)
                x.push_back(s.rate);
            std::tie(p.mean, p.stderr_) = mean_and_stderr(x);
        }
    return rep;
}

struct SinrSamples
{
    int antennas = 0;
    double snr_db = 0.0;
    std::vector<double> sinr_db; // node-1 aggregate SINR per kept realization, realization order
    std::vector<std::uint64_t> realizations;
};

struct SinrReport
{
    std::vector<SinrSamples> sets;
    int skipped = 0;
};

/// Node-1 SINR of the analog-only design for every (antenna count, SNR) pair. The analog
/// design does not depend on the SNR and is shared across SNR points.
inline SinrReport run_sinr_cdf(const SimConfig &base, const std::vector<int> &antenna_counts,
                               const std::vector<double> &snr_points_db)
{
    SinrReport rep;
    for (int n_a : antenna_counts)
    {
        SimConfig c = base;
        c.tx_antennas = n_a;
        c.rx_antennas = n_a;
        c.validate();
        const LinkSetup setup = c.link_setup();
        const AnalogSolverOptions analog_opt = c.analog_options();
        std::vector<SinrSamples> sets;
        for (double snr : snr_points_db)
            sets.push_back({n_a, snr, {}, {}});

        for (int it = 0; it < c.mc_iterations; ++it)
        {
            const auto index = static_cast<std::uint64_t>(it);
            detail::RealizationStreams streams = detail::realization_streams(c.seed, index);
            const ChannelSet ch = draw_channel_set(setup, streams.channel);
            AnalogSolveResult p2;
            try
            {
                p2 = solve_p2_analog(ch, analog_opt, streams.analog);
            }
            catch (const Infeasible &)
            {
                ++rep.skipped;
                continue;
            }
            for (std::size_t k = 0; k < snr_points_db.size(); ++k)
            {
                const LinkPowers pw = c.powers(snr_points_db[k]);
                const double s = sinr_aggregate(p2.analog.w_rf1, p2.analog.f_rf2, p2.analog.f_rf1, ch.h21, ch.h11,
                                                pw.node1());
                sets[k].sinr_db.push_back(linear_to_db(s));
                sets[k].realizations.push_back(index);
            }
        }
        for (SinrSamples &s : sets)
            rep.sets.push_back(std::move(s));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Output

/// Shortest round-trip decimal representation; identical across runs and platforms.
inline std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

inline constexpr const char *kRateCsvHeader = "scheme,snr_db,mean_rate_bpshz,stderr,n_samples";

inline void write_rates_csv(std::ostream &os, const SweepReport &rep)
{
    os << kRateCsvHeader << '\n';
    for (const SweepResult &r : rep.results)
        for (const SweepPoint &p : r.points)
            os << r.scheme << ',' << format_number(p.snr_db) << ',' << format_number(p.mean) << ','
               << format_number(p.stderr_) << ',' << p.samples.size() << '\n';
}

namespace detail
{
// nlohmann writes doubles with %.17g; numbers go through format_number as raw JSON tokens instead.
inline void write_json_number(std::ostream &os, double v)
{
    if (std::isfinite(v))
        os << format_number(v);
    else
        os << "null";
}

inline void write_json_string(std::ostream &os, const std::string &s) { os << nlohmann::json(s).dump(); }
} // namespace detail

inline void write_rates_json(std::ostream &os, const SweepReport &rep)
{
    os << "[";
    bool first = true;
    for (const SweepResult &r : rep.results)
        for (const SweepPoint &p : r.points)
        {
            os << (first ? "\n" : ",\n") << "  {\"scheme\": ";
            detail::write_json_string(os, r.scheme);
            os << ", \"snr_db\": ";
            detail::write_json_number(os, p.snr_db);
            os << ", \"mean_rate_bpshz\": ";
            detail::write_json_number(os, p.mean);
            os << ", \"stderr\": ";
            detail::write_json_number(os, p.stderr_);
            os << ", \"n_samples\": " << p.samples.size() << "}";
            first = false;
        }
    os << (first ? "]\n" : "\n]\n");
}

inline constexpr const char *kSinrCsvHeader = "antennas,snr_db,realization,sinr_db";

/// One row per realization; sorting the sinr_db column of a (antennas, snr_db) group yields the CDF.
inline void write_sinr_csv(std::ostream &os, const SinrReport &rep)
{
    os << kSinrCsvHeader << '\n';
    for (const SinrSamples &s : rep.sets)
        for (std::size_t i = 0; i < s.sinr_db.size(); ++i)
            os << s.antennas << ',' << format_number(s.snr_db) << ',' << s.realizations[i] << ','
               << format_number(s.sinr_db[i]) << '\n';
}

inline void write_sinr_json(std::ostream &os, const SinrReport &rep)
{
    os << "[";
    bool first = true;
    for (const SinrSamples &s : rep.sets)
        for (std::size_t i = 0; i < s.sinr_db.size(); ++i)
        {
            os << (first ? "\n" : ",\n") << "  {\"antennas\": " << s.antennas << ", \"snr_db\": ";
            detail::write_json_number(os, s.snr_db);
            os << ", \"realization\": " << s.realizations[i] << ", \"sinr_db\": ";
            detail::write_json_number(os, s.sinr_db[i]);
            os << "}";
            first = false;
        }
    os << (first ? "]\n" : "\n]\n");
}
} // namespace zfbeam

#endif // ZFBEAM_HARNESS_HPP
