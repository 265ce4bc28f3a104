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

#ifndef ZFBEAM_CHANNEL_IO_HPP
#define ZFBEAM_CHANNEL_IO_HPP

#include "zfbeam/channel.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <string>

namespace zfbeam
{
// Channel dump document (one realization per file):
// {
//   "format": "zfbeam-channel-set", "version": 1,
//   "realization": <index>, "fingerprint": "<16 hex digits>",
//   "channels": { "h21": {"rows": R, "cols": C, "entries": [[re, im], ...]}, "h12": ..., "h11": ..., "h22": ... }
// }
// Entries are row-major.

inline constexpr const char *kChannelDumpFormat = "zfbeam-channel-set";

inline nlohmann::ordered_json matrix_to_json(const ComplexMatrix &m)
{
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            entries.push_back({m(r, c).real(), m(r, c).imag()});
    nlohmann::ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = std::move(entries);
    return j;
}

inline ComplexMatrix matrix_from_json(const nlohmann::ordered_json &j, const std::string &name)
{
    try
    {
        const auto rows = j.at("rows").get<Eigen::Index>();
        const auto cols = j.at("cols").get<Eigen::Index>();
        const auto &entries = j.at("entries");
        if (rows < 0 || cols < 0 || entries.size() != static_cast<std::size_t>(rows * cols))
            throw ConfigError("channel dump: matrix '" + name + "' has inconsistent dimensions");
        ComplexMatrix m(rows, cols);
        std::size_t k = 0;
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < cols; ++c, ++k)
                m(r, c) = Complex(entries[k].at(0).get<double>(), entries[k].at(1).get<double>());
        return m;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError("channel dump: malformed matrix '" + name + "': " + e.what());
    }
}

inline std::string fingerprint_hex(std::uint64_t fp)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, fp >>= 4)
        s[static_cast<std::size_t>(i)] = digits[fp & 0xF];
    return s;
}

inline nlohmann::ordered_json channel_set_to_json(const ChannelSet &cs, std::uint64_t realization)
{
    nlohmann::ordered_json j;
    j["format"] = kChannelDumpFormat;
    j["version"] = 1;
    j["realization"] = realization;
    j["fingerprint"] = fingerprint_hex(cs.fingerprint());
    j["channels"]["h21"] = matrix_to_json(cs.h21);
    j["channels"]["h12"] = matrix_to_json(cs.h12);
    j["channels"]["h11"] = matrix_to_json(cs.h11);
    j["channels"]["h22"] = matrix_to_json(cs.h22);
    return j;
}

inline ChannelSet channel_set_from_json(const nlohmann::ordered_json &j)
{
    if (!j.is_object() || j.value("format", std::string{}) != kChannelDumpFormat)
        throw ConfigError("channel dump: missing or unknown 'format' tag");
    if (!j.contains("channels"))
        throw ConfigError("channel dump: missing 'channels'");
    const auto &ch = j.at("channels");
    ChannelSet cs;
    for (const char *name : {"h21", "h12", "h11", "h22"})
        if (!ch.contains(name))
            throw ConfigError(std::string("channel dump: missing matrix '") + name + "'");
    cs.h21 = matrix_from_json(ch.at("h21"), "h21");
    cs.h12 = matrix_from_json(ch.at("h12"), "h12");
    cs.h11 = matrix_from_json(ch.at("h11"), "h11");
    cs.h22 = matrix_from_json(ch.at("h22"), "h22");
    return cs;
}

inline void write_channel_dump(const std::string &path, const ChannelSet &cs, std::uint64_t realization)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot open channel dump for writing: " + path);
    out << channel_set_to_json(cs, realization).dump(1) << '\n';
}

inline ChannelSet read_channel_dump(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open channel dump: " + path);
    nlohmann::ordered_json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError("channel dump '" + path + "' is not valid JSON: " + e.what());
    }
    return channel_set_from_json(j);
}
} // namespace zfbeam

#endif // ZFBEAM_CHANNEL_IO_HPP
