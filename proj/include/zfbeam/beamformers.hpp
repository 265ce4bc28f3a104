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

#ifndef ZFBEAM_BEAMFORMERS_HPP
#define ZFBEAM_BEAMFORMERS_HPP

#include "zfbeam/types.hpp"

namespace zfbeam
{
/// Fully-digital precoders F_u (N_t x N_s) and combiners W_u (N_r x N_s).
struct DigitalBeamformers
{
    ComplexMatrix f1, f2;
    ComplexMatrix w1, w2;
};

/// Analog (phase-shifter) stages: F_RF,u is N_t x N_RF, W_RF,u is N_r x N_RF.
struct AnalogBeamformers
{
    ComplexMatrix f_rf1, f_rf2;
    ComplexMatrix w_rf1, w_rf2;
};

/// Baseband stages, N_RF x N_s.
struct BasebandBeamformers
{
    ComplexMatrix f_bb1, f_bb2;
    ComplexMatrix w_bb1, w_bb2;

    /// First n_s columns of the N_RF identity on every stage.
    static BasebandBeamformers identity(Eigen::Index n_rf, Eigen::Index n_s)
    {
        const ComplexMatrix e = identity_columns(n_rf, n_s);
        return {e, e, e, e};
    }
};

struct HybridBeamformers
{
    AnalogBeamformers analog;
    BasebandBeamformers baseband;

    /// Cascaded beamformers F_RF F_BB and W_RF W_BB.
    [[nodiscard]] DigitalBeamformers composite() const
    {
        return {analog.f_rf1 * baseband.f_bb1, analog.f_rf2 * baseband.f_bb2, analog.w_rf1 * baseband.w_bb1,
                analog.w_rf2 * baseband.w_bb2};
    }
};
} // namespace zfbeam

#endif // ZFBEAM_BEAMFORMERS_HPP
