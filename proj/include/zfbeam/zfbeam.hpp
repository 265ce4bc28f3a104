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

#ifndef ZFBEAM_ZFBEAM_HPP
#define ZFBEAM_ZFBEAM_HPP

#include "zfbeam/baselines.hpp"
#include "zfbeam/beamformers.hpp"
#include "zfbeam/channel.hpp"
#include "zfbeam/channel_io.hpp"
#include "zfbeam/config.hpp"
#include "zfbeam/digital_design.hpp"
#include "zfbeam/geometry.hpp"
#include "zfbeam/harness.hpp"
#include "zfbeam/hybrid_design.hpp"
#include "zfbeam/metrics.hpp"
#include "zfbeam/projector.hpp"
#include "zfbeam/random.hpp"
#include "zfbeam/types.hpp"

#endif // ZFBEAM_ZFBEAM_HPP
