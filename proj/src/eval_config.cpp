// SPDX-License-Identifier: Apache-2.0
//
// spatcon - spatial consistency evaluation for massive SIMO channels
// Copyright (C) 2026 The spatcon authors
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

#include "spatcon/eval_config.hpp"

#include <cmath>

#include "spatcon/error.hpp"

namespace spatcon
{
    void EvalConfig::validate() const
    {
        if (tau < 1)
            raise(ErrorCode::InvalidConfig, "tau must be >= 1");
        if (n_subcarriers < 1)
            raise(ErrorCode::InvalidConfig, "n_subcarriers must be >= 1");
        if (lttl_count < 1)
            raise(ErrorCode::InvalidConfig, "lttl_count must be >= 1");
        if (!(stts_interval > 0.0) || !(lttl_interval > 0.0) || !std::isfinite(lttl_interval))
            raise(ErrorCode::InvalidInterval, "intervals must be positive and finite");
        if (lttl_interval < static_cast<double>(tau) * stts_interval)
            raise(ErrorCode::InvalidInterval, "lttl_interval is shorter than tau x stts_interval");
        if (!(carrier_frequency > 0.0) || !(subcarrier_spacing > 0.0))
            raise(ErrorCode::InvalidConfig, "frequencies must be positive");
        if (subcarrier_frequency(0) <= 0.0)
            raise(ErrorCode::InvalidConfig, "band extends below 0 Hz");
    }
}
