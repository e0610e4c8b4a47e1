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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace spatcon
{
    // 64-bit FNV-1a.
    constexpr std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL)
    {
        for (const char c : data)
        {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    std::string to_hex(std::uint64_t value);

    // Shortest round-trip decimal representation, locale independent.
    std::string format_double(double value);

    // Fixed-point representation, locale independent.
    std::string format_fixed(double value, int decimals);

    inline constexpr std::string_view tool_version = "spatcon 1.0.0";
}
