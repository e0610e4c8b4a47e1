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

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace spatcon
{
    // Worker count: SPATCON_THREADS if set and positive, otherwise hardware concurrency.
    inline std::size_t worker_count()
    {
        std::size_t n = std::max(1u, std::thread::hardware_concurrency());
        if (const char *env = std::getenv("SPATCON_THREADS"))
        {
            try
            {
                const long v = std::stol(env);
                if (v > 0)
                    n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
            }
            catch (...)
            {
            }
        }
        return n;
    }

    // Calls fn(i) for i in [0, count). Each index is processed exactly once; callers write
    // results into preallocated slots so output does not depend on scheduling.
    // The first exception (lowest index among those observed) is rethrown.
    template <typename Fn>
    void parallel_for(std::size_t count, Fn &&fn)
    {
        const std::size_t workers = std::min(worker_count(), count);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < count; ++i)
                fn(i);
            return;
        }

        std::mutex mutex;
        std::exception_ptr error;
        std::size_t error_index = count;
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
        {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < count; i += workers)
                {
                    try
                    {
                        fn(i);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(mutex);
                        if (i < error_index)
                        {
                            error_index = i;
                            error = std::current_exception();
                        }
                        return;
                    }
                }
            });
        }
        pool.clear();
        if (error)
            std::rethrow_exception(error);
    }
}
