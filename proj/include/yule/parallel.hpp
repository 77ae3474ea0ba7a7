/*
   Copyright 2026 The yule Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <functional>

namespace yule {

/// Global cap on worker threads used by library kernels. 0 restores the
/// default (hardware concurrency).
void set_max_threads(int threads);
int max_threads();
/// The configured cap (0 when unset).
int thread_cap();

/// Runs body(i) for i in [0, count). Work is split into contiguous static
/// blocks, so any per-index output is independent of the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace yule
