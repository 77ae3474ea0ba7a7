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

#include <array>
#include <cstdint>
#include <span>

namespace yule {

/// Philox4x32-10 counter-based generator (Salmon et al.).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;
    static Counter generate(Counter counter, Key key) noexcept;
};

/// Inverse of the standard normal CDF (Wichura's AS241, ~1e-16 relative).
/// p must lie in (0, 1).
double normal_quantile(double p);

/// Sequential stream of N(0,1) draws for one (seed, stream) pair. The key is
/// the seed; the high 64 counter bits hold the stream index and the low 64
/// count blocks of four outputs.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t stream) noexcept;

    /// Uniform on (0,1): (k + 1/2) / 2^32 for a 32-bit output k.
    double next_uniform() noexcept;
    double next() noexcept { return normal_quantile(next_uniform()); }
    /// Writes the next out.size() normals; same values as repeated next().
    void fill(std::span<double> out) noexcept;

private:
    static constexpr int kBlocks = 16;
    static constexpr int kBuffered = 4 * kBlocks;

    void refill() noexcept;

    Philox4x32::Key key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, kBuffered> buffer_{};
    int used_ = kBuffered;
};

}  // namespace yule
