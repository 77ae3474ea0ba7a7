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

#include "yule/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace yule {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

template <int Lanes>
void philox_round(std::uint32_t* __restrict c0, std::uint32_t* __restrict c1, std::uint32_t* __restrict c2,
                  std::uint32_t* __restrict c3, std::uint32_t k0, std::uint32_t k1) noexcept {
    for (int l = 0; l < Lanes; ++l) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c0[l];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c2[l];
        const std::uint32_t n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c1[l] ^ k0;
        const std::uint32_t n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c3[l] ^ k1;
        c0[l] = n0;
        c1[l] = static_cast<std::uint32_t>(p1);
        c2[l] = n2;
        c3[l] = static_cast<std::uint32_t>(p0);
    }
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter c, Key k) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k[0] += kW0;
            k[1] += kW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

namespace {

inline double central_quantile(double p) noexcept {
    const double q = p - 0.5;
    const double r = 0.180625 - q * q;
    return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r + 6.7265770927008700853e+4) * r +
                    4.5921953931549871457e+4) * r + 1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r + 3.9307895800092710610e+4) * r +
                    2.1213794301586595867e+4) * r + 5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
}

inline double tail_quantile(double p) noexcept {
    const double q = p - 0.5;
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r + 2.41780725177450611770e-1) * r +
                 1.27045825245236838258e+0) * r + 3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r + 1.51986665636164571966e-2) * r +
                 1.48103976427480074590e-1) * r + 6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 1.24266094738807843860e-3) * r +
                 2.65321895265761230930e-2) * r + 2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r + 1.84631831751005468180e-5) * r +
                 7.86869131145613259100e-4) * r + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -x : x;
}

inline double quantile_unchecked(double p) noexcept {
    return std::fabs(p - 0.5) <= 0.425 ? central_quantile(p) : tail_quantile(p);
}

// Central formula for every entry (branch-free, vectorizable), then the
// tail formula for the collected tail entries.
__attribute__((target_clones("avx2", "default"))) void convert_block(const std::uint32_t* src, double* dst,
                                                                     std::size_t count) noexcept {
    std::uint8_t tail_index[256];
    std::size_t tails = 0;
    for (std::size_t j = 0; j < count; ++j) {
        const double p = (static_cast<double>(src[j]) + 0.5) * 0x1p-32;
        dst[j] = central_quantile(p);
        tail_index[tails] = static_cast<std::uint8_t>(j);
        tails += (std::fabs(p - 0.5) > 0.425) ? 1 : 0;
    }
    for (std::size_t t = 0; t < tails; ++t) {
        const std::size_t j = tail_index[t];
        dst[j] = tail_quantile((static_cast<double>(src[j]) + 0.5) * 0x1p-32);
    }
}

}  // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile needs 0 < p < 1");
    return quantile_unchecked(p);
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, stream_(stream) {}

void NormalStream::refill() noexcept {
    // kBlocks consecutive counters at once, lane-parallel.
    std::uint32_t c0[kBlocks], c1[kBlocks], c2[kBlocks], c3[kBlocks];
    for (int l = 0; l < kBlocks; ++l) {
        const std::uint64_t block = block_ + static_cast<std::uint64_t>(l);
        c0[l] = static_cast<std::uint32_t>(block);
        c1[l] = static_cast<std::uint32_t>(block >> 32);
        c2[l] = static_cast<std::uint32_t>(stream_);
        c3[l] = static_cast<std::uint32_t>(stream_ >> 32);
    }
    std::uint32_t k0 = key_[0];
    std::uint32_t k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k0 += kW0;
            k1 += kW1;
        }
        philox_round<kBlocks>(c0, c1, c2, c3, k0, k1);
    }
    for (int l = 0; l < kBlocks; ++l) {
        buffer_[static_cast<std::size_t>(4 * l)] = c0[l];
        buffer_[static_cast<std::size_t>(4 * l + 1)] = c1[l];
        buffer_[static_cast<std::size_t>(4 * l + 2)] = c2[l];
        buffer_[static_cast<std::size_t>(4 * l + 3)] = c3[l];
    }
    block_ += kBlocks;
    used_ = 0;
}

void NormalStream::fill(std::span<double> out) noexcept {
    std::size_t i = 0;
    while (i < out.size()) {
        if (used_ == kBuffered) refill();
        const std::size_t take = std::min(out.size() - i, static_cast<std::size_t>(kBuffered - used_));
        convert_block(buffer_.data() + used_, out.data() + i, take);
        used_ += static_cast<int>(take);
        i += take;
    }
}

double NormalStream::next_uniform() noexcept {
    if (used_ == kBuffered) refill();
    const std::uint32_t k = buffer_[static_cast<std::size_t>(used_++)];
    return (static_cast<double>(k) + 0.5) * 0x1p-32;
}

}  // namespace yule
