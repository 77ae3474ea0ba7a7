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

#include "yule/montecarlo.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "yule/parallel.hpp"
#include "yule/rng.hpp"

namespace yule {

namespace {

constexpr long kChunk = 2048;
constexpr long kMaxFineSteps = 1'000'000'000;
constexpr int kMaxRedraws = 16;

// Streams for redraws live above bit 48 of the stream index.
constexpr int kRedrawShift = 48;

template <class Source>
CoupledSample accumulate(int n, int fine_factor, Source&& next_pair) {
    const long fine = static_cast<long>(n) * fine_factor;
    double w1 = 0.0, w2 = 0.0;
    // fine-grid left-endpoint sums
    double f1 = 0.0, f2 = 0.0, f11 = 0.0, f22 = 0.0, f12 = 0.0;
    // coarse right-endpoint sums
    double c1 = 0.0, c2 = 0.0, c11 = 0.0, c22 = 0.0, c12 = 0.0;
    int step_in_block = 0;
    for (long i = 0; i < fine; ++i) {
        f1 += w1;
        f2 += w2;
        f11 += w1 * w1;
        f22 += w2 * w2;
        f12 += w1 * w2;
        const auto [d1, d2] = next_pair(i);
        w1 += d1;
        w2 += d2;
        if (++step_in_block == fine_factor) {
            step_in_block = 0;
            c1 += w1;
            c2 += w2;
            c11 += w1 * w1;
            c22 += w2 * w2;
            c12 += w1 * w2;
        }
    }
    // sum_{j,k} M((j-1)/n, (k-1)/n) dX_j dY_k equals the empirical covariance
    // of the coarse path values X(i/n), Y(i/n), i = 1..n.
    const double nn = static_cast<double>(n);
    const double ff = static_cast<double>(fine);
    CoupledSample s;
    s.A_n = c12 / nn - (c1 / nn) * (c2 / nn);
    s.B_n = c11 / nn - (c1 / nn) * (c1 / nn);
    s.C_n = c22 / nn - (c2 / nn) * (c2 / nn);
    s.A_hat = f12 / ff - (f1 / ff) * (f2 / ff);
    s.B_hat = f11 / ff - (f1 / ff) * (f1 / ff);
    s.C_hat = f22 / ff - (f2 / ff) * (f2 / ff);
    s.theta_n = s.A_n / std::sqrt(s.B_n * s.C_n);
    s.theta_hat = s.A_hat / std::sqrt(s.B_hat * s.C_hat);
    return s;
}

bool degenerate(const CoupledSample& s) {
    return !(s.B_n > 0.0 && s.C_n > 0.0 && s.B_hat > 0.0 && s.C_hat > 0.0) || !std::isfinite(s.theta_n) ||
           !std::isfinite(s.theta_hat);
}

}  // namespace

void validate(const SimConfig& cfg) {
    if (cfg.n < 2) throw std::domain_error("simulation needs n >= 2");
    if (cfg.fine_factor < 1) throw std::domain_error("fine factor L must be >= 1");
    if (cfg.replicates < 1) throw std::domain_error("replicates must be >= 1");
    if (cfg.fine_steps() > kMaxFineSteps) throw std::domain_error("fine grid L*n is too large");
    if (cfg.replicates >= (1L << kRedrawShift)) throw std::domain_error("too many replicates");
}

CoupledSample coupled_from_increments(int n, int fine_factor, std::span<const double> dW1,
                                      std::span<const double> dW2) {
    if (n < 2 || fine_factor < 1) throw std::domain_error("need n >= 2 and L >= 1");
    const std::size_t fine = static_cast<std::size_t>(n) * static_cast<std::size_t>(fine_factor);
    if (dW1.size() != fine || dW2.size() != fine)
        throw std::invalid_argument("expected " + std::to_string(fine) + " increments per path");
    return accumulate(n, fine_factor, [&](long i) {
        return std::pair{dW1[static_cast<std::size_t>(i)], dW2[static_cast<std::size_t>(i)]};
    });
}

CoupledSample sample_coupled(const SimConfig& cfg, long replicate, int* redraws) {
    validate(cfg);
    if (replicate < 0) throw std::domain_error("replicate index must be >= 0");
    const std::uint64_t base = static_cast<std::uint64_t>(cfg.antithetic ? replicate / 2 : replicate);
    const double sign2 = (cfg.antithetic && replicate % 2 == 1) ? -1.0 : 1.0;
    const double sd = 1.0 / std::sqrt(static_cast<double>(cfg.fine_steps()));
    constexpr long kBuffer = 2048;  // normals per refill, even
    std::vector<double> buffer(kBuffer);
    for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
        NormalStream rng(cfg.seed, base | (static_cast<std::uint64_t>(attempt) << kRedrawShift));
        long cursor = kBuffer;
        // Step i takes normals 2i (W1) and 2i+1 (W2) of the stream.
        const CoupledSample s = accumulate(cfg.n, cfg.fine_factor, [&](long) {
            if (cursor == kBuffer) {
                rng.fill(buffer);
                cursor = 0;
            }
            const double d1 = sd * buffer[static_cast<std::size_t>(cursor)];
            const double d2 = sign2 * sd * buffer[static_cast<std::size_t>(cursor + 1)];
            cursor += 2;
            return std::pair{d1, d2};
        });
        if (!degenerate(s)) {
            if (redraws) *redraws = attempt;
            return s;
        }
    }
    throw std::runtime_error("repeated degenerate Monte Carlo draws");
}

void RunningStats::add(double x) noexcept {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) noexcept {
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double total = static_cast<double>(count_ + other.count_);
    const double delta = other.mean_ - mean_;
    mean_ += delta * static_cast<double>(other.count_) / total;
    m2_ += other.m2_ + delta * delta * static_cast<double>(count_) * static_cast<double>(other.count_) / total;
    count_ += other.count_;
}

double RunningStats::variance() const noexcept {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
}

double RunningStats::stderr_of_mean() const noexcept {
    return count_ > 1 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
}

MeanEstimate to_estimate(const RunningStats& stats) {
    return {stats.mean(), stats.stderr_of_mean(), stats.count()};
}

std::vector<MeanEstimate> estimate_means(const SimConfig& cfg, const std::vector<SampleFunctional>& functionals,
                                         long* redraws) {
    validate(cfg);
    const long chunks = (cfg.replicates + kChunk - 1) / kChunk;
    const std::size_t k = functionals.size();
    std::vector<std::vector<RunningStats>> partial(static_cast<std::size_t>(chunks), std::vector<RunningStats>(k));
    std::vector<long> chunk_redraws(static_cast<std::size_t>(chunks), 0);
    parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
        const long begin = static_cast<long>(c) * kChunk;
        const long end = std::min(cfg.replicates, begin + kChunk);
        auto& stats = partial[c];
        for (long r = begin; r < end; ++r) {
            int extra = 0;
            const CoupledSample s = sample_coupled(cfg, r, &extra);
            chunk_redraws[c] += extra;
            for (std::size_t i = 0; i < k; ++i) stats[i].add(functionals[i](s));
        }
    });
    std::vector<RunningStats> merged(k);
    long total_redraws = 0;
    for (long c = 0; c < chunks; ++c) {
        for (std::size_t i = 0; i < k; ++i) merged[i].merge(partial[static_cast<std::size_t>(c)][i]);
        total_redraws += chunk_redraws[static_cast<std::size_t>(c)];
    }
    if (redraws) *redraws = total_redraws;
    std::vector<MeanEstimate> out;
    out.reserve(k);
    for (const auto& s : merged) out.push_back(to_estimate(s));
    return out;
}

MeanEstimate estimate_l1_distance(const SimConfig& cfg) {
    if (cfg.replicates < 100) throw std::domain_error("L1 estimate needs at least 100 replicates");
    return estimate_means(cfg, {[](const CoupledSample& s) { return std::fabs(s.theta_n - s.theta_hat); }}).front();
}

DifferenceVariances estimate_difference_variances(const SimConfig& cfg) {
    if (cfg.fine_factor < 200) throw std::domain_error("difference variances need a fine factor L >= 200");
    const auto est = estimate_means(cfg, {
                                             [](const CoupledSample& s) { return (s.A_n - s.A_hat) * (s.A_n - s.A_hat); },
                                             [](const CoupledSample& s) { return (s.B_n - s.B_hat) * (s.B_n - s.B_hat); },
                                             [](const CoupledSample& s) { return (s.C_n - s.C_hat) * (s.C_n - s.C_hat); },
                                             [](const CoupledSample& s) { return s.A_n * s.A_n; },
                                         });
    return {est[0], est[1], est[2], est[3]};
}

RateStudy rate_study(const std::vector<int>& n_list, const SimConfig& base, double C5) {
    if (n_list.size() < 2) throw std::domain_error("a rate study needs at least two walk lengths");
    RateStudy study;
    for (int n : n_list) {
        SimConfig cfg = base;
        cfg.n = n;
        RatePoint p;
        p.n = n;
        p.l1 = estimate_l1_distance(cfg);
        p.bound = C5 / static_cast<double>(n);
        p.allowance = 2.0 / static_cast<double>(cfg.fine_factor) * p.l1.mean;
        p.within_bound = p.l1.mean <= p.bound + 3.0 * p.l1.stderr + p.allowance;
        study.points.push_back(p);
    }
    const double k = static_cast<double>(study.points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& p : study.points) {
        mx += std::log(static_cast<double>(p.n)) / k;
        my += std::log(p.l1.mean) / k;
    }
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : study.points) {
        const double dx = std::log(static_cast<double>(p.n)) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p.l1.mean) - my);
    }
    study.slope = sxy / sxx;
    study.intercept = my - study.slope * mx;
    double var = 0.0;
    for (const auto& p : study.points) {
        const double dx = std::log(static_cast<double>(p.n)) - mx;
        const double rel = p.l1.stderr / p.l1.mean;  // stderr of log mean
        var += (dx / sxx) * (dx / sxx) * rel * rel;
    }
    study.slope_stderr = std::sqrt(var);
    return study;
}

void write_samples_csv(std::ostream& out, const SimConfig& cfg) {
    validate(cfg);
    out << "A_n,B_n,C_n,A,B,C,theta_n,theta\r\n";
    char line[512];
    for (long r = 0; r < cfg.replicates; ++r) {
        const CoupledSample s = sample_coupled(cfg, r);
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\r\n", s.A_n, s.B_n, s.C_n,
                      s.A_hat, s.B_hat, s.C_hat, s.theta_n, s.theta_hat);
        out << line;
    }
}

}  // namespace yule
