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

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

namespace yule {

struct SimConfig {
    int n = 10;              ///< coarse walk length
    int fine_factor = 200;   ///< L; fine grid has N = L n steps
    long replicates = 1000;  ///< R
    std::uint64_t seed = 0;
    bool antithetic = false;  ///< odd replicates reuse the previous paths with W2 negated

    long fine_steps() const { return static_cast<long>(n) * fine_factor; }
};

/// Throws std::domain_error on n < 2, L < 1, R < 1 or an oversized grid.
void validate(const SimConfig& cfg);

/// One draw of the coupled discrete and continuous quadratic forms.
/// A_n, B_n, C_n: the bridge-kernel double sums over the n coarse increments.
/// A_hat, B_hat, C_hat: left-endpoint Riemann sums on the fine grid of
/// int W1 W2 - int W1 int W2, int W1^2 - (int W1)^2, int W2^2 - (int W2)^2.
struct CoupledSample {
    double A_n, B_n, C_n;
    double A_hat, B_hat, C_hat;
    double theta_n, theta_hat;
};

/// Deterministic core: fine increments dW1, dW2 (length L n) to the sample.
CoupledSample coupled_from_increments(int n, int fine_factor, std::span<const double> dW1,
                                      std::span<const double> dW2);

/// Sample for replicate r, drawn from the stream keyed by (seed, r).
/// Degenerate draws (a non-positive B or C) are redrawn from a fresh stream;
/// `redraws` receives the number of such events when non-null.
CoupledSample sample_coupled(const SimConfig& cfg, long replicate, int* redraws = nullptr);

/// Welford accumulator with Chan's pairwise merge.
class RunningStats {
public:
    void add(double x) noexcept;
    void merge(const RunningStats& other) noexcept;
    long count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept;  ///< unbiased sample variance
    double stderr_of_mean() const noexcept;

private:
    long count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct MeanEstimate {
    double mean = 0.0;
    double stderr = 0.0;
    long count = 0;
};

MeanEstimate to_estimate(const RunningStats& stats);

using SampleFunctional = std::function<double(const CoupledSample&)>;

/// Sample means of each functional over the R replicates. Replicates are
/// processed in fixed-size chunks (in parallel) and merged in chunk order,
/// so results do not depend on the worker count.
std::vector<MeanEstimate> estimate_means(const SimConfig& cfg, const std::vector<SampleFunctional>& functionals,
                                         long* redraws = nullptr);

/// Mean and standard error of |theta_n - theta_hat|. Needs R >= 100.
MeanEstimate estimate_l1_distance(const SimConfig& cfg);

struct DifferenceVariances {
    MeanEstimate var_A;       ///< E[(A_n - A)^2]
    MeanEstimate var_B;       ///< E[(B_n - B)^2]
    MeanEstimate var_C;       ///< E[(C_n - C)^2]
    MeanEstimate A_n_second;  ///< E[A_n^2]
};

/// Needs L >= 200 so that the O(1/N) grid bias stays small.
DifferenceVariances estimate_difference_variances(const SimConfig& cfg);

struct RatePoint {
    int n = 0;
    MeanEstimate l1;          ///< E|theta_n - theta_hat|
    double bound = 0.0;       ///< C5 / n
    double allowance = 0.0;   ///< grid-bias allowance (2/L) * mean
    bool within_bound = false;  ///< mean <= bound + 3 stderr + allowance
};

struct RateStudy {
    std::vector<RatePoint> points;
    double slope = 0.0;  ///< least-squares slope of log mean against log n
    double intercept = 0.0;
    double slope_stderr = 0.0;  ///< delta-method standard error from the per-point stderrs
};

/// Runs estimate_l1_distance for each n (other settings from base) and
/// regresses log E|theta_n - theta_hat| on log n.
RateStudy rate_study(const std::vector<int>& n_list, const SimConfig& base, double C5);

/// Header plus one row per replicate: A_n,B_n,C_n,A,B,C,theta_n,theta.
void write_samples_csv(std::ostream& out, const SimConfig& cfg);

}  // namespace yule
