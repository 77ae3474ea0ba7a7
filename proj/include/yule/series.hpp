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

#include <span>
#include <vector>

#include "yule/kernel.hpp"

namespace yule {

/// Taylor polynomial sum_{p=0}^{P} c_p u^p with products truncated at order P.
class TruncatedSeries {
public:
    /// Zero series of order P.
    explicit TruncatedSeries(int order);
    /// Order is coeffs.size() - 1.
    explicit TruncatedSeries(std::vector<double> coeffs);

    static TruncatedSeries constant(double c, int order);

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    double operator[](int p) const { return coeffs_.at(static_cast<std::size_t>(p)); }
    double& operator[](int p) { return coeffs_.at(static_cast<std::size_t>(p)); }
    std::span<const double> coeffs() const noexcept { return coeffs_; }

private:
    std::vector<double> coeffs_;
};

// Binary operations require equal orders (std::invalid_argument otherwise).
TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_scale(const TruncatedSeries& a, double factor);
TruncatedSeries series_exp(const TruncatedSeries& a);
/// Constant term must be > 0 (std::domain_error).
TruncatedSeries series_log(const TruncatedSeries& a);
/// a^{-1/2} = exp(-log(a)/2). Constant term must be > 0.
TruncatedSeries series_powneghalf(const TruncatedSeries& a);

/// Taylor coefficients in u = s12^2 of log D(u), D(u) = prod_j (c_j - lambda_j^2 u),
/// c_j = 1 + (s11+s22) lambda_j + s11 s22 lambda_j^2.
TruncatedSeries log_D_series(const KernelContext& ctx, double s11, double s22, int order);

/// Same for the limiting spectrum lambda_k = 1/(k pi)^2, k >= 1. The first
/// max(200, ~10 sqrt(s)/pi) terms are summed; the remainder is replaced by
/// an expansion of its integral. The constant term is exact.
TruncatedSeries log_D_series_continuous(double s11, double s22, int order);

/// d^m phi / d s12^m at (s11, 0, s22) = m! * [u^{m/2}] exp(-log D / 2).
/// Odd m gives exactly 0.
double dphi_ds12_at_zero(const KernelContext& ctx, double s11, double s22, int m);
double dphi_ds12_at_zero_continuous(double s11, double s22, int m);

/// u^P coefficient of exp(-log D / 2), i.e. dphi_ds12_at_zero / (2P)!.
double phi_u_coefficient(const TruncatedSeries& log_d, int p);

}  // namespace yule
