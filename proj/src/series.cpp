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

#include "yule/series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "yule/mgf.hpp"

namespace yule {

namespace {

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order())
        throw std::invalid_argument("series orders differ: " + std::to_string(a.order()) + " vs " +
                                    std::to_string(b.order()));
}

void require_args(double s11, double s22, int order) {
    if (!(s11 >= 0.0) || !(s22 >= 0.0)) throw std::domain_error("log_D_series needs s11, s22 >= 0");
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
}

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

}  // namespace

TruncatedSeries::TruncatedSeries(int order) {
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
    coeffs_.assign(static_cast<std::size_t>(order) + 1, 0.0);
}

TruncatedSeries::TruncatedSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("series needs at least one coefficient");
}

TruncatedSeries TruncatedSeries::constant(double c, int order) {
    TruncatedSeries s(order);
    s[0] = c;
    return s;
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_order(a, b);
    TruncatedSeries r(a.order());
    for (int p = 0; p <= a.order(); ++p) r[p] = a[p] + b[p];
    return r;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_order(a, b);
    const int order = a.order();
    TruncatedSeries r(order);
    for (int p = 0; p <= order; ++p) {
        double acc = 0.0;
        for (int j = 0; j <= p; ++j) acc += a[j] * b[p - j];
        r[p] = acc;
    }
    return r;
}

TruncatedSeries series_scale(const TruncatedSeries& a, double factor) {
    TruncatedSeries r(a.order());
    for (int p = 0; p <= a.order(); ++p) r[p] = factor * a[p];
    return r;
}

TruncatedSeries series_exp(const TruncatedSeries& a) {
    // b' = a' b  =>  k b_k = sum_{j=1}^{k} j a_j b_{k-j}
    const int order = a.order();
    TruncatedSeries b(order);
    b[0] = std::exp(a[0]);
    for (int k = 1; k <= order; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += j * a[j] * b[k - j];
        b[k] = acc / k;
    }
    return b;
}

TruncatedSeries series_log(const TruncatedSeries& a) {
    if (!(a[0] > 0.0)) throw std::domain_error("series_log needs a positive constant term");
    // a b' = a'  =>  a_0 k b_k = k a_k - sum_{j=1}^{k-1} j b_j a_{k-j}
    const int order = a.order();
    TruncatedSeries b(order);
    b[0] = std::log(a[0]);
    for (int k = 1; k <= order; ++k) {
        double acc = k * a[k];
        for (int j = 1; j < k; ++j) acc -= j * b[j] * a[k - j];
        b[k] = acc / (k * a[0]);
    }
    return b;
}

TruncatedSeries series_powneghalf(const TruncatedSeries& a) {
    if (!(a[0] > 0.0)) throw std::domain_error("series_powneghalf needs a positive constant term");
    return series_exp(series_scale(series_log(a), -0.5));
}

TruncatedSeries log_D_series(const KernelContext& ctx, double s11, double s22, int order) {
    require_args(s11, s22, order);
    TruncatedSeries r(order);
    double constant = 0.0;
    std::vector<double> power_sums(static_cast<std::size_t>(order) + 1, 0.0);
    for (double l : ctx.eigenvalues()) {
        const double a = std::log1p(s11 * l);
        const double b = std::log1p(s22 * l);
        constant += a + b;
        const double ratio = l * l / ((1.0 + s11 * l) * (1.0 + s22 * l));
        double rp = ratio;
        for (int p = 1; p <= order; ++p) {
            power_sums[static_cast<std::size_t>(p)] += rp;
            rp *= ratio;
        }
    }
    r[0] = constant;
    for (int p = 1; p <= order; ++p) r[p] = -power_sums[static_cast<std::size_t>(p)] / p;
    return r;
}

TruncatedSeries log_D_series_continuous(double s11, double s22, int order) {
    require_args(s11, s22, order);
    constexpr double pi = std::numbers::pi;
    const double pi2 = pi * pi;
    const int terms = std::max(200, static_cast<int>(std::ceil(10.0 * std::sqrt(std::max(s11, s22)) / pi)));
    std::vector<double> power_sums(static_cast<std::size_t>(order) + 1, 0.0);
    // Smallest terms first.
    for (int k = terms; k >= 1; --k) {
        const double x = pi2 * static_cast<double>(k) * static_cast<double>(k);
        const double ratio = 1.0 / ((x + s11) * (x + s22));
        double rp = ratio;
        for (int p = 1; p <= order; ++p) {
            power_sums[static_cast<std::size_t>(p)] += rp;
            rp *= ratio;
        }
    }
    // sum_{k>K} f(k) ~ int_{K+1/2}^inf f, with
    // f(x)^{-1/p} = pi^4 x^4 (1 + (a+b)/(pi^2 x^2) + ab/(pi^4 x^4)).
    const double xh = static_cast<double>(terms) + 0.5;
    const double e1 = (s11 + s22) / pi2;
    const double e2 = s11 * s22 / (pi2 * pi2);
    for (int p = 1; p <= order; ++p) {
        const double q = 4.0 * p;
        const double c1 = -p * e1;
        const double c2 = 0.5 * p * (p + 1) * e1 * e1 - p * e2;
        const double tail = std::pow(pi, -q) * (std::pow(xh, 1.0 - q) / (q - 1.0) +
                                                c1 * std::pow(xh, -1.0 - q) / (q + 1.0) +
                                                c2 * std::pow(xh, -3.0 - q) / (q + 3.0));
        power_sums[static_cast<std::size_t>(p)] += tail;
    }
    TruncatedSeries r(order);
    r[0] = log_sinhc(std::sqrt(s11)) + log_sinhc(std::sqrt(s22));
    for (int p = 1; p <= order; ++p) r[p] = -power_sums[static_cast<std::size_t>(p)] / p;
    return r;
}

double phi_u_coefficient(const TruncatedSeries& log_d, int p) {
    return series_exp(series_scale(log_d, -0.5))[p];
}

double dphi_ds12_at_zero(const KernelContext& ctx, double s11, double s22, int m) {
    if (m < 0) throw std::invalid_argument("derivative order must be >= 0");
    if (m % 2 == 1) return 0.0;
    const int p = m / 2;
    return factorial(m) * phi_u_coefficient(log_D_series(ctx, s11, s22, p), p);
}

double dphi_ds12_at_zero_continuous(double s11, double s22, int m) {
    if (m < 0) throw std::invalid_argument("derivative order must be >= 0");
    if (m % 2 == 1) return 0.0;
    const int p = m / 2;
    return factorial(m) * phi_u_coefficient(log_D_series_continuous(s11, s22, p), p);
}

}  // namespace yule
