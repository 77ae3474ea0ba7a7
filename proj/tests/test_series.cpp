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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "yule/kernel.hpp"
#include "yule/mgf.hpp"
#include "yule/moments.hpp"
#include "yule/series.hpp"

using namespace yule;

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("truncated series arithmetic") {
    const TruncatedSeries a(std::vector<double>{1.0, 1.0, 0.0});
    const TruncatedSeries b(std::vector<double>{1.0, -1.0, 0.0});
    const auto prod = series_mul(a, b);
    CHECK(prod[0] == 1.0);
    CHECK(prod[1] == 0.0);
    CHECK(prod[2] == -1.0);

    const auto e = series_exp(TruncatedSeries(4));
    CHECK(e[0] == 1.0);
    for (int p = 1; p <= 4; ++p) CHECK(e[p] == 0.0);

    const auto h = series_powneghalf(TruncatedSeries(std::vector<double>{1.0, 2.0, 0.0}));
    CHECK(h[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(h[1] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(h[2] == doctest::Approx(1.5).epsilon(1e-15));

    const auto sum = series_add(a, series_scale(b, 2.0));
    CHECK(sum[0] == 3.0);
    CHECK(sum[1] == -1.0);

    CHECK(TruncatedSeries::constant(2.5, 3).order() == 3);
    CHECK(TruncatedSeries::constant(2.5, 3)[0] == 2.5);

    CHECK_THROWS_AS(series_mul(a, TruncatedSeries(3)), std::invalid_argument);
    CHECK_THROWS_AS(series_add(a, TruncatedSeries(1)), std::invalid_argument);
    CHECK_THROWS_AS(series_log(TruncatedSeries(std::vector<double>{0.0, 1.0})), std::domain_error);
    CHECK_THROWS_AS(series_powneghalf(TruncatedSeries(std::vector<double>{-1.0, 1.0})), std::domain_error);
    CHECK_THROWS_AS(TruncatedSeries(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("exp and log are inverse") {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> c(9);
        for (auto& v : c) v = u(gen);
        const TruncatedSeries a(c);
        const auto back = series_log(series_exp(a));
        for (int p = 0; p <= 8; ++p) CHECK(std::abs(back[p] - a[p]) < 1e-12);
        // (exp(a))^{-1/2} = exp(-a/2)
        const auto lhs = series_powneghalf(series_exp(a));
        const auto rhs = series_exp(series_scale(a, -0.5));
        for (int p = 0; p <= 8; ++p) CHECK(std::abs(lhs[p] - rhs[p]) < 1e-12 * (1.0 + std::abs(rhs[p])));
    }
}

TEST_CASE("log D coefficients for n = 3") {
    // Eigenvalues 1/3 and 1/9; at (s11, s22) = (1, 2):
    // c = 20/9 and 110/81, lambda^2 / c = 1/20 and 1/110.
    const KernelContext ctx(3, BuildMode::explicit_formula);
    const auto L = log_D_series(ctx, 1.0, 2.0, 3);
    CHECK(L[0] == doctest::Approx(std::log(20.0 / 9.0) + std::log(110.0 / 81.0)).epsilon(1e-14));
    CHECK(L[1] == doctest::Approx(-(1.0 / 20.0 + 1.0 / 110.0)).epsilon(1e-14));
    CHECK(L[2] == doctest::Approx(-(1.0 / 400.0 + 1.0 / 12100.0) / 2.0).epsilon(1e-14));
    CHECK(L[3] == doctest::Approx(-(1.0 / 8000.0 + 1.0 / 1331000.0) / 3.0).epsilon(1e-14));

    // phi'' at s12 = 0 is phi * sum(lambda^2 / c); at the origin it is tr(K^2) = 1/9 + 1/81.
    CHECK(dphi_ds12_at_zero(ctx, 0.0, 0.0, 2) == doctest::Approx(10.0 / 81.0).epsilon(1e-14));
    CHECK(dphi_ds12_at_zero(ctx, 1.0, 2.0, 3) == 0.0);
    CHECK(dphi_ds12_at_zero(ctx, 1.0, 2.0, 0) == doctest::Approx(phi_n(3, {1.0, 0.0, 2.0})).epsilon(1e-14));
}

TEST_CASE("first coefficient at the origin is minus tr(K^2)") {
    for (int n : {2, 9, 40}) {
        const KernelContext ctx(n, BuildMode::spectral);
        const auto K = build_kernel_matrix(n);
        const auto L = log_D_series(ctx, 0.0, 0.0, 2);
        CHECK(L[0] == 0.0);
        CHECK(rel_diff(-L[1], (K * K).trace()) < 1e-12);
    }
}

TEST_CASE("constant term matches the characteristic polynomial") {
    for (int n : {5, 50, 700}) {
        const KernelContext ctx(n, BuildMode::explicit_formula);
        for (double s11 : {0.0, 0.1, 3.0, 80.0}) {
            for (double s22 : {0.5, 20.0}) {
                const double expected = -2.0 * std::log(phi_n(n, {s11, 0.0, s22}));
                CHECK(std::abs(log_D_series(ctx, s11, s22, 1)[0] - expected) < 1e-11 * (1.0 + expected));
            }
        }
    }
}

TEST_CASE("second derivative matches a finite difference in s12") {
    std::mt19937_64 gen(19);
    std::uniform_real_distribution<double> u(0.01, 20.0);
    const double h = 1e-3;
    for (int n : {5, 20}) {
        const KernelContext ctx(n, BuildMode::explicit_formula);
        for (int i = 0; i < 25; ++i) {
            const double s11 = u(gen);
            const double s22 = u(gen);
            const double fd = (phi_n(n, {s11, h, s22}) - 2.0 * phi_n(n, {s11, 0.0, s22}) + phi_n(n, {s11, -h, s22})) /
                              (h * h);
            CAPTURE(s11);
            CAPTURE(s22);
            CHECK(rel_diff(dphi_ds12_at_zero(ctx, s11, s22, 2), fd) < 1e-5);
        }
    }
}

TEST_CASE("series and closed-form second-moment integrands agree") {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> u(0.0, 60.0);
    for (int n : {3, 10, 50}) {
        const KernelContext ctx(n, BuildMode::explicit_formula);
        for (int i = 0; i < 40; ++i) {
            const double s11 = u(gen);
            const double s22 = s11 + 0.05 + u(gen);
            CHECK(rel_diff(second_moment_integrand_closed(n, s11, s22), moment_integrand(ctx, s11, s22, 2)) < 1e-8);
        }
        // Diagonal: the divided difference approached symmetrically.
        for (double s : {0.5, 4.0, 30.0}) {
            const double h = 1e-4;
            CHECK(rel_diff(second_moment_integrand_closed(n, s - h, s + h), moment_integrand(ctx, s, s, 2)) < 1e-5);
        }
    }
    for (int i = 0; i < 20; ++i) {
        const double s11 = u(gen);
        const double s22 = s11 + 0.05 + u(gen);
        CHECK(rel_diff(second_moment_integrand_closed_continuous(s11, s22), moment_integrand_continuous(s11, s22, 2)) <
              1e-8);
    }
}

TEST_CASE("phi coefficients in s12^2 are nonnegative") {
    std::mt19937_64 gen(29);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int n : {10, 50}) {
        const KernelContext ctx(n, BuildMode::explicit_formula);
        for (int i = 0; i < 50; ++i) {
            const auto L = log_D_series(ctx, u(gen), u(gen), 8);
            for (int p = 0; p <= 8; ++p) CHECK(phi_u_coefficient(L, p) >= 0.0);
        }
    }
    for (int i = 0; i < 50; ++i) {
        const auto L = log_D_series_continuous(u(gen), u(gen), 8);
        for (int p = 0; p <= 8; ++p) CHECK(phi_u_coefficient(L, p) >= 0.0);
    }
}

TEST_CASE("continuous log D series against a long direct sum") {
    // Direct sum over k < 400000 plus the leading tail estimate.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    for (auto [s11, s22] : {std::pair{0.0, 0.0}, std::pair{1.0, 2.0}, std::pair{30.0, 250.0}, std::pair{4000.0, 10.0}}) {
        const auto L = log_D_series_continuous(s11, s22, 3);
        const int kmax = 400000;
        double direct[4] = {0.0, 0.0, 0.0, 0.0};
        for (int k = kmax - 1; k >= 1; --k) {
            const double lam = 1.0 / (pi2 * double(k) * k);
            const double c = 1.0 + (s11 + s22) * lam + s11 * s22 * lam * lam;
            const double r = lam * lam / c;
            direct[0] += std::log(c);
            for (int p = 1; p <= 3; ++p) direct[p] -= std::pow(r, p) / p;
        }
        // Tail of the first-order terms: sum_{k >= K} lambda_k (s11 + s22) ~ (s11 + s22) / (pi^2 (K - 1/2)).
        direct[0] += (s11 + s22) / (pi2 * (kmax - 0.5));
        direct[1] -= 1.0 / (3.0 * pi2 * pi2 * std::pow(kmax - 0.5, 3));
        CAPTURE(s11);
        CAPTURE(s22);
        CHECK(std::abs(L[0] - direct[0]) < 1e-10 * (1.0 + direct[0]));
        for (int p = 1; p <= 3; ++p) CHECK(rel_diff(L[p], direct[p]) < 1e-9);
        const double expected0 = log_sinhc(std::sqrt(s11)) + log_sinhc(std::sqrt(s22));
        CHECK(std::abs(L[0] - expected0) < 1e-12 * (1.0 + expected0));
    }
}

TEST_CASE("continuous first coefficient has a closed form") {
    // sum_k 1 / (k^2 pi^2 + a) = (sqrt(a) coth(sqrt(a)) - 1) / (2a); partial fractions give
    // sum_k lambda^2 / c = (h(s11) - h(s22)) / (s22 - s11).
    auto h = [](double a) {
        const double r = std::sqrt(a);
        return (r / std::tanh(r) - 1.0) / (2.0 * a);
    };
    for (auto [s11, s22] : {std::pair{0.5, 3.0}, std::pair{10.0, 200.0}, std::pair{1.0, 1.5}}) {
        const auto L = log_D_series_continuous(s11, s22, 1);
        CHECK(rel_diff(-L[1], (h(s11) - h(s22)) / (s22 - s11)) < 1e-10);
    }
    CHECK(dphi_ds12_at_zero_continuous(0.0, 0.0, 2) == doctest::Approx(1.0 / 90.0).epsilon(1e-12));
    CHECK(dphi_ds12_at_zero_continuous(3.0, 5.0, 5) == 0.0);
}
