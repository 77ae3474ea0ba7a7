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
#include <random>
#include <stdexcept>

#include "yule/kernel.hpp"
#include "yule/mgf.hpp"

using namespace yule;

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

MgfPoint random_point(std::mt19937_64& gen, double scale) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double s11 = scale * u(gen);
    const double s22 = scale * u(gen);
    const double s12 = (2.0 * u(gen) - 1.0) * std::sqrt(s11 * s22);
    return {s11, s12, s22};
}

}  // namespace

TEST_CASE("alpha and beta") {
    auto ab = alpha_beta({3.0, 0.0, 3.0});
    CHECK(ab.alpha == doctest::Approx(-3.0));
    CHECK(ab.beta == doctest::Approx(-3.0));
    ab = alpha_beta({1.0, 0.0, 4.0});
    CHECK(ab.alpha == doctest::Approx(-4.0));
    CHECK(ab.beta == doctest::Approx(-1.0));
    ab = alpha_beta({1.0, 1.0, 1.0});
    CHECK(ab.alpha == doctest::Approx(-2.0));
    CHECK(ab.beta == 0.0);
    ab = alpha_beta({0.0, 0.0, 0.0});
    CHECK(ab.alpha == 0.0);
    CHECK(ab.beta == 0.0);

    std::mt19937_64 gen(7);
    for (int i = 0; i < 500; ++i) {
        const auto p = random_point(gen, 100.0);
        const auto r = alpha_beta(p);
        CHECK(r.alpha <= r.beta);
        CHECK(r.beta <= 0.0);
        CHECK(std::abs(r.alpha + r.beta + p.s11 + p.s22) <= 1e-12 * (p.s11 + p.s22));
        CHECK(std::abs(r.alpha * r.beta - (p.s11 * p.s22 - p.s12 * p.s12)) <= 1e-12 * (1.0 + p.s11 * p.s22));
    }
}

TEST_CASE("mgf domain checks") {
    CHECK_THROWS_AS(validate({-1.0, 0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(validate({1.0, 0.0, -1e-3}), std::domain_error);
    CHECK_THROWS_AS(validate({1.0, 1.5, 1.0}), std::domain_error);
    CHECK_THROWS_AS(phi_n(5, {1.0, 2.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(phi_continuous({std::nan(""), 0.0, 1.0}), std::domain_error);
    CHECK_NOTHROW(validate({2.0, std::sqrt(2.0 * 3.0), 3.0}));
    CHECK_THROWS_AS(phi_B(-0.5), std::domain_error);
    CHECK_THROWS_AS(phi_Bn(5, -0.5), std::domain_error);
}

TEST_CASE("mgf known values") {
    for (int n : {2, 3, 10, 100}) {
        CHECK(phi_n(n, {0.0, 0.0, 0.0}) == 1.0);
    }
    CHECK(phi_continuous({0.0, 0.0, 0.0}) == 1.0);
    // n = 2: d_2(lambda) = 1 - lambda / 4.
    CHECK(phi_n(2, {4.0, 0.0, 4.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(phi_n(2, {1.0, 1.0, 3.0}) == doctest::Approx(4.0 / std::sqrt(34.0)).epsilon(1e-14));
    CHECK(phi_Bn(2, 2.0) == doctest::Approx(1.0 / std::sqrt(1.5)).epsilon(1e-15));
    CHECK(phi_B(0.0) == 1.0);
    // mpmath, 30 digits: (sinh(4)/4)^(-1/2)
    CHECK(rel_diff(phi_B(8.0), 0.38285020739639469) < 1e-14);
}

TEST_CASE("characteristic polynomial and spectral routes agree") {
    std::mt19937_64 gen(11);
    for (int n : {3, 10, 57, 240}) {
        const KernelContext ctx(n, BuildMode::spectral);
        for (int i = 0; i < 60; ++i) {
            const auto p = random_point(gen, i < 30 ? 5.0 : 400.0);
            CAPTURE(n);
            CHECK(rel_diff(phi_n(n, p), phi_n_spectral(ctx, p)) < 1e-10);
            CHECK(rel_diff(phi_n(ctx, p), phi_n(n, p)) < 1e-10);
        }
    }
}

TEST_CASE("mgf symmetry, range and monotonicity") {
    std::mt19937_64 gen(3);
    for (int n : {4, 25, 300}) {
        for (int i = 0; i < 100; ++i) {
            const auto p = random_point(gen, 50.0);
            const double v = phi_n(n, p);
            CHECK(v > 0.0);
            CHECK(v <= 1.0);
            CHECK(v == doctest::Approx(phi_n(n, {p.s22, p.s12, p.s11})).epsilon(1e-14));
            CHECK(v == doctest::Approx(phi_n(n, {p.s11, -p.s12, p.s22})).epsilon(1e-14));
            double prev = 1.0;
            for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
                const double w = phi_n(n, {t * p.s11, t * p.s12, t * p.s22});
                CHECK(w <= prev * (1.0 + 1e-14));
                prev = w;
            }
        }
    }
}

TEST_CASE("continuous mgf on the diagonal axes") {
    for (double a : {0.0, 0.3, 2.0, 17.0, 900.0}) {
        for (double b : {0.0, 1.0, 45.0}) {
            const double expected = std::exp(-0.5 * (log_sinhc(std::sqrt(a)) + log_sinhc(std::sqrt(b))));
            CHECK(rel_diff(phi_continuous({a, 0.0, b}), expected) < 1e-12);
        }
    }
}

TEST_CASE("discrete mgf approaches the continuous one") {
    const int n = 2000;
    std::mt19937_64 gen(5);
    for (int i = 0; i < 20; ++i) {
        const auto p = random_point(gen, 30.0);
        const MgfPoint scaled{p.s11 / n, p.s12 / n, p.s22 / n};
        CHECK(rel_diff(phi_n(n, scaled), phi_continuous(p)) < 1e-3);
    }
}

TEST_CASE("sinhc") {
    CHECK(sinhc(0.0) == 1.0);
    for (double x : {1e-8, 5e-3, 9.99e-3, 1.001e-2, 0.3, 3.0, 19.0, 21.0}) {
        CHECK(rel_diff(sinhc(x), std::sinh(x) / x) < 1e-14);
        CHECK(std::abs(log_sinhc(x) - std::log(std::sinh(x) / x)) < 1e-14 * (1.0 + std::log(std::sinh(x) / x)));
    }
    CHECK(log_sinhc(1e4) == doctest::Approx(1e4 - std::log(2e4)).epsilon(1e-15));
}

TEST_CASE("Laplace transform of B_n") {
    for (int n : {11, 50}) {
        const KernelContext ctx(n, BuildMode::explicit_formula);
        for (double s : {0.0, 0.5, 4.0, 40.0}) {
            CHECK(rel_diff(phi_Bn(ctx, s), phi_Bn(n, s)) < 1e-12);
            CHECK(rel_diff(phi_Bn(n, s), phi_n(n, {2.0 * s / n, 0.0, 0.0})) < 1e-14);
        }
    }
    for (int n : {500, 1000}) {
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double s = 0.25 * i;
            worst = std::max(worst, std::abs(phi_Bn(n, s) - phi_B(s)));
        }
        CHECK(worst <= 0.01);
    }
}
