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
#include <stdexcept>

#include "yule/errors.hpp"
#include "yule/kernel.hpp"
#include "yule/mgf.hpp"
#include "yule/moments.hpp"
#include "yule/parallel.hpp"

using namespace yule;

namespace {

MomentResult second(std::optional<int> n, MomentBackend backend = MomentBackend::series_spectral) {
    MomentRequest req;
    req.n = n;
    req.m = 2;
    req.backend = backend;
    return moment(req);
}

double moment_value(int n, int m) {
    MomentRequest req;
    req.n = n;
    req.m = m;
    return moment(req).value;
}

}  // namespace

TEST_CASE("second moments of theta_n") {
    struct Row {
        int n;
        double value;
    };
    // Published table, 6 decimals.
    for (const Row row : {Row{2, 1.0}, Row{5, 0.341109}, Row{10, 0.265140}, Row{20, 0.246645}, Row{50, 0.241501},
                          Row{100, 0.240767}, Row{1000, 0.240525}}) {
        CAPTURE(row.n);
        const auto r = second(row.n);
        CHECK(std::abs(r.value - row.value) <= 5e-6);
        CHECK_FALSE(r.exact);
        CHECK(r.abs_error_estimate <= 1e-7 * r.value);
    }
    CHECK(std::abs(second(std::nullopt).value - 0.240523) <= 5e-6);
}

TEST_CASE("second moments to nine digits") {
    // scipy dblquad over the eigenvalue product form (tests/oracles/second_moment.py).
    CHECK(second(5).value == doctest::Approx(0.3411086320882122).epsilon(2e-8));
    CHECK(second(10).value == doctest::Approx(0.26514002789406876).epsilon(2e-8));
    CHECK(second(std::nullopt).value == doctest::Approx(0.24052253756545042).epsilon(2e-8));
}

TEST_CASE("closed form and series agree") {
    for (std::optional<int> n : {std::optional<int>{3}, std::optional<int>{5}, std::optional<int>{10},
                                 std::optional<int>{50}, std::optional<int>{}}) {
        const double a = second(n).value;
        const double b = second(n, MomentBackend::closed_form_theorem2).value;
        CHECK(std::abs(a - b) <= 1e-7);
    }
}

TEST_CASE("second moment is nonincreasing in n and above the limit") {
    const double limit = second(std::nullopt).value;
    double prev = 2.0;
    for (int n : {2, 3, 5, 10, 20, 50, 100, 200, 500, 1000}) {
        const double v = second(n).value;
        CHECK(v <= prev + 1e-9);
        CHECK(v >= limit - 1e-9);
        prev = v;
    }
}

TEST_CASE("higher moments at n = 50") {
    const double published[] = {0.241501, 0.109961, 0.061465, 0.038257, 0.025485, 0.017803, 0.012885, 0.009586};
    double prev = 1.0;
    for (int k = 1; k <= 8; ++k) {
        const double v = moment_value(50, 2 * k);
        CAPTURE(k);
        CHECK(std::abs(v - published[k - 1]) <= 1e-4);
        CHECK(v > 0.0);
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("trivial orders short-circuit") {
    MomentRequest req;
    req.n = 7;
    req.m = 0;
    auto r = moment(req);
    CHECK(r.value == 1.0);
    CHECK(r.exact);
    for (int m : {1, 3, 5, 15}) {
        req.m = m;
        r = moment(req);
        CHECK(r.value == 0.0);
        CHECK(r.exact);
        CHECK(r.cells_used == 0);
    }
    req.n.reset();
    req.m = 3;
    CHECK(moment(req).value == 0.0);
}

TEST_CASE("invalid moment requests") {
    MomentRequest req;
    req.m = -2;
    CHECK_THROWS_AS(moment(req), std::invalid_argument);
    req.m = 18;
    CHECK_THROWS_AS(moment(req), std::domain_error);
    req.n = 1;
    req.m = 2;
    CHECK_THROWS_AS(moment(req), std::domain_error);
    req.n = 2;
    req.m = 4;
    CHECK_THROWS_AS(moment(req), std::domain_error);
    req.n = 10;
    req.backend = MomentBackend::closed_form_theorem2;
    CHECK_THROWS_AS(moment(req), std::domain_error);
    req.backend = MomentBackend::series_spectral;
    req.rel_tol = 0.0;
    CHECK_THROWS_AS(moment(req), std::invalid_argument);
    CHECK(moment_backend_from_string("closed") == MomentBackend::closed_form_theorem2);
    CHECK(moment_backend_from_string("series_spectral") == MomentBackend::series_spectral);
    CHECK_THROWS_AS(moment_backend_from_string("mc"), std::invalid_argument);
}

TEST_CASE("high orders need an explicit opt-in") {
    MomentRequest req;
    req.n = 10;
    req.m = 18;
    req.allow_high_order = true;
    req.rel_tol = 1e-6;
    const auto r = moment(req);
    CHECK(r.value > 0.0);
    CHECK(r.value < moment_value(10, 16));
}

TEST_CASE("budget exhaustion raises with the partial value") {
    MomentRequest req;
    req.n = 10;
    req.m = 16;
    req.rel_tol = 1e-13;
    req.max_subdivisions = 100;
    try {
        moment(req);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        req.rel_tol = 1e-7;
        req.max_subdivisions = 2'000'000;
        CHECK(e.value() == doctest::Approx(moment(req).value).epsilon(1e-6));
        CHECK(e.cells() > 0);
        CHECK(e.abs_error() > 0.0);
    }
}

TEST_CASE("half domain matches the full domain") {
    for (int m : {2, 4}) {
        MomentRequest req;
        req.n = 10;
        req.m = m;
        req.rel_tol = 1e-9;
        const double full = moment(req).value;
        req.domain = MomentDomain::half_doubled;
        const double half = moment(req).value;
        CHECK(std::abs(full - half) <= 1e-9 * full);
    }
}

TEST_CASE("moments do not depend on how the spectrum was built") {
    MomentRequest req;
    req.n = 20;
    req.m = 4;
    const double a = moment(req, KernelContext(20, BuildMode::explicit_formula)).value;
    const double b = moment(req, KernelContext(20, BuildMode::spectral)).value;
    const double c = moment(req, KernelContext(20, BuildMode::determinant_lu)).value;
    CHECK(std::abs(a - b) <= 1e-9 * a);
    CHECK(std::abs(a - c) <= 1e-9 * a);
    CHECK_THROWS_AS(moment(req, KernelContext(21)), std::invalid_argument);
}

TEST_CASE("moments do not depend on the thread count") {
    MomentRequest req;
    req.n = 30;
    req.m = 6;
    const int saved = thread_cap();
    set_max_threads(1);
    const auto a = moment(req);
    set_max_threads(3);
    const auto b = moment(req);
    set_max_threads(saved);
    CHECK(a.value == b.value);
    CHECK(a.cells_used == b.cells_used);
}

TEST_CASE("negative moments from Laplace transforms") {
    CHECK(negative_moment([](double s) { return std::exp(-s); }, 1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(negative_moment([](double s) { return std::exp(-2.0 * s); }, 3) == doctest::Approx(0.125).epsilon(1e-9));
    // Gamma(3, 1): E[X^-1] = 1/2, E[X^-2] = 1/2.
    auto gamma3 = [](double s) { return std::pow(1.0 + s, -3.0); };
    CHECK(negative_moment(gamma3, 1, 1e-10) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(negative_moment(gamma3, 2, 1e-10) == doctest::Approx(0.5).epsilon(1e-7));
    CHECK_THROWS_AS(negative_moment(gamma3, 3), DivergenceError);
    CHECK_THROWS_AS(negative_moment(gamma3, 0), std::invalid_argument);
}

TEST_CASE("negative moments of B_n and B") {
    // mpmath quadrature, tests/oracles/negative_moments.py.
    auto inv = [](int n) { return negative_moment([n](double s) { return phi_Bn(n, s); }, 1, 1e-10); };
    CHECK(inv(4) == doctest::Approx(24.0988983737).epsilon(1e-9));
    CHECK(inv(11) == doctest::Approx(11.5898744268472).epsilon(1e-10));
    CHECK(inv(50) == doctest::Approx(10.7956291676667).epsilon(1e-10));
    CHECK(negative_moment([](double s) { return phi_B(s); }, 1, 1e-10) ==
          doctest::Approx(10.7582578482015).epsilon(1e-10));
    // With n = 2, 3 the transform decays too slowly.
    CHECK_THROWS_AS(negative_moment([](double s) { return phi_Bn(2, s); }, 1), DivergenceError);
    CHECK_THROWS_AS(negative_moment([](double s) { return phi_Bn(3, s); }, 1), DivergenceError);
}
