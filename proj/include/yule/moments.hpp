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

#include <functional>
#include <optional>
#include <string_view>

#include "yule/kernel.hpp"
#include "yule/quadrature.hpp"

namespace yule {

enum class MomentBackend {
    series_spectral,       ///< derivative in s12 by truncated series over the spectrum
    closed_form_theorem2,  ///< m = 2 only: divided difference of d_n'/d_n
};

std::string_view to_string(MomentBackend backend);
MomentBackend moment_backend_from_string(std::string_view name);

/// Which part of [0,inf)^2 is integrated. The integrand is symmetric, so
/// the half domain s11 <= s22 doubled gives the same value.
enum class MomentDomain { full, half_doubled };

struct MomentRequest {
    std::optional<int> n;  ///< empty: continuous limit
    int m = 2;
    double rel_tol = 1e-7;
    long max_subdivisions = 2'000'000;
    MomentBackend backend = MomentBackend::series_spectral;
    MomentDomain domain = MomentDomain::full;
    bool allow_high_order = false;  ///< permit m > 16
};

struct MomentResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long cells_used = 0;
    MomentBackend backend = MomentBackend::series_spectral;
    bool exact = false;  ///< short-circuited (m = 0 or odd m)
};

/// E[theta_n^m] (or E[theta^m] for the continuous limit) as
/// (m! / (2^m Gamma(m/2)^2)) * int int s11^{m/2-1} s22^{m/2-1} [u^{m/2}] phi ds11 ds22.
/// m = 0 gives 1 and odd m gives 0, both exactly. Throws ConvergenceError
/// (carrying the partial value) when the cubature budget runs out.
MomentResult moment(const MomentRequest& req);
/// Uses the given spectrum instead of the shared explicit-formula one.
MomentResult moment(const MomentRequest& req, const KernelContext& ctx);

/// E[theta_n^2] from d_n(-s) and the divided difference of d_n'/d_n; the
/// band |s11 - s22| < 1e-4 (1 + s11) uses the series integrand.
MomentResult second_moment_closed_form(const KernelContext& ctx, double rel_tol = 1e-7,
                                       long max_subdivisions = 2'000'000);
MomentResult second_moment_closed_form_continuous(double rel_tol = 1e-7, long max_subdivisions = 2'000'000);

/// Integrand of the m-th moment at (s11, s22), including the constant
/// m! / (2^m Gamma(m/2)^2).
double moment_integrand(const KernelContext& ctx, double s11, double s22, int m);
double moment_integrand_continuous(double s11, double s22, int m);
/// m = 2 integrand assembled from the closed form.
double second_moment_integrand_closed(int n, double s11, double s22);
double second_moment_integrand_closed_continuous(double s11, double s22);

/// E[X^{-m}] = (1/(m-1)!) int_0^inf s^{m-1} mgf(s) ds for X > 0 with Laplace
/// transform mgf. Throws DivergenceError when the integral does not converge.
double negative_moment(const std::function<double(double)>& mgf, int m, double rel_tol = 1e-9);
QuadResult negative_moment_detail(const std::function<double(double)>& mgf, int m, double rel_tol = 1e-9);

}  // namespace yule
