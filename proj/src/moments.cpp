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

#include "yule/moments.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "yule/errors.hpp"
#include "yule/kernel_io.hpp"
#include "yule/mgf.hpp"
#include "yule/series.hpp"

namespace yule {

namespace {

constexpr double kDiagonalBand = 1e-4;
constexpr int kMaxDefaultOrder = 16;

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

double moment_constant(int m) {
    const int p = m / 2;
    const double gamma_p = factorial(p - 1);
    return factorial(m) / (std::ldexp(1.0, m) * gamma_p * gamma_p);
}

// Power-law map of each axis: s = scale * (t / (1 - t))^q.
struct AxisMap {
    double scale;
    int q;

    double s(double t) const {
        const double r = t / (1.0 - t);
        return scale * (q == 1 ? r : std::pow(r, q));
    }
    double jacobian(double t) const {
        const double u = 1.0 - t;
        if (q == 1) return scale / (u * u);
        return scale * q * std::pow(t, q - 1) / std::pow(u, q + 1);
    }
};

AxisMap axis_map(std::optional<int> n, double largest_eigenvalue) {
    if (!n) return {std::numbers::pi * std::numbers::pi, 1};
    // Slow algebraic decay of the small-n integrands becomes smooth under q = 2.
    const int q = (*n % 2 == 0 && *n < 20) ? 2 : 1;
    return {1.0 / largest_eigenvalue, q};
}

MomentResult integrate_moment(const std::function<double(double, double)>& integrand, const AxisMap& map,
                              const MomentRequest& req, MomentBackend backend) {
    QuadOptions options;
    options.rel_tol = req.rel_tol;
    options.max_cells = req.max_subdivisions;
    Integrand2D f;
    double factor = 1.0;
    if (req.domain == MomentDomain::full) {
        f = [&](double t1, double t2) {
            const double s11 = map.s(t1);
            const double s22 = map.s(t2);
            if (!std::isfinite(s11) || !std::isfinite(s22)) return 0.0;
            return integrand(s11, s22) * map.jacobian(t1) * map.jacobian(t2);
        };
    } else {
        // Triangle t1 <= t2 via t1 = w t2.
        factor = 2.0;
        f = [&](double w, double t2) {
            const double t1 = w * t2;
            const double s11 = map.s(t1);
            const double s22 = map.s(t2);
            if (!std::isfinite(s11) || !std::isfinite(s22)) return 0.0;
            return integrand(s11, s22) * map.jacobian(t1) * map.jacobian(t2) * t2;
        };
    }
    const QuadResult q = integrate_unit_square(f, options);
    MomentResult r;
    r.value = factor * q.value;
    r.abs_error_estimate = factor * q.abs_error;
    r.cells_used = q.cells;
    r.backend = backend;
    if (!q.converged) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "moment cubature did not reach rel_tol %g within %ld cells", req.rel_tol,
                      req.max_subdivisions);
        throw ConvergenceError(msg, r.value, r.abs_error_estimate, r.cells_used);
    }
    return r;
}

std::optional<MomentResult> short_circuit(const MomentRequest& req) {
    if (req.m < 0) throw std::invalid_argument("moment order must be >= 0");
    if (req.n && *req.n < 2) throw std::domain_error("walk length n must be >= 2");
    if (!(req.rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
    if (req.max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be positive");
    if (req.m > kMaxDefaultOrder && !req.allow_high_order)
        throw std::domain_error("moment orders above 16 are disabled by default");
    if (req.m == 0 || req.m % 2 == 1) {
        MomentResult r;
        r.value = (req.m == 0) ? 1.0 : 0.0;
        r.backend = req.backend;
        r.exact = true;
        return r;
    }
    if (req.n && *req.n == 2 && req.m > 2)
        throw std::domain_error("n = 2 supports only the second moment");
    if (req.backend == MomentBackend::closed_form_theorem2 && req.m != 2)
        throw std::domain_error("the closed-form backend covers m = 2 only");
    return std::nullopt;
}

// Sum_k 1/(k^2 pi^2 + a) = (sqrt(a) coth(sqrt(a)) - 1) / (2a).
double continuous_resolvent_sum(double a) {
    if (a < 1e-2) return 1.0 / 6.0 - a / 90.0 + a * a / 945.0 - a * a * a / 9450.0;
    const double x = std::sqrt(a);
    return (x / std::tanh(x) - 1.0) / (2.0 * a);
}

// The first m/2 coefficients of log D with the constant term taken from d_n.
double series_integrand(const KernelContext& ctx, double s11, double s22, int m) {
    const int p = m / 2;
    TruncatedSeries log_d(p);
    std::array<double, 9> sums{};
    std::vector<double> dynamic_sums;
    double* power_sums = sums.data();
    if (p >= static_cast<int>(sums.size())) {
        dynamic_sums.assign(static_cast<std::size_t>(p) + 1, 0.0);
        power_sums = dynamic_sums.data();
    }
    for (double l : ctx.eigenvalues()) {
        const double ratio = l * l / ((1.0 + s11 * l) * (1.0 + s22 * l));
        double rp = ratio;
        for (int k = 1; k <= p; ++k) {
            power_sums[k] += rp;
            rp *= ratio;
        }
    }
    log_d[0] = log_dn_neg(ctx.n(), s11) + log_dn_neg(ctx.n(), s22);
    for (int k = 1; k <= p; ++k) log_d[k] = -power_sums[k] / k;
    const double coefficient = phi_u_coefficient(log_d, p);
    const double weight = (p == 1) ? 1.0 : std::pow(s11 * s22, p - 1);
    return moment_constant(m) * weight * coefficient;
}

}  // namespace

std::string_view to_string(MomentBackend backend) {
    return backend == MomentBackend::series_spectral ? "series_spectral" : "closed_form_theorem2";
}

MomentBackend moment_backend_from_string(std::string_view name) {
    if (name == "series_spectral" || name == "series") return MomentBackend::series_spectral;
    if (name == "closed_form_theorem2" || name == "closed") return MomentBackend::closed_form_theorem2;
    throw std::invalid_argument("unknown moment backend '" + std::string(name) + "'");
}

double moment_integrand(const KernelContext& ctx, double s11, double s22, int m) {
    if (m < 2 || m % 2 == 1) throw std::invalid_argument("moment integrand needs an even order >= 2");
    return series_integrand(ctx, s11, s22, m);
}

double moment_integrand_continuous(double s11, double s22, int m) {
    if (m < 2 || m % 2 == 1) throw std::invalid_argument("moment integrand needs an even order >= 2");
    const int p = m / 2;
    const double coefficient = phi_u_coefficient(log_D_series_continuous(s11, s22, p), p);
    const double weight = (p == 1) ? 1.0 : std::pow(s11 * s22, p - 1);
    return moment_constant(m) * weight * coefficient;
}

double second_moment_integrand_closed(int n, double s11, double s22) {
    // phi0 * sum_j lambda_j^2 / ((1 + s11 lambda_j)(1 + s22 lambda_j)) / 4, with
    // sum_j lambda_j / (1 + a lambda_j) = -d_n'(-a)/d_n(-a).
    const double phi0 = std::exp(-0.5 * (log_dn_neg(n, s11) + log_dn_neg(n, s22)));
    const double g11 = dn_neg_log_derivative(n, s11);
    const double g22 = dn_neg_log_derivative(n, s22);
    return 0.25 * phi0 * (g22 - g11) / (s22 - s11);
}

double second_moment_integrand_closed_continuous(double s11, double s22) {
    const double phi0 = std::exp(-0.5 * (log_sinhc(std::sqrt(s11)) + log_sinhc(std::sqrt(s22))));
    const double h11 = continuous_resolvent_sum(s11);
    const double h22 = continuous_resolvent_sum(s22);
    return 0.25 * phi0 * (h11 - h22) / (s22 - s11);
}

MomentResult moment(const MomentRequest& req, const KernelContext& ctx) {
    if (auto r = short_circuit(req)) return *r;
    if (!req.n) throw std::invalid_argument("a kernel context implies a finite n");
    if (*req.n != ctx.n()) throw std::invalid_argument("request n does not match the kernel context");
    if (req.backend == MomentBackend::closed_form_theorem2)
        return second_moment_closed_form(ctx, req.rel_tol, req.max_subdivisions);
    const int m = req.m;
    const AxisMap map = axis_map(req.n, ctx.largest_eigenvalue());
    return integrate_moment([&](double s11, double s22) { return series_integrand(ctx, s11, s22, m); }, map, req,
                            MomentBackend::series_spectral);
}

MomentResult moment(const MomentRequest& req) {
    if (auto r = short_circuit(req)) return *r;
    if (req.n) return moment(req, *shared_kernel(*req.n));
    if (req.backend == MomentBackend::closed_form_theorem2)
        return second_moment_closed_form_continuous(req.rel_tol, req.max_subdivisions);
    const int m = req.m;
    const AxisMap map = axis_map(std::nullopt, 0.0);
    return integrate_moment([&](double s11, double s22) { return moment_integrand_continuous(s11, s22, m); },
                            map, req, MomentBackend::series_spectral);
}

MomentResult second_moment_closed_form(const KernelContext& ctx, double rel_tol, long max_subdivisions) {
    MomentRequest req;
    req.n = ctx.n();
    req.rel_tol = rel_tol;
    req.max_subdivisions = max_subdivisions;
    req.backend = MomentBackend::closed_form_theorem2;
    short_circuit(req);
    const int n = ctx.n();
    const AxisMap map = axis_map(req.n, ctx.largest_eigenvalue());
    return integrate_moment(
        [&](double s11, double s22) {
            if (std::fabs(s11 - s22) < kDiagonalBand * (1.0 + s11)) return series_integrand(ctx, s11, s22, 2);
            return second_moment_integrand_closed(n, s11, s22);
        },
        map, req, MomentBackend::closed_form_theorem2);
}

MomentResult second_moment_closed_form_continuous(double rel_tol, long max_subdivisions) {
    MomentRequest req;
    req.rel_tol = rel_tol;
    req.max_subdivisions = max_subdivisions;
    req.backend = MomentBackend::closed_form_theorem2;
    short_circuit(req);
    const AxisMap map = axis_map(std::nullopt, 0.0);
    return integrate_moment(
        [&](double s11, double s22) {
            if (std::fabs(s11 - s22) < kDiagonalBand * (1.0 + s11)) return moment_integrand_continuous(s11, s22, 2);
            return second_moment_integrand_closed_continuous(s11, s22);
        },
        map, req, MomentBackend::closed_form_theorem2);
}

QuadResult negative_moment_detail(const std::function<double(double)>& mgf, int m, double rel_tol) {
    if (m < 1) throw std::invalid_argument("negative moment order must be >= 1");
    const double norm = factorial(m - 1);
    QuadResult r = integrate_to_infinity(
        [&](double s) { return (m == 1 ? 1.0 : std::pow(s, m - 1)) * mgf(s); }, 0.0, rel_tol);
    r.value /= norm;
    r.abs_error /= norm;
    return r;
}

double negative_moment(const std::function<double(double)>& mgf, int m, double rel_tol) {
    return negative_moment_detail(mgf, m, rel_tol).value;
}

}  // namespace yule
