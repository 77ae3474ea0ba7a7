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

#include "yule/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "yule/errors.hpp"

namespace yule {

namespace {

void require_n(int n) {
    if (n < 2) throw std::domain_error("walk length n must be >= 2, got " + std::to_string(n));
}

// Values of n*log f beyond this are evaluated in log space.
constexpr double kLogSpaceThreshold = 300.0;
// Relative width of the band around the double root where the binomial sum
// replaces the two-power form.
constexpr double kDoubleRootBand = 1e-8;

// Number of eigenvalues of K strictly below sigma: count of negative pivots of
// unpivoted elimination on K - sigma I (Sylvester inertia).
int count_below(const Eigen::MatrixXd& k, double sigma) {
    Eigen::MatrixXd a = k;
    const Eigen::Index dim = a.rows();
    a.diagonal().array() -= sigma;
    int negative = 0;
    for (Eigen::Index p = 0; p < dim; ++p) {
        double pivot = a(p, p);
        if (pivot == 0.0) pivot = -1e-300;
        if (pivot < 0.0) ++negative;
        const Eigen::Index rest = dim - p - 1;
        if (rest == 0) break;
        const Eigen::VectorXd col = a.col(p).tail(rest) / pivot;
        a.bottomRightCorner(rest, rest).noalias() -= col * a.row(p).tail(rest);
    }
    return negative;
}

std::vector<double> spectrum_by_inertia(int n) {
    const Eigen::MatrixXd k = build_kernel_matrix(n);
    const int dim = n - 1;
    // Gershgorin bounds: 0 < lambda <= max row sum.
    const double upper = k.cwiseAbs().rowwise().sum().maxCoeff() * (1.0 + 1e-12);
    std::vector<double> values(static_cast<std::size_t>(dim));
    // Spectrum slicing: recursively split [lo, hi) holding eigenvalue indices
    // [count_lo, count_hi).
    std::function<void(double, double, int, int)> slice = [&](double lo, double hi,
                                                             int count_lo, int count_hi) {
        if (count_hi <= count_lo) return;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
            for (int i = count_lo; i < count_hi; ++i) values[static_cast<std::size_t>(i)] = 0.5 * (lo + hi);
            return;
        }
        if (count_hi - count_lo == 1 && hi - lo <= 1e-15 * hi) {
            values[static_cast<std::size_t>(count_lo)] = 0.5 * (lo + hi);
            return;
        }
        const double mid = 0.5 * (lo + hi);
        const int count_mid = count_below(k, mid);
        slice(lo, mid, count_lo, count_mid);
        slice(mid, hi, count_mid, count_hi);
    };
    slice(0.0, upper, 0, dim);
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

// Binomial-sum form of d_n at a general real lambda:
// d_n = ((-1)^{n-1} / n) sum_k C(n,2k-1) a^{n-2k+1} b2^{k-1},
// a = (lambda/n - 2)/2, b2 = ((lambda/n - 2)^2 - 4)/4.
double dn_binomial(int n, double a, double b2) {
    const int terms = (n + 1) / 2;
    double term = static_cast<double>(n) * std::pow(a, n - 1);
    double sum = term;
    const double q = b2 / (a * a);
    for (int k = 1; k < terms; ++k) {
        const double ratio = static_cast<double>(n - 2 * k + 1) * static_cast<double>(n - 2 * k) /
                             (static_cast<double>(2 * k) * static_cast<double>(2 * k + 1));
        term *= ratio * q;
        sum += term;
    }
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{n-1}
    return sign * sum / static_cast<double>(n);
}

// Positive series for d_n(-s) and its x-derivative (x = s/n) in the regime
// n*log f < 1, where every term is positive and the terms decay fast.
struct SmallArgument {
    double value;       // d_n(-s)
    double dvalue_dx;   // d/dx of d_n(-nx)
};

SmallArgument dn_neg_series(int n, double x) {
    const double a = 1.0 + 0.5 * x;
    const double b = 0.25 * x * (x + 4.0);
    const int terms = (n + 1) / 2;
    double t = static_cast<double>(n) * std::pow(a, n - 1);  // T_1
    double sum = t;
    double dsum = 0.5 * static_cast<double>(n - 1) / a * t;
    // U_k = C(n,2k-1) a^{n-2k+2} b^{k-2}, k >= 2; U_2 = C(n,3) a^{n-2}.
    double u = 0.0;
    for (int k = 2; k <= terms; ++k) {
        const double ratio = static_cast<double>(n - 2 * k + 3) * static_cast<double>(n - 2 * k + 2) /
                             (static_cast<double>(2 * k - 2) * static_cast<double>(2 * k - 1));
        if (k == 2) {
            u = static_cast<double>(n) * ratio * std::pow(a, n - 2);
        } else {
            u *= ratio * b / (a * a);
        }
        t = u * b / a;  // T_k = U_k * b / a
        const double dt = 0.5 * static_cast<double>(n - 2 * k + 1) / a * t +
                          static_cast<double>(k - 1) * u;
        sum += t;
        dsum += dt;
        if (dt <= 1e-18 * dsum && t <= 1e-18 * sum) break;
    }
    return {sum / static_cast<double>(n), dsum / static_cast<double>(n)};
}

struct FRep {
    double x;      // s / n
    double root;   // sqrt((x+2)^2 - 4)
    double y;      // n log f(x)
};

FRep f_representation(int n, double s) {
    const double x = s / static_cast<double>(n);
    const double root = std::sqrt(x * (x + 4.0));
    const double logf = std::log1p(0.5 * (x + root));
    return {x, root, static_cast<double>(n) * logf};
}

void require_nonnegative(double s) {
    if (!(s >= 0.0)) throw std::domain_error("argument s must be >= 0 (use dn_explicit for general lambda)");
}

}  // namespace

std::string_view to_string(BuildMode mode) {
    switch (mode) {
        case BuildMode::explicit_formula: return "explicit_formula";
        case BuildMode::determinant_lu: return "determinant_lu";
        case BuildMode::spectral: return "spectral";
    }
    return "spectral";
}

BuildMode build_mode_from_string(std::string_view name) {
    if (name == "explicit_formula") return BuildMode::explicit_formula;
    if (name == "determinant_lu") return BuildMode::determinant_lu;
    if (name == "spectral") return BuildMode::spectral;
    throw std::invalid_argument("unknown build mode '" + std::string(name) + "'");
}

Eigen::MatrixXd build_kernel_matrix(int n) {
    require_n(n);
    const Eigen::Index dim = n - 1;
    const double nn = static_cast<double>(n);
    Eigen::MatrixXd k(dim, dim);
    for (Eigen::Index j = 1; j <= dim; ++j) {
        for (Eigen::Index i = 1; i <= j; ++i) {
            // min(i,j) = i on the lower triangle
            const double v = static_cast<double>(i) / nn -
                             static_cast<double>(i) * static_cast<double>(j) / (nn * nn);
            k(i - 1, j - 1) = v;
            k(j - 1, i - 1) = v;
        }
    }
    return k;
}

double kernel_trace(int n) {
    require_n(n);
    const double nn = static_cast<double>(n);
    return (nn * nn - 1.0) / (6.0 * nn);
}

std::vector<double> eigen_spectrum(int n, BuildMode mode) {
    require_n(n);
    std::vector<double> values;
    switch (mode) {
        case BuildMode::explicit_formula: {
            // K_n = T^{-1} / n with T = tridiag(-1, 2, -1).
            values.reserve(static_cast<std::size_t>(n - 1));
            const double nn = static_cast<double>(n);
            for (int j = 1; j < n; ++j) {
                const double sj = std::sin(static_cast<double>(j) * std::numbers::pi / (2.0 * nn));
                values.push_back(1.0 / (4.0 * nn * sj * sj));
            }
            break;
        }
        case BuildMode::determinant_lu:
            if (n > 400)
                throw std::domain_error("determinant_lu spectra are limited to n <= 400");
            values = spectrum_by_inertia(n);
            break;
        case BuildMode::spectral: {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(build_kernel_matrix(n),
                                                                  Eigen::EigenvaluesOnly);
            if (solver.info() != Eigen::Success)
                throw NumericError("symmetric eigensolver did not converge", n);
            const Eigen::VectorXd& ev = solver.eigenvalues();
            values.assign(ev.data(), ev.data() + ev.size());
            break;
        }
    }
    // Descending; stable sort keeps index order among ties.
    std::stable_sort(values.begin(), values.end(), std::greater<>());
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw NumericError("kernel spectrum has a non-positive eigenvalue", n);
    }
    return values;
}

KernelContext::KernelContext(int n, BuildMode mode)
    : n_(n), mode_(mode), eigenvalues_(eigen_spectrum(n, mode)) {}

KernelContext::KernelContext(int n, std::vector<double> eigenvalues, BuildMode mode)
    : n_(n), mode_(mode), eigenvalues_(std::move(eigenvalues)) {
    require_n(n);
    if (eigenvalues_.size() != static_cast<std::size_t>(n - 1))
        throw std::invalid_argument("expected " + std::to_string(n - 1) + " eigenvalues, got " +
                                    std::to_string(eigenvalues_.size()));
    for (double v : eigenvalues_) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("eigenvalues of K_n must be finite and positive");
    }
    std::stable_sort(eigenvalues_.begin(), eigenvalues_.end(), std::greater<>());
}

double dn_explicit(int n, double lambda) {
    require_n(n);
    const double nn = static_cast<double>(n);
    const double x = lambda / nn;
    const double y = x - 2.0;
    const double disc = x * (x - 4.0);  // y^2 - 4 without cancellation at x=0
    if (std::fabs(disc) < kDoubleRootBand * y * y) return dn_binomial(n, 0.5 * y, 0.25 * disc);

    if (disc < 0.0) {
        // Roots on the unit circle: d_n = sin(n theta) / (n sin theta).
        const double omega = std::sqrt(-disc);
        const double theta = std::atan2(omega, -y);
        return 2.0 * std::sin(nn * theta) / (nn * omega);
    }
    // Real roots: |d_n| = 2 sinh(n l) / (n sqrt(disc)), l = acosh(|y|/2).
    const double z = 0.5 * std::fabs(y) - 1.0;
    const double l = std::log1p(z + std::sqrt(z * (z + 2.0)));
    const double root = std::sqrt(disc);
    double magnitude;
    if (nn * l > kLogSpaceThreshold) {
        magnitude = std::exp(nn * l + std::log1p(-std::exp(-2.0 * nn * l)) - std::log(nn * root));
    } else {
        magnitude = 2.0 * std::sinh(nn * l) / (nn * root);
    }
    if (x < 0.0) return magnitude;
    return (n % 2 == 1) ? magnitude : -magnitude;  // (-1)^{n+1} for lambda > 4n
}

double dn_oracle(int n, double lambda) {
    const Eigen::MatrixXd k = build_kernel_matrix(n);
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k.rows(), k.cols()) - lambda * k;
    const double det = a.partialPivLu().determinant();
    if (!std::isfinite(det)) throw NumericError("LU determinant overflowed", n);
    return det;
}

double dn_spectral(const KernelContext& ctx, double lambda) {
    double product = 1.0;
    for (double v : ctx.eigenvalues()) product *= 1.0 - lambda * v;
    return product;
}

double dn_neg(int n, double s) {
    require_n(n);
    require_nonnegative(s);
    const FRep f = f_representation(n, s);
    if (f.y < 1.0) return dn_neg_series(n, f.x).value;
    if (f.y > kLogSpaceThreshold) return std::exp(log_dn_neg(n, s));
    return 2.0 * std::sinh(f.y) / (static_cast<double>(n) * f.root);
}

double log_dn_neg(int n, double s) {
    require_n(n);
    require_nonnegative(s);
    const FRep f = f_representation(n, s);
    if (f.y < 1.0) return std::log(dn_neg_series(n, f.x).value);
    // 2 sinh(y) = e^y (1 - e^{-2y})
    return f.y + std::log1p(-std::exp(-2.0 * f.y)) - std::log(static_cast<double>(n) * f.root);
}

double dn_neg_log_derivative(int n, double s) {
    require_n(n);
    require_nonnegative(s);
    const FRep f = f_representation(n, s);
    const double nn = static_cast<double>(n);
    if (f.y < 1.0) {
        const SmallArgument series = dn_neg_series(n, f.x);
        return -series.dvalue_dx / (nn * series.value);
    }
    // g = -coth(y)/D + (x+2)/(n D^2)
    return -1.0 / (std::tanh(f.y) * f.root) + (f.x + 2.0) / (nn * f.root * f.root);
}

double dn_neg_prime(int n, double s) {
    require_n(n);
    require_nonnegative(s);
    const FRep f = f_representation(n, s);
    const double nn = static_cast<double>(n);
    if (f.y < 1.0) return -dn_neg_series(n, f.x).dvalue_dx / nn;
    return dn_neg(n, s) * dn_neg_log_derivative(n, s);
}

}  // namespace yule
