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
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace yule {

/// How the spectrum of K_n was obtained.
enum class BuildMode {
    explicit_formula,  ///< closed-form eigenvalues of the bridge covariance
    determinant_lu,    ///< bisection on LU inertia counts of K_n - sigma I
    spectral,          ///< dense symmetric eigensolver (tridiagonalization + QL/QR)
};

std::string_view to_string(BuildMode mode);
BuildMode build_mode_from_string(std::string_view name);

/// Discrete Brownian-bridge covariance K_n(j,k) = min(j,k)/n - jk/n^2,
/// 1 <= j,k <= n-1.
Eigen::MatrixXd build_kernel_matrix(int n);

/// Trace of K_n, (n^2 - 1) / (6n).
double kernel_trace(int n);

/// Eigenvalues of K_n in descending order.
std::vector<double> eigen_spectrum(int n, BuildMode mode = BuildMode::spectral);

/// Per-n bundle of the kernel spectrum. Immutable once constructed.
class KernelContext {
public:
    explicit KernelContext(int n, BuildMode mode = BuildMode::spectral);
    /// Adopts a precomputed spectrum (e.g. from the JSON cache). The values
    /// are validated (count, positivity) and sorted descending.
    KernelContext(int n, std::vector<double> eigenvalues, BuildMode mode);

    int n() const noexcept { return n_; }
    int dim() const noexcept { return n_ - 1; }
    BuildMode build_mode() const noexcept { return mode_; }
    std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
    double largest_eigenvalue() const noexcept { return eigenvalues_.front(); }

private:
    int n_;
    BuildMode mode_;
    std::vector<double> eigenvalues_;
};

// ---------------------------------------------------------------------------
// Alternative characteristic polynomial d_n(lambda) = det(I - lambda K_n).
// ---------------------------------------------------------------------------

/// Closed-form finite-sum representation, valid for every real lambda.
/// Away from the double root of the underlying recursion the two-power form
/// is used (as sinh or sin of n times an angle, in log space when large);
/// inside the band |(lambda/n - 2)^2 - 4| < 1e-8 (lambda/n - 2)^2 the
/// binomial sum is summed directly.
double dn_explicit(int n, double lambda);

/// det(I - lambda K_n) by partially pivoted LU. Throws NumericError when the
/// determinant is not finite.
double dn_oracle(int n, double lambda);

/// prod_j (1 - lambda * lambda_j) over a cached spectrum.
double dn_spectral(const KernelContext& ctx, double lambda);

/// d_n(-s) and d_n'(-s) for s >= 0 through f(x) = ((x+2) + sqrt((x+2)^2-4))/2.
double dn_neg(int n, double s);
double dn_neg_prime(int n, double s);
/// log d_n(-s); finite for every s >= 0 even where d_n(-s) overflows.
double log_dn_neg(int n, double s);
/// d_n'(-s) / d_n(-s).
double dn_neg_log_derivative(int n, double s);

}  // namespace yule
