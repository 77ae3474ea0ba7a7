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

#include "yule/kernel.hpp"

namespace yule {

/// Argument of the joint mgf of (Z11, Z12, Z22). Valid when s11, s22 >= 0
/// and s12^2 <= s11 s22.
struct MgfPoint {
    double s11 = 0.0;
    double s12 = 0.0;
    double s22 = 0.0;
};

/// Roots of z^2 + (s11 + s22) z + (s11 s22 - s12^2); alpha <= beta <= 0.
struct AlphaBeta {
    double alpha;
    double beta;
};

/// Throws std::domain_error outside the validity region.
void validate(const MgfPoint& p);

AlphaBeta alpha_beta(const MgfPoint& p);

/// phi_n(p) = (d_n(alpha) d_n(beta))^{-1/2}, in (0, 1].
double phi_n(int n, const MgfPoint& p);
double phi_n(const KernelContext& ctx, const MgfPoint& p);
/// prod_j (1 + (s11+s22) lambda_j + (s11 s22 - s12^2) lambda_j^2)^{-1/2}.
double phi_n_spectral(const KernelContext& ctx, const MgfPoint& p);

/// Same functional for the limiting Wiener pair (eigenvalues 1/(k pi)^2).
double phi_continuous(const MgfPoint& p);

/// sinh(x)/x, with a short series near 0.
double sinhc(double x);
/// log(sinh(x)/x) for x >= 0, finite for large x.
double log_sinhc(double x);

/// Laplace transform of B_n = Z11/n: d_n(-2s/n)^{-1/2}.
double phi_Bn(int n, double s);
double phi_Bn(const KernelContext& ctx, double s);
/// Laplace transform of B: (sinh(sqrt(2s)) / sqrt(2s))^{-1/2}.
double phi_B(double s);

}  // namespace yule
