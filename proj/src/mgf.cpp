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

#include "yule/mgf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace yule {

void validate(const MgfPoint& p) {
    if (!std::isfinite(p.s11) || !std::isfinite(p.s12) || !std::isfinite(p.s22))
        throw std::domain_error("mgf point must be finite");
    if (p.s11 < 0.0 || p.s22 < 0.0) throw std::domain_error("mgf point needs s11, s22 >= 0");
    const double slack = 8.0 * std::numeric_limits<double>::epsilon();
    if (p.s12 * p.s12 > p.s11 * p.s22 * (1.0 + slack))
        throw std::domain_error("mgf point needs s12^2 <= s11 * s22");
}

AlphaBeta alpha_beta(const MgfPoint& p) {
    validate(p);
    const double sum = p.s11 + p.s22;
    const double diff = p.s11 - p.s22;
    const double root = std::sqrt(diff * diff + 4.0 * p.s12 * p.s12);
    const double product = std::max(0.0, p.s11 * p.s22 - p.s12 * p.s12);
    const double alpha = -0.5 * (sum + root);
    // beta from the product avoids cancellation in -(sum - root)/2
    const double beta = (alpha == 0.0) ? 0.0 : product / alpha;
    return {alpha, beta};
}

double phi_n(int n, const MgfPoint& p) {
    const AlphaBeta ab = alpha_beta(p);
    return std::exp(-0.5 * (log_dn_neg(n, -ab.alpha) + log_dn_neg(n, -ab.beta)));
}

double phi_n(const KernelContext& ctx, const MgfPoint& p) { return phi_n(ctx.n(), p); }

double phi_n_spectral(const KernelContext& ctx, const MgfPoint& p) {
    validate(p);
    const double sum = p.s11 + p.s22;
    const double product = std::max(0.0, p.s11 * p.s22 - p.s12 * p.s12);
    double log_d = 0.0;
    for (double l : ctx.eigenvalues()) log_d += std::log1p(l * (sum + product * l));
    return std::exp(-0.5 * log_d);
}

double sinhc(double x) {
    x = std::fabs(x);
    if (x < 1e-2) {
        const double x2 = x * x;
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sinh(x) / x;
}

double log_sinhc(double x) {
    x = std::fabs(x);
    if (x < 1e-2) return std::log(sinhc(x));
    if (x < 20.0) return std::log(std::sinh(x) / x);
    // sinh x = e^x (1 - e^{-2x}) / 2
    return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0 * x);
}

double phi_continuous(const MgfPoint& p) {
    const AlphaBeta ab = alpha_beta(p);
    return std::exp(-0.5 * (log_sinhc(std::sqrt(-ab.alpha)) + log_sinhc(std::sqrt(-ab.beta))));
}

double phi_Bn(int n, double s) {
    if (!(s >= 0.0)) throw std::domain_error("phi_Bn needs s >= 0");
    return std::exp(-0.5 * log_dn_neg(n, 2.0 * s / static_cast<double>(n)));
}

double phi_Bn(const KernelContext& ctx, double s) { return phi_Bn(ctx.n(), s); }

double phi_B(double s) {
    if (!(s >= 0.0)) throw std::domain_error("phi_B needs s >= 0");
    return std::exp(-0.5 * log_sinhc(std::sqrt(2.0 * s)));
}

}  // namespace yule
