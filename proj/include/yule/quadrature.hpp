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

#include <cstddef>
#include <functional>

namespace yule {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;  ///< sum of per-cell |Kronrod - Gauss|
    long cells = 0;
    bool converged = false;
};

struct QuadOptions {
    double rel_tol = 1e-7;
    double abs_tol = 0.0;
    long max_cells = 2'000'000;
    int initial_divisions = 8;  ///< per axis (2D) or panels (1D)
};

using Integrand2D = std::function<double(double, double)>;
using Integrand1D = std::function<double(double)>;

/// Globally adaptive tensor Gauss-Kronrod (7-15) cubature on [0,1]^2.
/// Cells are refined in deterministic batches (worst error first, ties by
/// creation order), split in half along the axis with the larger embedded
/// error estimate, and summed in creation order with compensation. Cell
/// evaluations run through parallel_for; the result does not depend on the
/// worker count. Returns converged = false when the budget is exhausted.
QuadResult integrate_unit_square(const Integrand2D& f, const QuadOptions& options = {});

/// Globally adaptive Gauss-Kronrod (7-15) on [a, b].
QuadResult integrate_interval(const Integrand1D& f, double a, double b, const QuadOptions& options = {});

/// Integral of f over [a, inf) on the panels [a, a+1], [a+1, a+2],
/// [a+2, a+4], ..., each integrated adaptively. Once consecutive panel
/// ratios settle below 1 the remainder is extrapolated geometrically.
/// Throws DivergenceError when the panels stop shrinking.
QuadResult integrate_to_infinity(const Integrand1D& f, double a, double rel_tol = 1e-9);

}  // namespace yule
