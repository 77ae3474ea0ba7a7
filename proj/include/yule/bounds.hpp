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

#include <map>
#include <string>
#include <vector>

namespace yule {

/// E[B^{-m}] for m in {1, 2, 3}.
double compute_Cm(int m, double rel_tol = 1e-10);

struct C4Result {
    double envelope = 0.0;           ///< certified upper bound (the reported C4)
    double envelope_integral = 0.0;  ///< int_1^inf ((e^{sqrt(s/2)} - e^{-sqrt(s/2)}) / sqrt(10 s))^{-1/2} ds
    double third_term_sup = 0.0;     ///< (1/3) binom(n,11)^{-1/2} n^{5/2} at n = 11
    bool third_term_decreasing = false;  ///< over 11..n_scan_max
    double scanned_max = 0.0;        ///< max of E[B_n^{-1}] over the scan
    int scanned_argmax = 0;
    int n_scan_max = 0;
    std::vector<double> scanned;     ///< E[B_n^{-1}] for n = 11..n_scan_max
};

/// Scans E[B_n^{-1}] over 11 <= n <= n_scan_max and evaluates the analytic
/// envelope. Throws NumericError when a scanned value exceeds the envelope.
C4Result compute_C4(int n_scan_max = 500, double rel_tol = 1e-10);

/// (1/12) ((1/132) sqrt(X) + 2) sqrt(X) + (1/6) sqrt(5/2) C1, X = (5/2)(C3 + C4).
double compute_C5(double C1, double C3, double C4);

struct LemmaViolation {
    std::string clause;
    int n;
    double s;
    double lhs;  ///< log d_n(-2s/n)
    double rhs;  ///< log of the lower bound
};

struct LemmaCheck {
    std::map<std::string, bool> clauses;  ///< "a_unit", "b_binomial", "c_sinh"
    std::vector<LemmaViolation> violations;
    bool all() const;
};

/// Lower bounds on d_n(-2s/n) for n >= 11, on every grid point s >= 0:
/// (a) >= 1; (b) >= 2^5 binom(n,11) n^{-11} s^5;
/// (c) >= (e^{sqrt(s/2)} - e^{-sqrt(s/2)}) / sqrt(10 s) for s <= n^2/2.
/// Compared in log space with 1e-12 slack.
LemmaCheck check_dn_lower_bounds(const std::vector<int>& n_list, const std::vector<double>& s_grid);

/// count equispaced points on [0, s_max].
std::vector<double> linear_grid(double s_max, int count);

struct BoundReport {
    double C1 = 0.0, C2 = 0.0, C3 = 0.0, C4 = 0.0, C5 = 0.0;
    double C4_scanned_max = 0.0;
    int C4_scanned_argmax = 0;
    double C4_envelope_integral = 0.0;
    double C4_third_term_sup = 0.0;
    int n_scan_max = 500;
    double rel_tol = 1e-10;
    std::vector<int> lemma_n;
    int lemma_grid_points = 1000;
    std::map<std::string, bool> lemma_checks;
};

/// Full pipeline: C1..C3, the C4 scan and envelope, C5, and the lemma and
/// consistency checks (Cauchy-Schwarz on negative moments, scan below
/// envelope, C5 formula).
BoundReport compute_bound_report(int n_scan_max = 500, double rel_tol = 1e-10,
                                 std::vector<int> lemma_n = {11, 20, 50, 200}, int grid_points = 1000);

std::string to_json(const BoundReport& report);
BoundReport bound_report_from_json(const std::string& text);

}  // namespace yule
