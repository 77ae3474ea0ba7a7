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

#include "yule/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "yule/errors.hpp"
#include "yule/kernel.hpp"
#include "yule/mgf.hpp"
#include "yule/moments.hpp"
#include "yule/parallel.hpp"
#include "yule/quadrature.hpp"

namespace yule {

namespace {

constexpr double kSlack = 1e-12;

double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double third_term(int n) {
    return std::exp(-0.5 * log_binomial(n, 11) + 2.5 * std::log(static_cast<double>(n))) / 3.0;
}

// log((e^x - e^{-x}) / sqrt(10 s)) with x = sqrt(s/2); the s -> 0 limit is
// log(1/sqrt(5)).
double log_sinh_bound(double s) {
    if (s == 0.0) return -0.5 * std::log(5.0);
    const double x = std::sqrt(0.5 * s);
    // 2 sinh(x) / sqrt(10 s) = (sinh(x)/x) * 2x / sqrt(10 s) = sinhc(x) / sqrt(5)
    return log_sinhc(x) - 0.5 * std::log(5.0);
}

}  // namespace

double compute_Cm(int m, double rel_tol) {
    if (m < 1 || m > 3) throw std::domain_error("C_m is defined for m in {1, 2, 3}");
    return negative_moment(phi_B, m, rel_tol);
}

C4Result compute_C4(int n_scan_max, double rel_tol) {
    if (n_scan_max < 11) throw std::domain_error("n_scan_max must be >= 11");
    C4Result r;
    r.n_scan_max = n_scan_max;
    // s = t^2/2: the integrand decays like e^{-t/4} in t.
    const QuadResult integral = integrate_to_infinity(
        [](double t) {
            const double s = 0.5 * t * t;
            return std::exp(-0.5 * log_sinh_bound(s)) * t;
        },
        std::sqrt(2.0), rel_tol);
    r.envelope_integral = integral.value;
    r.third_term_sup = third_term(11);
    r.envelope = 1.0 + r.envelope_integral + r.third_term_sup;

    const std::size_t count = static_cast<std::size_t>(n_scan_max - 10);
    r.scanned.assign(count, 0.0);
    parallel_for(count, [&](std::size_t i) {
        const int n = 11 + static_cast<int>(i);
        r.scanned[i] = negative_moment([n](double s) { return phi_Bn(n, s); }, 1, rel_tol);
    });
    r.third_term_decreasing = true;
    for (int n = 12; n <= n_scan_max; ++n) {
        if (!(third_term(n) < third_term(n - 1))) r.third_term_decreasing = false;
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (r.scanned[i] > r.scanned_max) {
            r.scanned_max = r.scanned[i];
            r.scanned_argmax = 11 + static_cast<int>(i);
        }
        if (r.scanned[i] > r.envelope)
            throw NumericError("E[B_n^-1] exceeds its analytic envelope", 11 + static_cast<int>(i));
    }
    return r;
}

double compute_C5(double C1, double C3, double C4) {
    const double root = std::sqrt(2.5 * (C3 + C4));
    return (root / 132.0 + 2.0) * root / 12.0 + std::sqrt(2.5) * C1 / 6.0;
}

bool LemmaCheck::all() const {
    for (const auto& [name, ok] : clauses)
        if (!ok) return false;
    return true;
}

LemmaCheck check_dn_lower_bounds(const std::vector<int>& n_list, const std::vector<double>& s_grid) {
    for (int n : n_list)
        if (n < 11) throw std::domain_error("the d_n lower bounds need n >= 11, got " + std::to_string(n));
    for (double s : s_grid)
        if (!(s >= 0.0)) throw std::domain_error("lower-bound grid points must be >= 0");
    LemmaCheck check;
    check.clauses = {{"a_unit", true}, {"b_binomial", true}, {"c_sinh", true}};
    auto record = [&](const char* clause, int n, double s, double lhs, double rhs) {
        if (lhs >= rhs - kSlack) return;
        check.clauses[clause] = false;
        check.violations.push_back({clause, n, s, lhs, rhs});
    };
    for (int n : n_list) {
        const double nn = static_cast<double>(n);
        const double log_b = 5.0 * std::log(2.0) + log_binomial(n, 11) - 11.0 * std::log(nn);
        for (double s : s_grid) {
            const double lhs = log_dn_neg(n, 2.0 * s / nn);
            record("a_unit", n, s, lhs, 0.0);
            if (s > 0.0) record("b_binomial", n, s, lhs, log_b + 5.0 * std::log(s));
            if (s <= 0.5 * nn * nn) record("c_sinh", n, s, lhs, log_sinh_bound(s));
        }
    }
    return check;
}

std::vector<double> linear_grid(double s_max, int count) {
    if (count < 2 || !(s_max > 0.0)) throw std::invalid_argument("grid needs >= 2 points and s_max > 0");
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] = s_max * i / (count - 1);
    grid.back() = s_max;
    return grid;
}

BoundReport compute_bound_report(int n_scan_max, double rel_tol, std::vector<int> lemma_n, int grid_points) {
    BoundReport r;
    r.n_scan_max = n_scan_max;
    r.rel_tol = rel_tol;
    r.lemma_n = lemma_n;
    r.lemma_grid_points = grid_points;
    r.C1 = compute_Cm(1, rel_tol);
    r.C2 = compute_Cm(2, rel_tol);
    r.C3 = compute_Cm(3, rel_tol);
    const C4Result c4 = compute_C4(n_scan_max, rel_tol);
    r.C4 = c4.envelope;
    r.C4_scanned_max = c4.scanned_max;
    r.C4_scanned_argmax = c4.scanned_argmax;
    r.C4_envelope_integral = c4.envelope_integral;
    r.C4_third_term_sup = c4.third_term_sup;
    r.C5 = compute_C5(r.C1, r.C3, r.C4);

    bool lemma_ok = true;
    for (int n : lemma_n) {
        const LemmaCheck check = check_dn_lower_bounds({n}, linear_grid(0.5 * n * n, grid_points));
        for (const auto& [name, ok] : check.clauses) {
            const std::string key = "lemma_" + name + "_n" + std::to_string(n);
            r.lemma_checks[key] = ok;
            lemma_ok = lemma_ok && ok;
        }
    }
    r.lemma_checks["lemma_all"] = lemma_ok;
    r.lemma_checks["cauchy_schwarz_C1_C2"] = r.C1 * r.C1 <= r.C2;
    r.lemma_checks["cauchy_schwarz_C2_C1C3"] = r.C2 * r.C2 <= r.C1 * r.C3;
    r.lemma_checks["scan_below_envelope"] = c4.scanned_max <= c4.envelope;
    r.lemma_checks["third_term_decreasing"] = c4.third_term_decreasing;
    r.lemma_checks["constants_positive_finite"] =
        std::isfinite(r.C5) && r.C1 > 0 && r.C2 > 0 && r.C3 > 0 && r.C4 > 0 && r.C5 > 0;
    return r;
}

std::string to_json(const BoundReport& r) {
    nlohmann::ordered_json doc;
    doc["schema"] = "yule/1";
    doc["kind"] = "bound_report";
    doc["C1"] = r.C1;
    doc["C2"] = r.C2;
    doc["C3"] = r.C3;
    doc["C4"] = r.C4;
    doc["C5"] = r.C5;
    doc["C4_scanned_max"] = r.C4_scanned_max;
    doc["C4_scanned_argmax"] = r.C4_scanned_argmax;
    doc["C4_envelope_integral"] = r.C4_envelope_integral;
    doc["C4_third_term_sup"] = r.C4_third_term_sup;
    doc["inputs"] = {{"n_scan_max", r.n_scan_max},
                     {"rel_tol", r.rel_tol},
                     {"lemma_n", r.lemma_n},
                     {"lemma_grid_points", r.lemma_grid_points}};
    doc["lemma_checks"] = r.lemma_checks;
    return doc.dump(2);
}

BoundReport bound_report_from_json(const std::string& text) {
    try {
        const auto doc = nlohmann::json::parse(text);
        BoundReport r;
        r.C1 = doc.at("C1").get<double>();
        r.C2 = doc.at("C2").get<double>();
        r.C3 = doc.at("C3").get<double>();
        r.C4 = doc.at("C4").get<double>();
        r.C5 = doc.at("C5").get<double>();
        r.C4_scanned_max = doc.at("C4_scanned_max").get<double>();
        r.C4_scanned_argmax = doc.at("C4_scanned_argmax").get<int>();
        r.C4_envelope_integral = doc.at("C4_envelope_integral").get<double>();
        r.C4_third_term_sup = doc.at("C4_third_term_sup").get<double>();
        const auto& in = doc.at("inputs");
        r.n_scan_max = in.at("n_scan_max").get<int>();
        r.rel_tol = in.at("rel_tol").get<double>();
        r.lemma_n = in.at("lemma_n").get<std::vector<int>>();
        r.lemma_grid_points = in.at("lemma_grid_points").get<int>();
        r.lemma_checks = doc.at("lemma_checks").get<std::map<std::string, bool>>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed bound report: ") + e.what());
    }
}

}  // namespace yule
