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

#include "yule/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "yule/errors.hpp"
#include "yule/parallel.hpp"

namespace yule {

namespace {

// Kronrod 15-point nodes on [-1,1] (non-negative half) and weights; the odd
// indices 1,3,5,7 (counting from the outer node) are the Gauss 7-point nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule {
    std::array<double, 15> node{};    // on [0,1]
    std::array<double, 15> kronrod{};  // weights on [0,1]
    std::array<double, 15> gauss{};    // zero at Kronrod-only nodes
};

Rule make_rule() {
    Rule r;
    for (int i = 0; i < 7; ++i) {
        r.node[static_cast<std::size_t>(i)] = 0.5 * (1.0 - kXgk[static_cast<std::size_t>(i)]);
        r.node[static_cast<std::size_t>(14 - i)] = 0.5 * (1.0 + kXgk[static_cast<std::size_t>(i)]);
        r.kronrod[static_cast<std::size_t>(i)] = r.kronrod[static_cast<std::size_t>(14 - i)] =
            0.5 * kWgk[static_cast<std::size_t>(i)];
        if (i % 2 == 1) {
            r.gauss[static_cast<std::size_t>(i)] = r.gauss[static_cast<std::size_t>(14 - i)] =
                0.5 * kWg[static_cast<std::size_t>(i / 2)];
        }
    }
    r.node[7] = 0.5;
    r.kronrod[7] = 0.5 * kWgk[7];
    r.gauss[7] = 0.5 * kWg[3];
    return r;
}

const Rule& rule() {
    static const Rule r = make_rule();
    return r;
}

struct Cell {
    double x0, x1, y0, y1;
    double value = 0.0;
    double error = 0.0;
    bool split_x = true;
};

void evaluate_cell(const Integrand2D& f, Cell& c) {
    const Rule& r = rule();
    const double hx = c.x1 - c.x0;
    const double hy = c.y1 - c.y0;
    std::array<double, 15> kx{};  // for each x node: Kronrod sum over y
    std::array<double, 15> gy{};  // for each x node: Gauss sum over y
    for (std::size_t i = 0; i < 15; ++i) {
        const double x = c.x0 + hx * r.node[i];
        double sk = 0.0;
        double sg = 0.0;
        for (std::size_t j = 0; j < 15; ++j) {
            const double v = f(x, c.y0 + hy * r.node[j]);
            sk += r.kronrod[j] * v;
            sg += r.gauss[j] * v;
        }
        kx[i] = sk;
        gy[i] = sg;
    }
    double kk = 0.0;  // Kronrod in x and y
    double gk = 0.0;  // Gauss in x, Kronrod in y
    double kg = 0.0;  // Kronrod in x, Gauss in y
    for (std::size_t i = 0; i < 15; ++i) {
        kk += r.kronrod[i] * kx[i];
        gk += r.gauss[i] * kx[i];
        kg += r.kronrod[i] * gy[i];
    }
    const double area = hx * hy;
    const double ex = std::fabs(kk - gk) * area;
    const double ey = std::fabs(kk - kg) * area;
    c.value = kk * area;
    c.error = ex + ey;
    c.split_x = ex >= ey;
}

}  // namespace

QuadResult integrate_unit_square(const Integrand2D& f, const QuadOptions& options) {
    const int g = std::max(1, options.initial_divisions);
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(g) * static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            cells.push_back({static_cast<double>(i) / g, static_cast<double>(i + 1) / g,
                             static_cast<double>(j) / g, static_cast<double>(j + 1) / g});
        }
    }
    parallel_for(cells.size(), [&](std::size_t i) { evaluate_cell(f, cells[i]); });

    QuadResult result;
    std::vector<std::size_t> order;
    while (true) {
        CompensatedSum value;
        CompensatedSum error;
        for (const Cell& c : cells) {
            value.add(c.value);
            error.add(c.error);
        }
        result.value = value.value();
        result.abs_error = error.value();
        result.cells = static_cast<long>(cells.size());
        if (!std::isfinite(result.value) || !std::isfinite(result.abs_error)) {
            result.converged = false;
            return result;
        }
        const double target = std::max(options.abs_tol, options.rel_tol * std::fabs(result.value));
        if (result.abs_error <= target) {
            result.converged = true;
            return result;
        }
        if (result.cells >= options.max_cells) {
            result.converged = false;
            return result;
        }

        // Refine the worst ~10% of cells, enough to cover the excess error
        // when fewer suffice.
        order.resize(cells.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        const std::size_t room = static_cast<std::size_t>(options.max_cells) - cells.size();
        std::size_t batch = std::max<std::size_t>(1, cells.size() / 10);
        batch = std::min({batch, room, cells.size()});
        auto worse = [&](std::size_t a, std::size_t b) {
            if (cells[a].error != cells[b].error) return cells[a].error > cells[b].error;
            return a < b;
        };
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(batch), order.end(), worse);
        double excess = result.abs_error - target;
        std::size_t take = 0;
        while (take < batch) {
            excess -= cells[order[take]].error;
            ++take;
            if (excess <= 0.0 && take >= std::min<std::size_t>(batch, 16)) break;
        }

        const std::size_t first_child = cells.size();
        for (std::size_t k = 0; k < take; ++k) {
            Cell& parent = cells[order[k]];
            Cell child = parent;
            if (parent.split_x) {
                const double mid = 0.5 * (parent.x0 + parent.x1);
                parent.x1 = mid;
                child.x0 = mid;
            } else {
                const double mid = 0.5 * (parent.y0 + parent.y1);
                parent.y1 = mid;
                child.y0 = mid;
            }
            cells.push_back(child);
        }
        std::vector<std::size_t> dirty;
        dirty.reserve(2 * take);
        for (std::size_t k = 0; k < take; ++k) dirty.push_back(order[k]);
        for (std::size_t i = first_child; i < cells.size(); ++i) dirty.push_back(i);
        parallel_for(dirty.size(), [&](std::size_t i) { evaluate_cell(f, cells[dirty[i]]); });
    }
}

QuadResult integrate_interval(const Integrand1D& f, double a, double b, const QuadOptions& options) {
    struct Panel {
        double lo, hi, value, error;
    };
    const Rule& r = rule();
    auto evaluate = [&](Panel& p) {
        const double h = p.hi - p.lo;
        double sk = 0.0;
        double sg = 0.0;
        for (std::size_t i = 0; i < 15; ++i) {
            const double v = f(p.lo + h * r.node[i]);
            sk += r.kronrod[i] * v;
            sg += r.gauss[i] * v;
        }
        p.value = sk * h;
        p.error = std::fabs(sk - sg) * h;
    };
    const int g = std::max(1, options.initial_divisions);
    std::vector<Panel> panels;
    for (int i = 0; i < g; ++i) {
        Panel p{a + (b - a) * i / g, a + (b - a) * (i + 1) / g, 0.0, 0.0};
        evaluate(p);
        panels.push_back(p);
    }
    QuadResult result;
    while (true) {
        CompensatedSum value;
        CompensatedSum error;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            value.add(panels[i].value);
            error.add(panels[i].error);
            if (panels[i].error > panels[worst].error) worst = i;
        }
        result.value = value.value();
        result.abs_error = error.value();
        result.cells = static_cast<long>(panels.size());
        if (!std::isfinite(result.value)) return result;
        const double target = std::max(options.abs_tol, options.rel_tol * std::fabs(result.value));
        if (result.abs_error <= target) {
            result.converged = true;
            return result;
        }
        if (result.cells >= options.max_cells) return result;
        const double mid = 0.5 * (panels[worst].lo + panels[worst].hi);
        Panel right{mid, panels[worst].hi, 0.0, 0.0};
        panels[worst].hi = mid;
        evaluate(panels[worst]);
        evaluate(right);
        panels.push_back(right);
    }
}

}  // namespace yule

namespace yule {

QuadResult integrate_to_infinity(const Integrand1D& f, double a, double rel_tol) {
    constexpr int kMaxPanels = 1000;
    constexpr double kStallRatio = 0.98;
    constexpr int kStallRun = 6;
    QuadOptions panel_options;
    panel_options.rel_tol = 0.1 * rel_tol;
    panel_options.initial_divisions = 2;
    panel_options.max_cells = 4000;

    QuadResult result;
    CompensatedSum total;
    CompensatedSum error;
    double previous = 0.0;
    double previous_ratio = -1.0;
    int stalled = 0;
    for (int k = 0; k < kMaxPanels; ++k) {
        const double lo = (k == 0) ? a : a + std::ldexp(1.0, k - 1);
        const double hi = a + std::ldexp(1.0, k);
        const QuadResult panel = integrate_interval(f, lo, hi, panel_options);
        if (!std::isfinite(panel.value)) throw DivergenceError("integrand is not finite on [" +
                                                               std::to_string(lo) + ", " + std::to_string(hi) + "]");
        total.add(panel.value);
        error.add(panel.abs_error);
        result.cells += panel.cells;
        const double sum = total.value();
        const double size = std::fabs(panel.value);
        if (k >= 2) {
            const double ratio = (previous != 0.0) ? size / std::fabs(previous) : 0.0;
            // A stall is a ratio near or above 1 that has stopped moving; transient
            // growth before an exponential decay sets in keeps changing.
            const bool steady = previous_ratio >= 0.0 && std::fabs(ratio - previous_ratio) < 0.02;
            stalled = (ratio >= kStallRatio && steady) ? stalled + 1 : 0;
            if (stalled >= kStallRun)
                throw DivergenceError("improper integral does not converge: panel ratio " +
                                      std::to_string(ratio) + " at s=" + std::to_string(hi));
            if (size == 0.0) {
                result.converged = true;
                break;
            }
            if (ratio < kStallRatio) {
                const bool settled = previous_ratio >= 0.0 && std::fabs(ratio - previous_ratio) < 1e-2;
                const double tail = size * ratio / (1.0 - ratio);
                if (size <= 1e-3 * rel_tol * std::fabs(sum) ||
                    (settled && tail <= 0.1 * rel_tol * std::fabs(sum))) {
                    total.add(tail);
                    error.add(settled ? 0.1 * tail : tail);
                    result.converged = true;
                    break;
                }
            }
            previous_ratio = ratio;
        }
        previous = panel.value;
    }
    if (!result.converged) throw DivergenceError("improper integral did not settle within the panel budget");
    result.value = total.value();
    result.abs_error = error.value();
    return result;
}

}  // namespace yule
