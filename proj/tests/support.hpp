#pragma once
//
// Shared test utilities: seeded random step functions and independent
// quadrature oracles (adaptive Simpson), kept apart from the library code
// they cross-check.
//

#include "riembed/grid.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace riembed::testing {

inline StepFunction random_rearranged_step(std::mt19937_64& rng, int max_cells = 24) {
    std::uniform_int_distribution<int> nc(1, max_cells);
    std::uniform_real_distribution<double> um(0.05, 1.0);
    std::lognormal_distribution<double> lv(0.0, 1.0);
    const int cells = nc(rng);
    ArrayXd values(cells), measures(cells);
    double total = 0.0;
    for (int i = 0; i < cells; ++i) {
        values[i] = lv(rng);
        measures[i] = um(rng);
        total += measures[i];
    }
    measures /= total;
    return rearrange(values, measures);
}

// adaptive Simpson; the standard error estimate with a depth cap
inline double simpson(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    return (b - a) * (f(a) + 4.0 * f(c) + f(b)) / 6.0;
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double eps, double whole, int depth) {
    const double c = 0.5 * (a + b);
    const double left = simpson(f, a, c);
    const double right = simpson(f, c, b);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) < 15.0 * eps) return left + right + diff / 15.0;
    return adaptive_simpson(f, a, c, 0.5 * eps, left, depth - 1) +
           adaptive_simpson(f, c, b, 0.5 * eps, right, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-11) {
    if (!(b > a)) return 0.0;
    return adaptive_simpson(f, a, b, eps, simpson(f, a, b), 48);
}

// piecewise-aware oracle: integrate f(s) * step(s) over (lo, hi) without the
// library's closed forms
inline double integrate_against_oracle(const StepFunction& g,
                                       const std::function<double(double)>& f, double lo,
                                       double hi, double eps = 1e-11) {
    double acc = 0.0;
    for (Index i = 0; i < g.cells(); ++i) {
        const double a = std::max(g.grid.left(i), lo);
        const double b = std::min(g.grid.right(i), hi);
        if (b <= a || g.values[i] == 0.0) continue;
        acc += g.values[i] * integrate(f, a, b, eps);
    }
    return acc;
}

}  // namespace riembed::testing
