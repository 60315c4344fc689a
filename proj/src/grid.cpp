#include "riembed/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace riembed {

namespace {
constexpr double kMeasureTol = 1e-12;
}

Grid Grid::log_spaced(double eps_min, int cells_per_decade) {
    if (!(eps_min > 0.0 && eps_min < 1.0))
        throw std::invalid_argument("log_spaced: eps_min must lie in (0,1)");
    if (cells_per_decade < 1)
        throw std::invalid_argument("log_spaced: cells_per_decade must be >= 1");
    const double decades = -std::log10(eps_min);
    const Index n = static_cast<Index>(std::ceil(decades * cells_per_decade));
    Grid g;
    g.breakpoints.resize(n + 1);
    const double l0 = std::log10(eps_min);
    for (Index i = 0; i <= n; ++i)
        g.breakpoints[i] =
            std::pow(10.0, l0 * (1.0 - static_cast<double>(i) / static_cast<double>(n)));
    g.breakpoints[0] = eps_min;
    g.breakpoints[n] = 1.0;
    g.scale = Scale::LogSpaced;
    g.validate();
    return g;
}

Grid Grid::from_breakpoints(ArrayXd bp) {
    Grid g;
    if (bp.size() == 0 || bp[bp.size() - 1] < 1.0) {
        ArrayXd ext(bp.size() + 1);
        ext.head(bp.size()) = bp;
        ext[bp.size()] = 1.0;
        bp = std::move(ext);
    }
    g.breakpoints = std::move(bp);
    g.scale = Scale::UserSupplied;
    g.validate();
    return g;
}

void Grid::validate() const {
    if (breakpoints.size() == 0)
        throw std::invalid_argument("Grid: empty breakpoint sequence");
    double prev = 0.0;
    for (Index i = 0; i < breakpoints.size(); ++i) {
        const double b = breakpoints[i];
        if (!(b > prev))
            throw std::invalid_argument("Grid: breakpoints must be strictly increasing and positive");
        if (!(b <= 1.0))
            throw std::invalid_argument("Grid: breakpoints must lie in (0,1]");
        prev = b;
    }
    if (breakpoints[breakpoints.size() - 1] != 1.0)
        throw std::invalid_argument("Grid: last breakpoint must equal 1");
    if (scale == Scale::LogSpaced) {
        // constant ratio between consecutive breakpoints (up to the final
        // cell, which may be clipped at 1)
        for (Index i = 2; i + 1 < breakpoints.size(); ++i) {
            const double r0 = breakpoints[1] / breakpoints[0];
            const double ri = breakpoints[i] / breakpoints[i - 1];
            if (std::abs(ri / r0 - 1.0) > 1e-12)
                throw std::invalid_argument("Grid: log-spaced ratios drift beyond 1e-12");
        }
    }
}

StepFunction StepFunction::on(Grid g, ArrayXd values, bool rearranged) {
    if (values.size() != g.cells())
        throw std::invalid_argument("StepFunction: one value per cell required");
    for (Index i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0)
            throw std::invalid_argument("StepFunction: values must be finite and >= 0");
    }
    if (rearranged) {
        for (Index i = 1; i < values.size(); ++i)
            if (values[i] > values[i - 1] + 1e-15 * std::abs(values[i - 1]))
                throw std::invalid_argument("StepFunction: rearranged values must be nonincreasing");
    }
    StepFunction f;
    f.grid = std::move(g);
    f.values = std::move(values);
    f.rearranged = rearranged;
    return f;
}

double power_cell_integral(double c, double beta, double a, double b) {
    if (!(b > a) || a < 0.0) throw std::invalid_argument("power_cell_integral: need 0 <= a < b");
    if (c == 0.0) return 0.0;
    const double e = beta + 1.0;
    if (a == 0.0) {
        if (e <= 0.0)
            throw std::domain_error("power_cell_integral: divergent at 0 (exponent <= -1)");
        return c * std::pow(b, e) / e;
    }
    if (std::abs(e) < 1e-12) {
        // ~ c log(b/a); exact at e == 0, continuous around it
        const double l = std::log(b / a);
        if (e == 0.0) return c * l;
        return c * std::pow(a, e) * std::expm1(e * l) / e;
    }
    return c * std::pow(a, e) * std::expm1(e * std::log(b / a)) / e;
}

StepFunction rearrange(const std::vector<std::pair<double, double>>& samples) {
    ArrayXd v(static_cast<Index>(samples.size())), m(static_cast<Index>(samples.size()));
    for (Index i = 0; i < v.size(); ++i) {
        v[i] = samples[static_cast<size_t>(i)].first;
        m[i] = samples[static_cast<size_t>(i)].second;
    }
    return rearrange(v, m);
}

StepFunction rearrange(const ArrayXd& values, const ArrayXd& measures) {
    if (values.size() != measures.size() || values.size() == 0)
        throw std::invalid_argument("rearrange: values/measures size mismatch");
    double total = 0.0;
    for (Index i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0)
            throw std::invalid_argument("rearrange: values must be finite and >= 0");
        if (!(measures[i] > 0.0))
            throw std::invalid_argument("rearrange: measures must be positive");
        total += measures[i];
    }
    if (std::abs(total - 1.0) > kMeasureTol)
        throw std::invalid_argument("rearrange: measures must sum to 1 within 1e-12");

    std::vector<Index> order(static_cast<size_t>(values.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return values[a] > values[b]; });

    ArrayXd bp(values.size()), v(values.size());
    double acc = 0.0;
    for (Index i = 0; i < values.size(); ++i) {
        acc += measures[order[static_cast<size_t>(i)]];
        bp[i] = acc;
        v[i] = values[order[static_cast<size_t>(i)]];
    }
    bp[values.size() - 1] = 1.0;
    return StepFunction::on(Grid::from_breakpoints(std::move(bp)), std::move(v), true);
}

double cumulative(const StepFunction& f, double t) {
    if (!(t >= 0.0)) throw std::domain_error("cumulative: t must be >= 0");
    double acc = 0.0;
    for (Index i = 0; i < f.cells(); ++i) {
        const double a = f.grid.left(i), b = f.grid.right(i);
        if (t <= a) break;
        acc += f.values[i] * (std::min(t, b) - a);
    }
    return acc;
}

double double_star(const StepFunction& f, double t) {
    if (!(t > 0.0 && t < 1.0)) throw std::domain_error("double_star: t must lie in (0,1)");
    if (!f.rearranged) throw std::invalid_argument("double_star: input must be rearranged");
    return cumulative(f, t) / t;
}

double integrate_power_against(const StepFunction& f, const PowerPiece& piece) {
    if (!(piece.hi > piece.lo) || piece.lo < 0.0)
        throw std::invalid_argument("integrate_power_against: bad support");
    if (piece.lo == 0.0 && piece.exponent <= -1.0)
        throw std::domain_error("integrate_power_against: divergent (exponent <= -1 at 0)");
    double acc = 0.0;
    for (Index i = 0; i < f.cells(); ++i) {
        const double a = std::max(f.grid.left(i), piece.lo);
        const double b = std::min(f.grid.right(i), piece.hi);
        if (b <= a || f.values[i] == 0.0) continue;
        acc += f.values[i] * power_cell_integral(piece.coefficient, piece.exponent, a, b);
    }
    return acc;
}

double integrate_power_against_double_star(const StepFunction& f, double beta,
                                           double r, double hi) {
    if (!f.rearranged)
        throw std::invalid_argument("integrate_power_against_double_star: input must be rearranged");
    if (!(r > 0.0 && r < hi && hi <= 1.0))
        throw std::domain_error("integrate_power_against_double_star: need 0 < r < hi <= 1");
    double acc = 0.0;
    double head = 0.0;  // ∫_0^{left(i)} f
    for (Index i = 0; i < f.cells(); ++i) {
        const double a = f.grid.left(i), b = f.grid.right(i);
        const double lo = std::max(a, r), up = std::min(b, hi);
        if (up > lo) {
            // on this cell f**(s) = v + (head - v a)/s
            const double v = f.values[i];
            acc += power_cell_integral(v, beta, lo, up);
            const double c = head - v * a;
            if (c != 0.0) acc += power_cell_integral(c, beta - 1.0, lo, up);
        }
        head += f.values[i] * (b - a);
        if (b >= hi) break;
    }
    return acc;
}

StepFunction dilate(const StepFunction& f, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("dilate: lambda must be > 0");
    std::vector<double> bp;
    std::vector<double> vals;
    for (Index i = 0; i < f.cells(); ++i) {
        const double b = f.grid.right(i) * lambda;
        if (b >= 1.0) {
            bp.push_back(1.0);
            vals.push_back(f.values[i]);
            break;
        }
        bp.push_back(b);
        vals.push_back(f.values[i]);
    }
    if (bp.empty() || bp.back() < 1.0) {
        bp.push_back(1.0);
        vals.push_back(0.0);
    }
    ArrayXd b(static_cast<Index>(bp.size())), v(static_cast<Index>(vals.size()));
    for (Index i = 0; i < b.size(); ++i) {
        b[i] = bp[static_cast<size_t>(i)];
        v[i] = vals[static_cast<size_t>(i)];
    }
    return StepFunction::on(Grid::from_breakpoints(std::move(b)), std::move(v), f.rearranged);
}

double inner_product(const StepFunction& f, const StepFunction& g) {
    double acc = 0.0;
    Index i = 0, j = 0;
    double pos = 0.0;
    while (i < f.cells() && j < g.cells()) {
        const double b = std::min(f.grid.right(i), g.grid.right(j));
        if (b > pos) acc += f.values[i] * g.values[j] * (b - pos);
        pos = b;
        if (f.grid.right(i) <= pos) ++i;
        if (j < g.cells() && g.grid.right(j) <= pos) ++j;
    }
    return acc;
}

}  // namespace riembed
