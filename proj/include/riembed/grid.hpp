#pragma once
//
// Discretized one-variable functions on (0,1): partitions, nonincreasing
// step functions (decreasing rearrangements), the maximal average f**, and
// exact piecewise-power integration.
//

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>
#include <vector>

namespace riembed {

using Eigen::ArrayXd;
using Eigen::Index;

/// Partition of (0,1). Breakpoints are strictly increasing, lie in (0,1],
/// and end at 1; the left endpoint 0 is implicit. Cell i spans
/// (left(i), right(i)] with left(0) = 0.
struct Grid {
    enum class Scale { LogSpaced, UserSupplied };

    ArrayXd breakpoints;
    Scale scale = Scale::UserSupplied;

    Index cells() const { return breakpoints.size(); }
    double left(Index i) const { return i == 0 ? 0.0 : breakpoints[i - 1]; }
    double right(Index i) const { return breakpoints[i]; }
    double width(Index i) const { return right(i) - left(i); }

    /// Log-spaced grid from eps_min up to 1 with the given cell density.
    /// Consecutive breakpoint ratios are constant to 1e-12 relative error.
    static Grid log_spaced(double eps_min = 1e-14, int cells_per_decade = 64);

    /// Grid from user breakpoints; appends 1 if absent.
    static Grid from_breakpoints(ArrayXd bp);

    void validate() const;
};

/// Nonnegative step function on a Grid, one value per cell. `rearranged`
/// marks functions known to be nonincreasing across cells (f = f*).
struct StepFunction {
    Grid grid;
    ArrayXd values;
    bool rearranged = false;

    static StepFunction on(Grid g, ArrayXd values, bool rearranged = false);

    Index cells() const { return values.size(); }

    /// sup over cells (== value of the first nonempty cell when rearranged).
    double max_value() const { return values.size() ? values.maxCoeff() : 0.0; }
};

/// One term c * s^beta restricted to (lo, hi) in (0,1).
struct PowerPiece {
    double coefficient = 1.0;
    double exponent = 0.0;
    double lo = 0.0;
    double hi = 1.0;
};

/// Exact ∫_a^b c s^beta ds; beta == -1 uses c log(b/a).
/// Throws when the integral diverges (beta <= -1 with a == 0).
double power_cell_integral(double c, double beta, double a, double b);

/// Decreasing rearrangement of a finite multiset of (value, measure)
/// samples whose measures sum to 1 (tolerance 1e-12). Output cells are the
/// sorted values with widths equal to the corresponding measures.
StepFunction rearrange(const std::vector<std::pair<double, double>>& samples);
StepFunction rearrange(const ArrayXd& values, const ArrayXd& measures);

/// ∫_0^t f, exact cell-by-cell.
double cumulative(const StepFunction& f, double t);

/// f**(t) = (1/t) ∫_0^t f*, for rearranged f and t in (0,1).
double double_star(const StepFunction& f, double t);

/// Exact ∫ over cells of (step value) x (power piece).
double integrate_power_against(const StepFunction& f, const PowerPiece& piece);

/// Exact ∫_r^hi s^beta f**(s) ds for rearranged f (f** is v + C/s per cell,
/// so every cell contributes in closed form).
double integrate_power_against_double_star(const StepFunction& f, double beta,
                                           double r, double hi);

/// Dilation (E_lambda f)(s) = f(s/lambda) on (0, min(lambda,1)], 0 beyond.
StepFunction dilate(const StepFunction& f, double lambda);

/// Exact ∫_0^1 f g for two step functions (breakpoints merged).
double inner_product(const StepFunction& f, const StepFunction& g);

}  // namespace riembed
