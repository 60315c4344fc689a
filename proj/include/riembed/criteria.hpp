#pragma once
//
// Embedding criteria: kernel norms in the associate space, boundedness and
// vanishing checks over a log grid, optimal target weights, optimal domain
// functionals, Marcinkiewicz norms, and the modulus-of-continuity targets.
//

#include "riembed/spaces.hpp"
#include "riembed/weight.hpp"

#include <functional>
#include <optional>
#include <string>

namespace riembed {

enum class Trend { Bounded, Diverging, Vanishing };
enum class Verdict { Holds, Fails, Inconclusive };

std::string to_string(Trend t);
std::string to_string(Verdict v);

/// Numerical tolerances of the grid-sup verdicts. The criterion values are
/// scale-free in log r, so rates over the last two decades are the robust
/// observable; ties at the boundary are never promoted to "holds".
struct CriterionTolerances {
    double slope_tol = 0.02;      // |d log v / d log(1/r)| below this is flat
    double log_slope_tol = 0.05;  // same for the log log(1/r) regressor
    double vanish_tol = 0.2;      // vanishing: window values vs value at 1e-2
    double growth_tie_tol = 0.004; // flat slope but values still growing
                                   // (must sit below the growth a log_slope_tol
                                   // drift can produce across the window)
};

struct EmbeddingReport {
    std::string theorem;  // morrey | morrey-vanishing | campanato-subcritical |
                          // campanato-critical | campanato-*-vanishing
    Eigen::ArrayX2d grid_values;  // column 0: r, column 1: criterion value
    double finite_sup = 0.0;
    Trend trend = Trend::Bounded;
    double rate = 0.0;      // exponent of the power part over the window
    double log_rate = 0.0;  // exponent of the log(1/r) part
    Verdict verdict = Verdict::Inconclusive;
    std::string note;
};

struct CheckOptions {
    ArrayXd r_values;  // empty: default log grid
    CriterionTolerances tol;
};

/// Default evaluation abscissas: log-spaced grid breakpoints in (0,1).
ArrayXd default_r_values(double eps_min = 1e-14, int per_decade = 64);

// --- kernel norms ----------------------------------------------------------

/// ||s^beta chi_(a,1)||_X for a in [0,1). The kernel is monotone on its
/// support; Lebesgue and the weak families are closed form, Lorentz uses
/// near-exact per-cell Gauss quadrature of the rearrangement, Orlicz
/// bisects the Luxemburg norm of a step representation refined near 0.
double kernel_tail_norm(const RiSpace& X, double beta, double a);

/// ||s^beta chi_(0,a)||_X, same evaluation strategies.
double kernel_head_norm(const RiSpace& X, double beta, double a);

/// Caches the associate space of X (conjugate tabulations can be costly).
class KernelNorms {
public:
    KernelNorms(const RiSpace& X) : assoc_(X.associate()) {}
    const RiSpace& associate() const { return assoc_; }
    double morrey(int n, int m, double r) const;
    double campanato(int n, int m, int k, double r) const;
    double tail(double beta, double a) const { return kernel_tail_norm(assoc_, beta, a); }
    double head(double beta, double a) const { return kernel_head_norm(assoc_, beta, a); }

private:
    RiSpace assoc_;
};

double kernel_norm_morrey(const RiSpace& X, int n, int m, double r);
double kernel_norm_campanato(const RiSpace& X, int n, int m, int k, double r);

// --- embedding checks ------------------------------------------------------

EmbeddingReport check_morrey(const RiSpace& X, int n, int m, const Weight& phi,
                             const CheckOptions& opt = {});
EmbeddingReport check_campanato(const RiSpace& X, int n, int m, int k, const Weight& phi,
                                const CheckOptions& opt = {});
EmbeddingReport check_vanishing_morrey(const RiSpace& X, int n, int m, const Weight& phi,
                                       const CheckOptions& opt = {});
EmbeddingReport check_vanishing_campanato(const RiSpace& X, int n, int m, int k,
                                          const Weight& phi, const CheckOptions& opt = {});

// --- optimal targets and domains -------------------------------------------

struct TargetSampling {
    double r_min = 1e-13;
    double r_max = 0.5;  // constant continuation beyond
    int per_decade = 16;
    ArrayXd r_values() const;
};

Weight optimal_morrey_target(const RiSpace& X, int n, int m,
                             const TargetSampling& s = {});
Weight optimal_campanato_target(const RiSpace& X, int n, int m, int k,
                                const TargetSampling& s = {});

double optimal_morrey_domain_norm(const Weight& phi, int n, int m, const StepFunction& f,
                                  const ArrayXd& r_values = {});
double optimal_campanato_domain_norm(const Weight& phi, int n, int m, int k,
                                     const StepFunction& f, const ArrayXd& r_values = {});

double marcinkiewicz_norm(const Weight& phi, int n, const StepFunction& f,
                          const ArrayXd& t_values = {});

// --- comparison with Holder-type targets ------------------------------------

struct ModulusTargets {
    double theta = 0.0;      // local part, defined for 1 <= m <= n-1
    double rho = 0.0;        // tail part, defined for 2 <= m <= n (NaN otherwise)
    double sigma_hat = 0.0;  // optimal modulus of continuity
};

ModulusTargets modulus_targets(const RiSpace& X, int n, int m, double r);

/// Ratio (∫_eps^r phi(s)/s ds) / sigma(r); +inf when the integral diverges
/// at 0. Boundedness of the ratio over the grid is the criterion proxy.
double campanato_to_holder_condition(const Weight& phi, const Weight& sigma, double r,
                                     double eps_min = 1e-14);

// --- shared numerics ---------------------------------------------------------

/// Composite 15-point Gauss-Legendre over log-spaced cells.
double integrate_log_cells(const std::function<double(double)>& f, double lo, double hi,
                           int cells_per_decade = 16);

/// Window regression of log(value) on {1, log(1/r), log log(1/r)} over the
/// last two decades of the grid.
struct TrendFit {
    Trend trend = Trend::Bounded;
    double rate = 0.0;
    double log_rate = 0.0;
    bool growing = false;
    bool has_infinite = false;
};
TrendFit classify_trend(const ArrayXd& r, const ArrayXd& v, const CriterionTolerances& tol);

}  // namespace riembed
