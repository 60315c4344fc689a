#pragma once
//
// Young functions: evaluation, generalized inverses, exact and tabulated
// Legendre conjugates, the Luxemburg norm solver, and the integral
// transforms behind optimal Orlicz target weights.
//

#include "riembed/grid.hpp"

#include <memory>
#include <string>

namespace riembed {

/// Convex, left-continuous A on [0,∞) with A(0) = 0, not identically 0.
///
/// Kinds:
///  - Power(p, c):      c t^p, p >= 1
///  - PowerLog(p, a):   canonical representative of t^p (log(e+t))^a,
///                      convexified below a junction point when a < 0 and
///                      rescaled so A(1) <= 1
///  - Tabulated:        log-log sample table with power continuation
///  - LinfLike(c):      ∞·χ_(c,∞)  (generates L^∞ when c = 1)
class YoungFunction {
public:
    enum class Kind { Power, PowerLog, Tabulated, LinfLike };

    static YoungFunction power(double p, double scale = 1.0);
    static YoungFunction power_log(double p, double alpha);
    static YoungFunction tabulated(ArrayXd t, ArrayXd a);
    static YoungFunction linf_like(double threshold = 1.0);

    double operator()(double t) const;
    /// Right-continuous generalized inverse sup{t : A(t) <= y}.
    double inverse(double y) const;

    Kind kind() const { return kind_; }
    double p() const { return p_; }
    double alpha() const { return alpha_; }
    double scale() const { return scale_; }
    double threshold() const { return threshold_; }
    std::string describe() const;

    friend double conjugate(const YoungFunction& A, double t);

private:
    Kind kind_ = Kind::Power;
    double p_ = 1.0;
    double alpha_ = 0.0;
    double scale_ = 1.0;      // multiplicative normalization
    double threshold_ = 1.0;  // LinfLike jump location
    double junction_ = 0.0;   // PowerLog: power head below this point
    double head_exponent_ = 1.0;
    double head_scale_ = 1.0;
    ArrayXd tab_log_t_, tab_log_a_;  // Tabulated, strictly increasing in t
    double raw(double t) const;      // PowerLog before rescale
};

struct OrliczTargetParams {
    int n = 2;  ///< dimension, n >= 2
    int m = 1;  ///< derivative order, m >= 1
    int k = 0;  ///< Campanato order, 0 <= k <= m-1 where applicable
    void validate_morrey() const;
    void validate_campanato() const;
};

/// Exact Young conjugate value sup{τ t − A(τ)}. Closed form for Power and
/// LinfLike; golden-section refinement of a log-grid scan otherwise
/// (relative tolerance 1e-8). Tabulated uses the discrete transform over
/// its own sample grid, which never exceeds the true conjugate.
double conjugate(const YoungFunction& A, double t);

/// The conjugate as a YoungFunction: Power and LinfLike map in closed
/// form, everything else is densely tabulated from `conjugate`.
YoungFunction conjugate_young(const YoungFunction& A);

/// Luxemburg norm inf{λ > 0 : ∫_0^1 A(f/λ) <= 1} by bisection
/// (relative tolerance 1e-10). Returns 0 for f == 0 and +∞ when no
/// finite λ closes the integral.
double luxemburg(const YoungFunction& A, const StepFunction& f);

/// E_m(t) = t^{n/(n-m)} ∫_0^t Ã(τ) τ^{-1-n/(n-m)} dτ, precomputed on a
/// log-spaced τ table with per-cell power-law fits integrated in closed
/// form. When the lower integral diverges (growth of A at or above t^{n/m})
/// the integral is started at τ = 1 instead; only the behavior of E_m for
/// large arguments is meaningful in that regime and the optimal-weight
/// formulas below are unaffected.
class EmFunction {
public:
    EmFunction(const YoungFunction& A, int n, int m);

    double operator()(double t) const;
    /// Right-continuous inverse sup{t : E_m(t) <= y} by bisection
    /// (relative tolerance 1e-10, 200 iteration cap).
    double inverse(double y) const;
    bool lower_cutoff() const { return cutoff_; }

private:
    double gamma_ = 2.0;  // n/(n-m)
    bool cutoff_ = false;
    bool degenerate_ = false;
    bool linf_conjugate_ = false;  // Ã jumps to ∞ at a threshold
    double linf_threshold_ = 1.0;
    ArrayXd tau_, conj_, prefix_;  // nodes, Ã values, ∫ up to node
    double tail_exponent_ = 0.0;   // power fit of Ã below the first node
    friend double em_function(const YoungFunction&, int, int, double);
};

double em_function(const YoungFunction& A, int n, int m, double t);

/// Optimal Morrey weight 1 / (r^{n-m} E_m^{-1}(r^{-n})) for r in (0,1].
class OrliczMorreyWeight {
public:
    OrliczMorreyWeight(const YoungFunction& A, int n, int m);
    double operator()(double r) const;

private:
    int n_, m_;
    std::shared_ptr<EmFunction> em_;
};

/// Optimal Campanato weight: 1 / (r^{m-k-n} E_{m,k}^{-1}(r^{-n})) for
/// k <= m-2 (E with order m-k-1), and r A^{-1}(r^{-n}) for k = m-1.
class OrliczCampanatoWeight {
public:
    OrliczCampanatoWeight(const YoungFunction& A, int n, int m, int k);
    double operator()(double r) const;

private:
    int n_, m_, k_;
    std::shared_ptr<YoungFunction> A_;
    std::shared_ptr<EmFunction> em_;  // only for k <= m-2
};

double orlicz_morrey_weight(const YoungFunction& A, int n, int m, double r);
double orlicz_campanato_weight(const YoungFunction& A, int n, int m, int k, double r);

}  // namespace riembed
