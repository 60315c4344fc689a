#pragma once
//
// Admissible weights phi on (0, inf): closed-form power-log shapes
// r^a (log 1/r)^b (loglog 1/r)^c near 0, and sampled weights with
// geometric interpolation and constant continuation on the right.
//

#include "riembed/grid.hpp"

#include <string>
#include <vector>

namespace riembed {

class Weight {
public:
    enum class Kind { PowerLogClosedForm, Sampled };

    /// r^a (log 1/r)^b (loglog 1/r)^c with the log factors clamped at 1
    /// away from 0, so pure powers stay exact on all of (0, inf).
    static Weight power_log(double a, double b = 0.0, double c = 0.0);
    static Weight one() { return power_log(0.0); }

    /// Samples (r_i, phi_i), r strictly increasing and positive. Values are
    /// interpolated geometrically, extended by the boundary power slopes on
    /// the left and held constant on the right.
    static Weight sampled(ArrayXd r, ArrayXd phi);

    double operator()(double r) const;

    Kind kind() const { return kind_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    const ArrayXd& sample_r() const { return r_; }
    const ArrayXd& sample_phi() const { return phi_; }
    std::string describe() const;

    /// Admissibility diagnostic: inf over [a, r_max] positive for each
    /// ladder point a. Returns an empty string when admissible, otherwise
    /// a description of the first failure.
    std::string admissibility_failure(double r_max = 1.0) const;
    bool admissible(double r_max = 1.0) const { return admissibility_failure(r_max).empty(); }

    /// True when ∫_0 phi(s)/s ds converges at 0 (decided from the closed
    /// form, or from the fitted slope at the small end for sampled weights).
    bool integrable_against_ds_over_s() const;

private:
    Kind kind_ = Kind::PowerLogClosedForm;
    double a_ = 0.0, b_ = 0.0, c_ = 0.0;
    ArrayXd r_, phi_;  // sampled form, log-log
};

}  // namespace riembed
