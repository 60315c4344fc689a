#pragma once
//
// Sharpness witnesses: centered averages of the extremal radial family,
// lower-bound tracking of the Morrey criterion, and centered-ball Morrey
// norms of radial profiles in the measure coordinate.
//

#include "riembed/criteria.hpp"

#include <vector>

namespace riembed {

/// Profile in the measure coordinate t = w_n |x|^n; averages over centered
/// balls of measure t are (1/t) ∫_0^t profile.
struct RadialProfile {
    StepFunction profile;

    static RadialProfile from(StepFunction f) {
        for (Index i = 0; i < f.values.size(); ++i)
            if (!(f.values[i] >= 0.0))
                throw std::invalid_argument("RadialProfile: values must be >= 0");
        return {std::move(f)};
    }
};

/// Average over the centered ball of measure r of the extremal function
/// built from f: (1/r) ∫_0^r ∫_rho^1 s^(-m+m/n) f(s) (s-rho)^(m-1) ds drho,
/// expanded binomially and integrated cell-by-cell in closed form.
/// Dominates 2^{-m} ∫_r^1 s^(-1+m/n) f(s) ds.
double extremal_vf_centered_average(const StepFunction& f, int n, int m, double r);

struct WitnessSample {
    double r = 0.0;
    double best_ratio = 0.0;        // max over the dictionary of avg / phi(r^(1/n))
    double kernel_over_phi = 0.0;   // criterion value at the same r
    double tracking = 0.0;          // best_ratio / kernel_over_phi
    std::string best_function;
};

struct WitnessReport {
    std::vector<WitnessSample> samples;
    double sup_ratio = 0.0;
};

/// For a dictionary of unit-norm functions in X (indicators, truncated
/// powers, and the exact dual maximizer when X is Lebesgue), the sup over
/// the dictionary of the extremal centered average against phi. Entries of
/// r_list are ball measures; phi is evaluated at the radius r^(1/n). The
/// tracking column relates the best ratio to the criterion value at the
/// same scale; the dual maximizer keeps it within [2^{-m}, 1] up to
/// sampling resolution.
WitnessReport morrey_lower_witness(const RiSpace& X, int n, int m, const Weight& phi,
                                   const std::vector<double>& r_list);

/// sup over sampled t of (1/phi(t^(1/n))) (1/t) ∫_0^t u; a lower bound for
/// the Morrey norm, and never above the Marcinkiewicz norm of u*.
double radial_morrey_norm(const RadialProfile& u, const Weight& phi, int n,
                          const std::vector<double>& samples);

}  // namespace riembed
