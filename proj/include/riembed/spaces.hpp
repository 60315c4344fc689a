#pragma once
//
// Rearrangement-invariant norm families on (0,1): Lebesgue, weak Lebesgue,
// Lorentz, Orlicz and Zygmund, their associate families, fundamental
// functions, and dilation.
//

#include "riembed/grid.hpp"
#include "riembed/young.hpp"

#include <memory>
#include <string>

namespace riembed {

enum class Family { Lebesgue, WeakLebesgue, Lorentz, Orlicz, Zygmund };

/// Descriptor of one rearrangement-invariant norm. Parameter ranges:
/// Lebesgue p in [1,∞], weak Lebesgue p in (1,∞), Lorentz p in (1,∞) with
/// q in [1,∞], Zygmund p > 1 with any alpha or p = 1 with alpha >= 0.
/// Zygmund spaces are realized as Orlicz spaces of the canonical Young
/// representative.
class RiSpace {
public:
    static RiSpace lebesgue(double p);
    static RiSpace weak_lebesgue(double p);
    static RiSpace lorentz(double p, double q);
    static RiSpace orlicz(YoungFunction A);
    static RiSpace zygmund(double p, double alpha);

    Family family() const { return family_; }
    double p() const { return p_; }
    double q() const { return q_; }
    double alpha() const { return alpha_; }
    const YoungFunction& young() const;
    bool uses_luxemburg() const {
        return family_ == Family::Orlicz || family_ == Family::Zygmund;
    }

    /// Associate-family descriptor. Lebesgue(p)' = Lebesgue(p'),
    /// WeakLebesgue(p)' = Lorentz(p',1), Lorentz(p,q)' = Lorentz(p',q').
    /// Orlicz and Zygmund spaces map to the canonical representative of
    /// the conjugate class: pow p -> pow p', powlog(p,a) -> powlog(p',-a p'/p)
    /// for p > 1, and the exact tabulated conjugate when p = 1.
    RiSpace associate() const;

    std::string describe() const;

private:
    Family family_ = Family::Lebesgue;
    double p_ = 2.0;
    double q_ = 2.0;
    double alpha_ = 0.0;
    std::shared_ptr<const YoungFunction> A_;
};

struct NormValue {
    enum class Method { ClosedForm, LuxemburgBisection, DualityGrid };
    double value = 0.0;
    Method method = Method::ClosedForm;
    bool finite() const { return std::isfinite(value); }
    operator double() const { return value; }
};

/// ||f||_X for a rearranged step function. Divergent norms come back as a
/// +∞ sentinel, never as an error.
NormValue norm(const RiSpace& X, const StepFunction& f);

/// ||g||_{X'} computed through the associate-family rule.
NormValue associate_norm(const RiSpace& X, const StepFunction& g);

/// Lower bound for associate_norm: sup of ∫ f g* over a finite dictionary
/// of test functions normalized in X.
NormValue duality_grid_estimate(const RiSpace& X, const StepFunction& g);

/// ||chi_(0,r)||_X in closed form.
double fundamental(const RiSpace& X, double r);

/// ||E_lambda f||_X; bounded by max(1, 1/lambda) ||f||_X.
NormValue dilation_norm(const RiSpace& X, const StepFunction& f, double lambda);

}  // namespace riembed
