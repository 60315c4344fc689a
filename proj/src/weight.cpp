#include "riembed/weight.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace riembed {

Weight Weight::power_log(double a, double b, double c) {
    Weight w;
    w.kind_ = Kind::PowerLogClosedForm;
    w.a_ = a;
    w.b_ = b;
    w.c_ = c;
    return w;
}

Weight Weight::sampled(ArrayXd r, ArrayXd phi) {
    if (r.size() != phi.size() || r.size() < 2)
        throw std::invalid_argument("Weight::sampled: need matching arrays, size >= 2");
    double prev = 0.0;
    for (Index i = 0; i < r.size(); ++i) {
        if (!(r[i] > prev))
            throw std::invalid_argument("Weight::sampled: r must be strictly increasing and > 0");
        if (!(phi[i] > 0.0) || !std::isfinite(phi[i]))
            throw std::invalid_argument("Weight::sampled: phi must be finite and > 0");
        prev = r[i];
    }
    Weight w;
    w.kind_ = Kind::Sampled;
    w.r_ = r.log();
    w.phi_ = phi.log();
    return w;
}

double Weight::operator()(double r) const {
    if (!(r > 0.0)) throw std::domain_error("Weight: r must be > 0");
    if (kind_ == Kind::PowerLogClosedForm) {
        double lv = a_ * std::log(r);
        if (b_ != 0.0) lv += b_ * std::log(std::max(std::log(1.0 / r), 1.0));
        if (c_ != 0.0)
            lv += c_ * std::log(std::max(std::log(std::max(std::log(1.0 / r), 1.0)), 1.0));
        return std::exp(lv);
    }
    const double lr = std::log(r);
    const Index n = r_.size();
    if (lr >= r_[n - 1]) return std::exp(phi_[n - 1]);  // constant continuation
    Index j = static_cast<Index>(std::upper_bound(r_.data(), r_.data() + n, lr) - r_.data());
    const Index lo = std::clamp<Index>(j - 1, 0, n - 2);
    const double slope = (phi_[lo + 1] - phi_[lo]) / (r_[lo + 1] - r_[lo]);
    return std::exp(phi_[lo] + slope * (lr - r_[lo]));
}

std::string Weight::describe() const {
    std::ostringstream os;
    if (kind_ == Kind::PowerLogClosedForm) {
        if (a_ == 0.0 && b_ == 0.0 && c_ == 0.0) return "one";
        if (c_ != 0.0)
            os << "powloglog:" << a_ << ":" << b_ << ":" << c_;
        else if (b_ != 0.0)
            os << "powlog:" << a_ << ":" << b_;
        else
            os << "pow:" << a_;
    } else {
        os << "sampled[" << r_.size() << "]";
    }
    return os.str();
}

std::string Weight::admissibility_failure(double r_max) const {
    for (double lad : {1e-2, 1e-1, 0.5}) {
        if (lad >= r_max) continue;
        double inf_val = std::numeric_limits<double>::infinity();
        double sup_val = 0.0;
        double worst_r = lad;
        const int steps = 200;
        for (int i = 0; i <= steps; ++i) {
            const double r = lad * std::pow(r_max / lad, static_cast<double>(i) / steps);
            const double v = (*this)(r);
            sup_val = std::max(sup_val, v);
            if (v < inf_val) {
                inf_val = v;
                worst_r = r;
            }
        }
        // a collapse of ten orders on a fixed compact window counts as a
        // vanishing infimum for grid purposes
        if (!(inf_val > 0.0) || inf_val < 1e-10 * sup_val) {
            std::ostringstream os;
            os << "weight not admissible: inf over [" << lad << ", " << r_max
               << "] vanishes near r = " << worst_r;
            return os.str();
        }
    }
    return {};
}

bool Weight::integrable_against_ds_over_s() const {
    double a = a_, b = b_, c = c_;
    if (kind_ == Kind::Sampled) {
        // fitted slope at the small end; a log correction is not resolvable
        // from two samples, so only the power part decides
        a = (phi_[1] - phi_[0]) / (r_[1] - r_[0]);
        b = c = 0.0;
    }
    if (a > 0.0) return true;
    if (a < 0.0) return false;
    if (b < -1.0) return true;
    if (b > -1.0) return false;
    return c < -1.0;
}

}  // namespace riembed
