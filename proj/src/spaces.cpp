#include "riembed/spaces.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace riembed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double holder_conjugate(double p) {
    if (p == 1.0) return kInf;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

}  // namespace

RiSpace RiSpace::lebesgue(double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("RiSpace::lebesgue: p must lie in [1, inf]");
    RiSpace X;
    X.family_ = Family::Lebesgue;
    X.p_ = p;
    return X;
}

RiSpace RiSpace::weak_lebesgue(double p) {
    if (!(p > 1.0) || std::isinf(p))
        throw std::invalid_argument("RiSpace::weak_lebesgue: p must lie in (1, inf)");
    RiSpace X;
    X.family_ = Family::WeakLebesgue;
    X.p_ = p;
    return X;
}

RiSpace RiSpace::lorentz(double p, double q) {
    if (!(p > 1.0) || std::isinf(p) || !(q >= 1.0))
        throw std::invalid_argument("RiSpace::lorentz: need p in (1, inf), q in [1, inf]");
    RiSpace X;
    X.family_ = Family::Lorentz;
    X.p_ = p;
    X.q_ = q;
    return X;
}

RiSpace RiSpace::orlicz(YoungFunction A) {
    RiSpace X;
    X.family_ = Family::Orlicz;
    X.A_ = std::make_shared<YoungFunction>(std::move(A));
    return X;
}

RiSpace RiSpace::zygmund(double p, double alpha) {
    RiSpace X;
    X.family_ = Family::Zygmund;
    X.p_ = p;
    X.alpha_ = alpha;
    X.A_ = std::make_shared<YoungFunction>(YoungFunction::power_log(p, alpha));
    return X;
}

const YoungFunction& RiSpace::young() const {
    if (!A_) throw std::logic_error("RiSpace::young: not an Orlicz-type space");
    return *A_;
}

RiSpace RiSpace::associate() const {
    switch (family_) {
        case Family::Lebesgue:
            return lebesgue(holder_conjugate(p_));
        case Family::WeakLebesgue:
            return lorentz(holder_conjugate(p_), 1.0);
        case Family::Lorentz:
            return lorentz(holder_conjugate(p_), holder_conjugate(q_));
        case Family::Zygmund:
            if (p_ > 1.0) {
                const double pp = holder_conjugate(p_);
                return zygmund(pp, -alpha_ * pp / p_);
            }
            if (alpha_ == 0.0) return orlicz(YoungFunction::linf_like());
            return orlicz(conjugate_young(*A_));
        case Family::Orlicz:
            switch (A_->kind()) {
                case YoungFunction::Kind::Power: {
                    // canonical representative of the conjugate class, scaled
                    // so that the fundamental-function identity is exact
                    const double p = A_->p(), c = A_->scale();
                    if (p == 1.0) return orlicz(YoungFunction::linf_like(c));
                    const double pp = holder_conjugate(p);
                    return orlicz(YoungFunction::power(pp, std::pow(c, -pp / p)));
                }
                case YoungFunction::Kind::LinfLike:
                    return orlicz(YoungFunction::power(1.0, A_->threshold()));
                case YoungFunction::Kind::PowerLog: {
                    const double p = A_->p(), a = A_->alpha();
                    if (p > 1.0) {
                        const double pp = holder_conjugate(p);
                        return orlicz(YoungFunction::power_log(pp, -a * pp / p));
                    }
                    return orlicz(conjugate_young(*A_));
                }
                case YoungFunction::Kind::Tabulated:
                    return orlicz(conjugate_young(*A_));
            }
    }
    throw std::logic_error("RiSpace::associate: unreachable");
}

std::string RiSpace::describe() const {
    std::ostringstream os;
    switch (family_) {
        case Family::Lebesgue:
            if (std::isinf(p_)) return "Linf";
            os << "L:" << p_;
            break;
        case Family::WeakLebesgue:
            os << "Lw:" << p_;
            break;
        case Family::Lorentz:
            os << "Lor:" << p_ << ":";
            if (std::isinf(q_))
                os << "inf";
            else
                os << q_;
            break;
        case Family::Zygmund:
            os << "Zyg:" << p_ << ":" << alpha_;
            break;
        case Family::Orlicz:
            os << "Orl:" << A_->describe();
            break;
    }
    return os.str();
}

NormValue norm(const RiSpace& X, const StepFunction& f) {
    if (!f.rearranged) throw std::invalid_argument("norm: input must be rearranged");
    switch (X.family()) {
        case Family::Lebesgue: {
            const double p = X.p();
            if (std::isinf(p)) return {f.max_value(), NormValue::Method::ClosedForm};
            double acc = 0.0;
            for (Index i = 0; i < f.cells(); ++i)
                acc += std::pow(f.values[i], p) * f.grid.width(i);
            return {std::pow(acc, 1.0 / p), NormValue::Method::ClosedForm};
        }
        case Family::WeakLebesgue: {
            double best = 0.0;
            for (Index i = 0; i < f.cells(); ++i)
                best = std::max(best, f.values[i] * std::pow(f.grid.right(i), 1.0 / X.p()));
            return {best, NormValue::Method::ClosedForm};
        }
        case Family::Lorentz: {
            const double p = X.p(), q = X.q();
            if (std::isinf(q)) {
                double best = 0.0;
                for (Index i = 0; i < f.cells(); ++i)
                    best = std::max(best, f.values[i] * std::pow(f.grid.right(i), 1.0 / p));
                return {best, NormValue::Method::ClosedForm};
            }
            // || t^(1/p - 1/q) f*(t) ||_q, exact per cell
            double acc = 0.0;
            for (Index i = 0; i < f.cells(); ++i) {
                if (f.values[i] == 0.0) continue;
                acc += std::pow(f.values[i], q) *
                       power_cell_integral(1.0, q / p - 1.0, f.grid.left(i), f.grid.right(i));
            }
            return {std::pow(acc, 1.0 / q), NormValue::Method::ClosedForm};
        }
        case Family::Orlicz:
        case Family::Zygmund:
            return {luxemburg(X.young(), f), NormValue::Method::LuxemburgBisection};
    }
    throw std::logic_error("norm: unreachable");
}

NormValue associate_norm(const RiSpace& X, const StepFunction& g) {
    return norm(X.associate(), g);
}

NormValue duality_grid_estimate(const RiSpace& X, const StepFunction& g) {
    if (!g.rearranged)
        throw std::invalid_argument("duality_grid_estimate: input must be rearranged");
    double best = 0.0;
    // indicators chi_(0,a) normalized by the fundamental function
    for (double a : {1e-6, 1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.2, 0.5, 1.0}) {
        const double fund = fundamental(X, std::min(a, 1.0 - 1e-12));
        if (!(fund > 0.0) || !std::isfinite(fund)) continue;
        best = std::max(best, cumulative(g, a) / fund);
    }
    // truncated powers t^(-theta) on the default grid, normalized in X
    const Grid grid = Grid::log_spaced(1e-10, 16);
    for (double theta : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        ArrayXd v(grid.cells());
        for (Index i = 0; i < grid.cells(); ++i) v[i] = std::pow(grid.right(i), -theta);
        StepFunction f = StepFunction::on(grid, std::move(v), true);
        const double nf = norm(X, f);
        if (!(nf > 0.0) || !std::isfinite(nf)) continue;
        best = std::max(best, inner_product(f, g) / nf);
    }
    return {best, NormValue::Method::DualityGrid};
}

double fundamental(const RiSpace& X, double r) {
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("fundamental: r must lie in (0,1)");
    switch (X.family()) {
        case Family::Lebesgue:
            return std::isinf(X.p()) ? 1.0 : std::pow(r, 1.0 / X.p());
        case Family::WeakLebesgue:
            return std::pow(r, 1.0 / X.p());
        case Family::Lorentz: {
            const double p = X.p(), q = X.q();
            if (std::isinf(q)) return std::pow(r, 1.0 / p);
            return std::pow(p / q, 1.0 / q) * std::pow(r, 1.0 / p);
        }
        case Family::Orlicz:
        case Family::Zygmund:
            return 1.0 / X.young().inverse(1.0 / r);
    }
    throw std::logic_error("fundamental: unreachable");
}

NormValue dilation_norm(const RiSpace& X, const StepFunction& f, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("dilation_norm: lambda must be > 0");
    if (!f.rearranged) throw std::invalid_argument("dilation_norm: input must be rearranged");
    return norm(X, dilate(f, lambda));
}

}  // namespace riembed
