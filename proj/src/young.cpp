#include "riembed/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace riembed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_e_plus(double t) { return std::log(std::exp(1.0) + t); }

}  // namespace

// ---------------------------------------------------------------------------
// YoungFunction
// ---------------------------------------------------------------------------

YoungFunction YoungFunction::power(double p, double scale) {
    if (!(p >= 1.0) || !(scale > 0.0))
        throw std::invalid_argument("YoungFunction::power: need p >= 1 and scale > 0");
    YoungFunction A;
    A.kind_ = Kind::Power;
    A.p_ = p;
    A.scale_ = scale;
    return A;
}

YoungFunction YoungFunction::power_log(double p, double alpha) {
    if (!((p > 1.0) || (p == 1.0 && alpha >= 0.0)))
        throw std::invalid_argument("YoungFunction::power_log: need p > 1, or p = 1 with alpha >= 0");
    YoungFunction A;
    A.kind_ = Kind::PowerLog;
    A.p_ = p;
    A.alpha_ = alpha;
    if (alpha < 0.0) {
        // t^p log(e+t)^alpha loses convexity at moderate t for alpha < 0;
        // continue with a pure power below the last point where convexity
        // fails. With u(t) = t h'/h = p + alpha psi and psi = t/((e+t)L),
        // convexity of h is u^2 - u + alpha t psi' >= 0.
        const double e = std::exp(1.0);
        auto effective = [&](double t) {
            return p + alpha * t / ((e + t) * log_e_plus(t));
        };
        auto convex_ok = [&](double t) {
            const double L = log_e_plus(t);
            const double u = effective(t);
            const double t_psi_prime = t * (e * L - t) / ((e + t) * (e + t) * L * L);
            return u > 1.0 && u * u - u + alpha * t_psi_prime >= 0.0;
        };
        double t_last = 0.0;
        for (double t = 1e-2; t <= 1e12; t *= 1.0905077326652577)  // 64 per decade
            if (!convex_ok(t)) t_last = t;
        double t_junction = std::max(1.0, 2.0 * t_last);
        while (!convex_ok(t_junction) && t_junction < 1e300) t_junction *= 2.0;
        const double eff = effective(t_junction);
        A.junction_ = t_junction;
        A.head_exponent_ = eff;
        A.head_scale_ = std::exp((p - eff) * std::log(t_junction) +
                                 alpha * std::log(log_e_plus(t_junction)));
    }
    const double raw1 = A.raw(1.0);
    A.scale_ = raw1 > 1.0 ? 1.0 / raw1 : 1.0;
    return A;
}

YoungFunction YoungFunction::tabulated(ArrayXd t, ArrayXd a) {
    if (t.size() != a.size() || t.size() < 2)
        throw std::invalid_argument("YoungFunction::tabulated: need matching arrays, size >= 2");
    YoungFunction A;
    A.kind_ = Kind::Tabulated;
    double zero_below = 0.0;
    std::vector<double> lt, la;
    double prev_t = 0.0, prev_a = -1.0;
    for (Index i = 0; i < t.size(); ++i) {
        if (!(t[i] > prev_t))
            throw std::invalid_argument("YoungFunction::tabulated: t must be strictly increasing");
        if (a[i] < prev_a)
            throw std::invalid_argument("YoungFunction::tabulated: values must be nondecreasing");
        prev_t = t[i];
        prev_a = a[i];
        if (a[i] <= 0.0) {
            zero_below = t[i];
            continue;
        }
        if (!std::isfinite(a[i])) break;  // power continuation covers the rest
        lt.push_back(std::log(t[i]));
        la.push_back(std::log(a[i]));
    }
    if (lt.size() < 2)
        throw std::invalid_argument("YoungFunction::tabulated: too few positive finite samples");
    A.tab_log_t_ = Eigen::Map<ArrayXd>(lt.data(), static_cast<Index>(lt.size()));
    A.tab_log_a_ = Eigen::Map<ArrayXd>(la.data(), static_cast<Index>(la.size()));
    A.junction_ = zero_below;  // A == 0 on [0, junction_]
    return A;
}

YoungFunction YoungFunction::linf_like(double threshold) {
    if (!(threshold > 0.0))
        throw std::invalid_argument("YoungFunction::linf_like: threshold must be > 0");
    YoungFunction A;
    A.kind_ = Kind::LinfLike;
    A.threshold_ = threshold;
    return A;
}

double YoungFunction::raw(double t) const {
    if (t <= junction_) return head_scale_ * std::pow(t, head_exponent_);
    return std::pow(t, p_) * std::pow(log_e_plus(t), alpha_);
}

double YoungFunction::operator()(double t) const {
    if (!(t > 0.0)) return 0.0;
    switch (kind_) {
        case Kind::Power:
            return scale_ * std::pow(t, p_);
        case Kind::PowerLog:
            return scale_ * raw(t);
        case Kind::LinfLike:
            return t <= threshold_ ? 0.0 : kInf;
        case Kind::Tabulated: {
            if (t <= junction_) return 0.0;
            const double lt = std::log(t);
            const Index n = tab_log_t_.size();
            Index j = static_cast<Index>(
                std::upper_bound(tab_log_t_.data(), tab_log_t_.data() + n, lt) -
                tab_log_t_.data());
            Index lo = std::clamp<Index>(j - 1, 0, n - 2);
            const double slope =
                (tab_log_a_[lo + 1] - tab_log_a_[lo]) / (tab_log_t_[lo + 1] - tab_log_t_[lo]);
            return std::exp(tab_log_a_[lo] + slope * (lt - tab_log_t_[lo]));
        }
    }
    return 0.0;
}

double YoungFunction::inverse(double y) const {
    if (!(y >= 0.0)) throw std::domain_error("YoungFunction::inverse: y must be >= 0");
    switch (kind_) {
        case Kind::Power:
            return std::pow(y / scale_, 1.0 / p_);
        case Kind::LinfLike:
            return threshold_;
        case Kind::PowerLog: {
            if (y == 0.0) return 0.0;
            // monotone continuous; bisect in log t from a power seed
            double t = std::pow(y / scale_, 1.0 / p_);
            double lo = t, hi = t;
            while ((*this)(lo) > y && lo > 1e-300) lo *= 0.25;
            while ((*this)(hi) < y && hi < 1e300) hi *= 4.0;
            for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
                const double mid = std::sqrt(lo) * std::sqrt(hi);
                ((*this)(mid) <= y ? lo : hi) = mid;
            }
            return lo;
        }
        case Kind::Tabulated: {
            const Index n = tab_log_a_.size();
            const double ly = std::log(std::max(y, 1e-300));
            if (ly <= tab_log_a_[0]) {
                const double slope = (tab_log_a_[1] - tab_log_a_[0]) /
                                     (tab_log_t_[1] - tab_log_t_[0]);
                const double lt = tab_log_t_[0] + (ly - tab_log_a_[0]) / slope;
                return std::max(junction_, std::exp(lt));
            }
            Index j = static_cast<Index>(
                std::upper_bound(tab_log_a_.data(), tab_log_a_.data() + n, ly) -
                tab_log_a_.data());
            Index lo = std::clamp<Index>(j - 1, 0, n - 2);
            double denom = tab_log_a_[lo + 1] - tab_log_a_[lo];
            if (denom <= 0.0) return std::exp(tab_log_t_[lo + 1]);
            const double slope = (tab_log_t_[lo + 1] - tab_log_t_[lo]) / denom;
            return std::exp(tab_log_t_[lo] + slope * (ly - tab_log_a_[lo]));
        }
    }
    return 0.0;
}

std::string YoungFunction::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Power:
            os << "pow:" << p_;
            if (scale_ != 1.0) os << " (x" << scale_ << ")";
            break;
        case Kind::PowerLog:
            os << "powlog:" << p_ << ":" << alpha_;
            break;
        case Kind::Tabulated:
            os << "tabulated[" << tab_log_t_.size() << "]";
            break;
        case Kind::LinfLike:
            os << "linf";
            if (threshold_ != 1.0) os << "@" << threshold_;
            break;
    }
    return os.str();
}

void OrliczTargetParams::validate_morrey() const {
    if (n < 2 || m < 1 || m > n - 1)
        throw std::invalid_argument("OrliczTargetParams: Morrey use requires n >= 2, 1 <= m <= n-1");
}

void OrliczTargetParams::validate_campanato() const {
    if (n < 2 || m < 1 || k < 0 || k > m - 1)
        throw std::invalid_argument("OrliczTargetParams: Campanato use requires 0 <= k <= m-1");
    if (k <= m - 2 && m - k - 1 > n - 1)
        throw std::invalid_argument("OrliczTargetParams: shifted order m-k-1 must be <= n-1");
}

// ---------------------------------------------------------------------------
// Conjugation
// ---------------------------------------------------------------------------

double conjugate(const YoungFunction& A, double t) {
    if (!(t >= 0.0)) throw std::domain_error("conjugate: t must be >= 0");
    if (t == 0.0) return 0.0;
    switch (A.kind()) {
        case YoungFunction::Kind::Power: {
            const double p = A.p(), c = A.scale();
            if (p == 1.0) return t <= c ? 0.0 : kInf;
            const double pp = p / (p - 1.0);
            return (p - 1.0) * std::pow(p, -pp) * std::pow(c, -1.0 / (p - 1.0)) *
                   std::pow(t, pp);
        }
        case YoungFunction::Kind::LinfLike:
            return A.threshold() * t;
        default:
            break;
    }
    if (A.kind() == YoungFunction::Kind::Tabulated) {
        // discrete transform over the sample grid: sup_j (t tau_j - A(tau_j)).
        // The objective is concave in tau, so over sorted nodes it is
        // unimodal and a ternary index search suffices.
        const Index n = A.tab_log_t_.size();
        auto h = [&](Index j) {
            return t * std::exp(A.tab_log_t_[j]) - std::exp(A.tab_log_a_[j]);
        };
        Index lo = 0, hi = n - 1;
        while (hi - lo > 2) {
            const Index m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (h(m1) < h(m2))
                lo = m1 + 1;
            else
                hi = m2;
        }
        double best = 0.0;
        for (Index j = lo; j <= hi; ++j) best = std::max(best, h(j));
        if (A.junction_ > 0.0) best = std::max(best, t * A.junction_);
        return best;
    }
    // numeric sup on a log grid of tau with golden-section refinement
    double lo = 1e-30, hi = 1e30;
    auto g = [&](double tau) {
        const double a = A(tau);
        return std::isfinite(a) ? tau * t - a : -kInf;
    };
    for (;;) {
        const int per_decade = 4;
        const int n = static_cast<int>(per_decade * std::log10(hi / lo)) + 1;
        int best_i = 0;
        double best_v = -kInf;
        for (int i = 0; i <= n; ++i) {
            const double tau = lo * std::pow(hi / lo, static_cast<double>(i) / n);
            const double v = g(tau);
            if (v > best_v) {
                best_v = v;
                best_i = i;
            }
        }
        if (best_i == n && hi < 1e280) {
            lo = hi / 100.0;
            hi *= 1e10;
            continue;
        }
        if (best_i == n) return kInf;  // sup grows without bound
        double a = lo * std::pow(hi / lo, static_cast<double>(std::max(best_i - 1, 0)) / n);
        double b = lo * std::pow(hi / lo, static_cast<double>(std::min(best_i + 1, n)) / n);
        // golden section on [a, b] in log coordinates
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double la = std::log(a), lb = std::log(b);
        double x1 = lb - gr * (lb - la), x2 = la + gr * (lb - la);
        double f1 = g(std::exp(x1)), f2 = g(std::exp(x2));
        for (int it = 0; it < 200 && (lb - la) > 1e-9; ++it) {
            if (f1 < f2) {
                la = x1;
                x1 = x2;
                f1 = f2;
                x2 = la + gr * (lb - la);
                f2 = g(std::exp(x2));
            } else {
                lb = x2;
                x2 = x1;
                f2 = f1;
                x1 = lb - gr * (lb - la);
                f1 = g(std::exp(x1));
            }
        }
        return std::max(0.0, std::max(f1, f2));
    }
}

YoungFunction conjugate_young(const YoungFunction& A) {
    switch (A.kind()) {
        case YoungFunction::Kind::Power: {
            const double p = A.p(), c = A.scale();
            if (p == 1.0) return YoungFunction::linf_like(c);
            const double pp = p / (p - 1.0);
            const double coef =
                (p - 1.0) * std::pow(p, -pp) * std::pow(c, -1.0 / (p - 1.0));
            return YoungFunction::power(pp, coef);
        }
        case YoungFunction::Kind::LinfLike:
            return YoungFunction::power(1.0, A.threshold());
        default: {
            // dense tabulation of the exact transform
            const double lo = 1e-30, hi = 1e60;
            const int per_decade = 32;
            const int n = static_cast<int>(per_decade * std::log10(hi / lo));
            ArrayXd t(n + 1), v(n + 1);
            for (int i = 0; i <= n; ++i) {
                t[i] = lo * std::pow(hi / lo, static_cast<double>(i) / n);
                v[i] = conjugate(A, t[i]);
            }
            return YoungFunction::tabulated(std::move(t), std::move(v));
        }
    }
}

// ---------------------------------------------------------------------------
// Luxemburg norm
// ---------------------------------------------------------------------------

namespace {

double luxemburg_integral(const YoungFunction& A, const StepFunction& f, double lambda) {
    double acc = 0.0;
    for (Index i = 0; i < f.cells(); ++i) {
        const double v = f.values[i];
        if (v <= 0.0) continue;
        const double a = A(v / lambda);
        if (!std::isfinite(a)) return kInf;
        acc += a * f.grid.width(i);
        if (acc > 1e6) return acc;  // far past the threshold, magnitude irrelevant
    }
    return acc;
}

}  // namespace

double luxemburg(const YoungFunction& A, const StepFunction& f) {
    if (!f.rearranged) throw std::invalid_argument("luxemburg: input must be rearranged");
    const double vmax = f.max_value();
    if (vmax <= 0.0) return 0.0;

    double hi = vmax;
    int guard = 0;
    while (luxemburg_integral(A, f, hi) > 1.0) {
        hi *= 4.0;
        if (++guard > 500 || hi > 1e290) return kInf;
    }
    double lo = hi;
    guard = 0;
    while (luxemburg_integral(A, f, lo) <= 1.0) {
        hi = lo;
        lo *= 0.25;
        if (++guard > 2000 || lo < 1e-290) return 0.0;
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (luxemburg_integral(A, f, mid) <= 1.0 ? hi : lo) = mid;
    }
    return hi;
}

// ---------------------------------------------------------------------------
// E_m and the optimal Orlicz weights
// ---------------------------------------------------------------------------

EmFunction::EmFunction(const YoungFunction& A, int n, int m) {
    OrliczTargetParams{n, m, 0}.validate_morrey();
    gamma_ = static_cast<double>(n) / static_cast<double>(n - m);

    const YoungFunction B = conjugate_young(A);
    if (B.kind() == YoungFunction::Kind::LinfLike) {
        linf_conjugate_ = true;
        linf_threshold_ = B.threshold();
        return;
    }
    if (B.kind() == YoungFunction::Kind::Power) {
        // keep the closed form: represent with a two-node table, the
        // power-fit cell quadrature is exact on pure powers
        tau_.resize(2);
        conj_.resize(2);
        tau_ << 1e-30, 1e60;
        conj_ << B(1e-30), B(1e60);
    } else {
        const double lo = 1e-30, hi = 1e60;
        const int per_decade = 8;
        const int nn = static_cast<int>(per_decade * std::log10(hi / lo));
        std::vector<double> ts, vs;
        for (int i = 0; i <= nn; ++i) {
            const double t = lo * std::pow(hi / lo, static_cast<double>(i) / nn);
            const double v = B(t);
            if (v <= 0.0) continue;
            if (!std::isfinite(v)) {
                if (ts.empty()) {
                    degenerate_ = true;
                    return;
                }
                break;
            }
            ts.push_back(t);
            vs.push_back(v);
        }
        if (ts.size() < 2) {
            degenerate_ = true;
            return;
        }
        tau_ = Eigen::Map<ArrayXd>(ts.data(), static_cast<Index>(ts.size()));
        conj_ = Eigen::Map<ArrayXd>(vs.data(), static_cast<Index>(vs.size()));
    }

    // local power exponent of the conjugate at the small end decides whether
    // the lower integral converges; exponents within 1e-9 of the critical
    // value are treated as critical
    if (B.kind() == YoungFunction::Kind::Power)
        tail_exponent_ = B.p();
    else
        tail_exponent_ = std::log(conj_[1] / conj_[0]) / std::log(tau_[1] / tau_[0]);
    cutoff_ = !(tail_exponent_ > gamma_ + 1e-9);

    // prefix[j] = ∫_{start}^{tau_j} conj(tau) tau^{-1-gamma} dtau with a
    // per-cell power fit (exact when conj is a pure power on the cell)
    prefix_.resize(tau_.size());
    if (!cutoff_) {
        // analytic tail below the first node from the fitted exponent
        prefix_[0] = conj_[0] * std::pow(tau_[0], -gamma_) / (tail_exponent_ - gamma_);
    } else {
        prefix_[0] = 0.0;  // integration starts at tau = 1
    }
    for (Index j = 1; j < tau_.size(); ++j) {
        double a = tau_[j - 1], b = tau_[j];
        double cell = 0.0;
        if (!cutoff_ || b > 1.0) {
            const double lo2 = cutoff_ ? std::max(a, 1.0) : a;
            const double theta = std::log(conj_[j] / conj_[j - 1]) / std::log(b / a);
            const double c0 = conj_[j - 1] * std::pow(a, -theta);
            cell = power_cell_integral(c0, theta - 1.0 - gamma_, lo2, b);
        }
        prefix_[j] = prefix_[j - 1] + cell;
    }
}

double EmFunction::operator()(double t) const {
    if (degenerate_) return kInf;
    if (!(t >= 0.0)) throw std::domain_error("EmFunction: t must be >= 0");
    if (t == 0.0) return 0.0;
    if (linf_conjugate_) return t <= linf_threshold_ ? 0.0 : kInf;
    if (cutoff_ && t <= 1.0) return 0.0;

    const Index n = tau_.size();
    const double tg = std::pow(t, gamma_);
    if (t <= tau_[0]) {
        if (cutoff_) return 0.0;
        return tg * conj_[0] * std::pow(tau_[0], -tail_exponent_) *
               std::pow(t, tail_exponent_ - gamma_) / (tail_exponent_ - gamma_);
    }
    Index j = static_cast<Index>(
        std::upper_bound(tau_.data(), tau_.data() + n, t) - tau_.data());
    if (j >= n) {
        // extend with the last cell's power fit
        const double theta =
            std::log(conj_[n - 1] / conj_[n - 2]) / std::log(tau_[n - 1] / tau_[n - 2]);
        const double c0 = conj_[n - 1] * std::pow(tau_[n - 1], -theta);
        const double lo2 = cutoff_ ? std::max(tau_[n - 1], 1.0) : tau_[n - 1];
        return tg * (prefix_[n - 1] + power_cell_integral(c0, theta - 1.0 - gamma_, lo2, t));
    }
    const double a = tau_[j - 1], b = tau_[j];
    const double theta = std::log(conj_[j] / conj_[j - 1]) / std::log(b / a);
    const double c0 = conj_[j - 1] * std::pow(a, -theta);
    double cell = 0.0;
    const double lo2 = cutoff_ ? std::max(a, 1.0) : a;
    if (t > lo2) cell = power_cell_integral(c0, theta - 1.0 - gamma_, lo2, t);
    return tg * (prefix_[j - 1] + cell);
}

double EmFunction::inverse(double y) const {
    if (degenerate_)
        throw std::domain_error("EmFunction::inverse: degenerate (E identically infinite)");
    if (!(y > 0.0)) throw std::domain_error("EmFunction::inverse: y must be > 0");
    if (linf_conjugate_) return linf_threshold_;

    double lo = 1.0, hi = 1.0;
    int guard = 0;
    while ((*this)(hi) <= y) {
        hi *= 16.0;
        if (++guard > 200 || hi > 1e280) return hi;
    }
    guard = 0;
    while ((*this)(lo) > y) {
        lo *= 0.0625;
        if (++guard > 200 || lo < 1e-280) return lo;
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
        const double mid = std::sqrt(lo) * std::sqrt(hi);
        ((*this)(mid) <= y ? lo : hi) = mid;
    }
    return lo;
}

double em_function(const YoungFunction& A, int n, int m, double t) {
    return EmFunction(A, n, m)(t);
}

OrliczMorreyWeight::OrliczMorreyWeight(const YoungFunction& A, int n, int m)
    : n_(n), m_(m), em_(std::make_shared<EmFunction>(A, n, m)) {}

double OrliczMorreyWeight::operator()(double r) const {
    if (!(r > 0.0)) throw std::domain_error("OrliczMorreyWeight: r must be > 0");
    r = std::min(r, 1.0);
    const double y = std::pow(r, -static_cast<double>(n_));
    return 1.0 / (std::pow(r, n_ - m_) * em_->inverse(y));
}

OrliczCampanatoWeight::OrliczCampanatoWeight(const YoungFunction& A, int n, int m, int k)
    : n_(n), m_(m), k_(k), A_(std::make_shared<YoungFunction>(A)) {
    OrliczTargetParams{n, m, k}.validate_campanato();
    if (k <= m - 2) em_ = std::make_shared<EmFunction>(A, n, m - k - 1);
}

double OrliczCampanatoWeight::operator()(double r) const {
    if (!(r > 0.0)) throw std::domain_error("OrliczCampanatoWeight: r must be > 0");
    r = std::min(r, 1.0);
    const double y = std::pow(r, -static_cast<double>(n_));
    if (k_ == m_ - 1) return r * A_->inverse(y);
    // r x the optimal Morrey weight of order m-k-1:
    // 1 / (r^{(n-(m-k-1))-1} E_{m,k}^{-1}(r^{-n}))
    return 1.0 / (std::pow(r, n_ - m_ + k_) * em_->inverse(y));
}

double orlicz_morrey_weight(const YoungFunction& A, int n, int m, double r) {
    return OrliczMorreyWeight(A, n, m)(r);
}

double orlicz_campanato_weight(const YoungFunction& A, int n, int m, int k, double r) {
    return OrliczCampanatoWeight(A, n, m, k)(r);
}

}  // namespace riembed
