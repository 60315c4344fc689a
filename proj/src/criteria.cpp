#include "riembed/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace riembed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 15-point Gauss-Legendre nodes/weights on [-1,1]
constexpr double kGLx[15] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr double kGLw[15] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

std::vector<double> log_breakpoints(double lo, double hi, int per_decade) {
    std::vector<double> bp;
    const double decades = std::log10(hi / lo);
    const int n = std::max(2, static_cast<int>(std::ceil(decades * per_decade)));
    bp.reserve(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        bp.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / n));
    bp.back() = hi;
    return bp;
}

// step representation of a nonincreasing profile, geometric-midpoint values
StepFunction step_from_decreasing(const std::function<double(double)>& g,
                                  std::vector<double> bp) {
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    if (bp.empty() || bp.back() < 1.0) bp.push_back(1.0);
    ArrayXd b(static_cast<Index>(bp.size())), v(static_cast<Index>(bp.size()));
    double left = 0.0;
    for (Index i = 0; i < b.size(); ++i) {
        const double right = bp[static_cast<size_t>(i)];
        const double mid = left > 0.0 ? std::sqrt(left * right) : 0.5 * right;
        b[i] = right;
        v[i] = g(mid);
        left = right;
    }
    for (Index i = 1; i < v.size(); ++i) v[i] = std::min(v[i], v[i - 1]);
    return StepFunction::on(Grid::from_breakpoints(std::move(b)), std::move(v), true);
}

// local power exponent of an Orlicz descriptor at large arguments plus the
// log correction; used to screen divergent head kernels
void orlicz_growth(const YoungFunction& B, double* power, double* logexp) {
    switch (B.kind()) {
        case YoungFunction::Kind::Power:
            *power = B.p();
            *logexp = 0.0;
            return;
        case YoungFunction::Kind::PowerLog:
            *power = B.p();
            *logexp = B.alpha();
            return;
        case YoungFunction::Kind::LinfLike:
            *power = kInf;
            *logexp = 0.0;
            return;
        case YoungFunction::Kind::Tabulated: {
            const double t1 = 1e20, t2 = 1e24;
            *power = std::log(B(t2) / B(t1)) / std::log(t2 / t1);
            *logexp = 0.0;
            return;
        }
    }
}

// Luxemburg norm of a nonincreasing profile on (0, support_hi), represented
// on a step grid refined near 0 (128 cells per decade)
double orlicz_profile_norm(const RiSpace& X, const std::function<double(double)>& g,
                           double grid_lo, double support_hi) {
    std::vector<double> bp = log_breakpoints(grid_lo, support_hi, 128);
    auto clipped = [&](double u) { return u < support_hi ? g(u) : 0.0; };
    StepFunction f = step_from_decreasing(clipped, std::move(bp));
    return luxemburg(X.young(), f);
}

}  // namespace

std::string to_string(Trend t) {
    switch (t) {
        case Trend::Bounded: return "bounded";
        case Trend::Diverging: return "diverging";
        case Trend::Vanishing: return "vanishing";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

ArrayXd default_r_values(double eps_min, int per_decade) {
    const Grid g = Grid::log_spaced(eps_min, per_decade);
    return g.breakpoints.head(g.breakpoints.size() - 1);
}

double integrate_log_cells(const std::function<double(double)>& f, double lo, double hi,
                           int cells_per_decade) {
    if (!(hi > lo) || !(lo > 0.0))
        throw std::invalid_argument("integrate_log_cells: need 0 < lo < hi");
    const std::vector<double> bp = log_breakpoints(lo, hi, cells_per_decade);
    double acc = 0.0;
    for (size_t j = 0; j + 1 < bp.size(); ++j) {
        const double ua = std::log(bp[j]), ub = std::log(bp[j + 1]);
        const double c = 0.5 * (ua + ub), h = 0.5 * (ub - ua);
        double cell = 0.0;
        for (int i = 0; i < 15; ++i) {
            const double x = std::exp(c + h * kGLx[i]);
            cell += kGLw[i] * f(x) * x;
        }
        acc += cell * h;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// kernel norms
// ---------------------------------------------------------------------------

double kernel_tail_norm(const RiSpace& X, double beta, double a) {
    if (!(a >= 0.0 && a < 1.0)) throw std::domain_error("kernel_tail_norm: need a in [0,1)");
    if (a == 0.0 && beta < 0.0) return kernel_head_norm(X, beta, 1.0);
    const double len = 1.0 - a;

    switch (X.family()) {
        case Family::Lebesgue: {
            const double q = X.p();
            if (std::isinf(q)) return beta < 0.0 ? std::pow(a, beta) : 1.0;
            return std::pow(power_cell_integral(1.0, beta * q, a, 1.0), 1.0 / q);
        }
        case Family::WeakLebesgue:
        case Family::Lorentz: {
            const double p = X.p();
            const double q = X.family() == Family::WeakLebesgue ? kInf : X.q();
            if (std::isinf(q)) {
                auto val = [&](double u) {
                    const double k =
                        beta < 0.0 ? std::pow(u + a, beta) : std::pow(1.0 - u, beta);
                    return std::pow(u, 1.0 / p) * k;
                };
                double best = val(len * (1.0 - 1e-14));
                if (beta < 0.0) {
                    const double denom = -1.0 - beta * p;
                    if (denom > 0.0)
                        best = std::max(best, val(std::min(a / denom, len * (1.0 - 1e-14))));
                } else if (beta > 0.0) {
                    best = std::max(
                        best, val(std::min(1.0 / (1.0 + beta * p), len * (1.0 - 1e-14))));
                }
                return best;
            }
            const double e0 = q / p - 1.0;
            if (beta == 0.0) return fundamental(X, std::min(len, 1.0 - 1e-15));
            if (beta < 0.0) {
                // g*(u) = (u+a)^beta on (0,len); flat within 1e-8 below u_lo
                const double u_lo = std::min(a * 1e-8, 0.25 * len);
                auto integrand = [&](double u) {
                    return std::pow(u, e0) * std::pow(u + a, beta * q);
                };
                double acc = std::pow(a, beta * q) * std::pow(u_lo, q / p) / (q / p);
                acc += integrate_log_cells(integrand, u_lo, len, 32);
                return std::pow(acc, 1.0 / q);
            }
            // beta > 0: g*(u) = (1-u)^beta on (0,len); integrate the left half
            // in u and the right half in the mirror coordinate w = 1 - u
            const double u_lo = len * 1e-12;
            auto left = [&](double u) { return std::pow(u, e0) * std::pow(1.0 - u, beta * q); };
            double acc = std::pow(u_lo, q / p) / (q / p);
            acc += integrate_log_cells(left, u_lo, 0.5 * len, 32);
            const double w_lo = std::max(a, len * 1e-12);
            auto right = [&](double w) { return std::pow(1.0 - w, e0) * std::pow(w, beta * q); };
            acc += integrate_log_cells(right, w_lo, a + 0.5 * len, 32);
            if (a == 0.0)
                acc += std::pow(w_lo, beta * q + 1.0) / (beta * q + 1.0);  // w-head crumb
            return std::pow(acc, 1.0 / q);
        }
        case Family::Orlicz:
        case Family::Zygmund: {
            if (beta == 0.0) return fundamental(X, std::min(len, 1.0 - 1e-15));
            if (beta < 0.0) {
                auto g = [&](double u) { return std::pow(u + a, beta); };
                return orlicz_profile_norm(X, g, std::min(a * 1e-3, 0.25 * len), len);
            }
            auto g = [&](double u) { return std::pow(1.0 - u, beta); };
            return orlicz_profile_norm(X, g, len * 1e-10, len);
        }
    }
    throw std::logic_error("kernel_tail_norm: unreachable");
}

double kernel_head_norm(const RiSpace& X, double beta, double a) {
    if (!(a > 0.0 && a <= 1.0)) throw std::domain_error("kernel_head_norm: need a in (0,1]");
    if (beta == 0.0) return fundamental(X, std::min(a, 1.0 - 1e-15));

    switch (X.family()) {
        case Family::Lebesgue: {
            const double q = X.p();
            if (std::isinf(q)) return beta < 0.0 ? kInf : std::pow(a, beta);
            const double e = beta * q;
            if (e <= -1.0) return kInf;
            return std::pow(power_cell_integral(1.0, e, 0.0, a), 1.0 / q);
        }
        case Family::WeakLebesgue:
        case Family::Lorentz: {
            const double p = X.p();
            const double q = X.family() == Family::WeakLebesgue ? kInf : X.q();
            if (std::isinf(q)) {
                if (beta < 0.0) {
                    const double e = 1.0 / p + beta;
                    if (e < 0.0) return kInf;
                    if (e == 0.0) return 1.0;
                    return std::pow(a, e);
                }
                const double u = a / (1.0 + beta * p);
                return std::pow(u, 1.0 / p) * std::pow(a - u, beta);
            }
            if (beta < 0.0) {
                // the kernel is its own rearrangement: pure power integral
                const double e = q / p - 1.0 + beta * q;
                if (e <= -1.0) return kInf;
                return std::pow(power_cell_integral(1.0, e, 0.0, a), 1.0 / q);
            }
            // beta > 0: rearrangement is (a-u)^beta on (0,a)
            const double e0 = q / p - 1.0;
            const double u_lo = a * 1e-14;
            auto left = [&](double u) { return std::pow(u, e0) * std::pow(a - u, beta * q); };
            auto right = [&](double w) { return std::pow(a - w, e0) * std::pow(w, beta * q); };
            const double acc = std::pow(u_lo, q / p) / (q / p) * std::pow(a, beta * q) +
                               integrate_log_cells(left, u_lo, 0.5 * a, 32) +
                               integrate_log_cells(right, u_lo, 0.5 * a, 32);
            return std::pow(acc, 1.0 / q);
        }
        case Family::Orlicz:
        case Family::Zygmund: {
            const YoungFunction& B = X.young();
            if (beta < 0.0) {
                double growth = 2.0, logexp = 0.0;
                orlicz_growth(B, &growth, &logexp);
                if (std::isinf(growth)) return kInf;  // essentially L^inf, kernel unbounded
                const double e = beta * growth;
                if (e < -1.0 - 1e-12) return kInf;
                // critical power: the log factor of the integrand decides
                if (std::abs(e + 1.0) <= 1e-12 && !(logexp < -1.0)) return kInf;
                auto g = [&](double u) { return std::pow(u, beta); };
                return orlicz_profile_norm(X, g, a * 1e-12, a);
            }
            auto g = [&](double u) { return u < a ? std::pow(a - u, beta) : 0.0; };
            return orlicz_profile_norm(X, g, a * 1e-10, a);
        }
    }
    throw std::logic_error("kernel_head_norm: unreachable");
}

double KernelNorms::morrey(int n, int m, double r) const {
    if (!(n >= 2 && m >= 1 && m <= n - 1))
        throw std::domain_error("kernel_norm_morrey: need 1 <= m <= n-1");
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("kernel_norm_morrey: r must lie in (0,1)");
    const double beta = -1.0 + static_cast<double>(m) / n;
    return kernel_tail_norm(assoc_, beta, std::pow(r, n));
}

double KernelNorms::campanato(int n, int m, int k, double r) const {
    if (!(k >= 0 && k <= m - 1))
        throw std::domain_error("kernel_norm_campanato: need 0 <= k <= m-1");
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("kernel_norm_campanato: r must lie in (0,1)");
    const double rn = std::pow(r, n);
    if (k == m - 1) return std::pow(r, 1.0 - n) * fundamental(assoc_, rn);
    const double beta = -1.0 + static_cast<double>(m - k - 1) / n;
    return r * kernel_tail_norm(assoc_, beta, rn);
}

double kernel_norm_morrey(const RiSpace& X, int n, int m, double r) {
    return KernelNorms(X).morrey(n, m, r);
}

double kernel_norm_campanato(const RiSpace& X, int n, int m, int k, double r) {
    return KernelNorms(X).campanato(n, m, k, r);
}

// ---------------------------------------------------------------------------
// trend classification and verdicts
// ---------------------------------------------------------------------------

TrendFit classify_trend(const ArrayXd& r, const ArrayXd& v, const CriterionTolerances& tol) {
    TrendFit fit;
    const double r_min = r.minCoeff();
    std::vector<double> xs, ls, ys;
    double v_first = 0.0, v_last = 0.0, r_first = 0.0, r_last = 2.0;
    for (Index i = 0; i < r.size(); ++i) {
        if (r[i] > 100.0 * r_min) continue;
        if (!std::isfinite(v[i])) {
            fit.has_infinite = true;
            continue;
        }
        if (!(v[i] > 0.0)) continue;
        xs.push_back(std::log(1.0 / r[i]));
        ls.push_back(std::log(std::log(1.0 / r[i])));
        ys.push_back(std::log(v[i]));
        if (r[i] > r_first) {
            r_first = r[i];
            v_first = v[i];
        }
        if (r[i] < r_last) {
            r_last = r[i];
            v_last = v[i];
        }
    }
    if (fit.has_infinite) {
        fit.trend = Trend::Diverging;
        fit.rate = kInf;
        return fit;
    }
    if (xs.size() < 4) return fit;

    const Index nn = static_cast<Index>(xs.size());
    Eigen::MatrixXd Xm(nn, 3);
    Eigen::VectorXd Y(nn);
    for (Index i = 0; i < nn; ++i) {
        Xm(i, 0) = 1.0;
        Xm(i, 1) = xs[static_cast<size_t>(i)];
        Xm(i, 2) = ls[static_cast<size_t>(i)];
        Y(i) = ys[static_cast<size_t>(i)];
    }
    const Eigen::VectorXd coef = Xm.colPivHouseholderQr().solve(Y);
    const double s = coef(1), ll = coef(2);
    fit.rate = std::abs(s);
    fit.log_rate = ll;
    fit.growing = v_last > v_first * (1.0 + tol.growth_tie_tol);

    if (s > tol.slope_tol)
        fit.trend = Trend::Diverging;
    else if (s < -tol.slope_tol)
        fit.trend = Trend::Vanishing;
    else if (ll > tol.log_slope_tol)
        fit.trend = Trend::Diverging;
    else if (ll < -tol.log_slope_tol)
        fit.trend = Trend::Vanishing;
    else
        fit.trend = Trend::Bounded;
    return fit;
}

namespace {

struct ValueGrid {
    ArrayXd r, v;
    std::string prescreen;  // nonempty: verdict forced to Fails
    std::string note;
};

EmbeddingReport assemble_report(std::string theorem, const ValueGrid& vg,
                                const CriterionTolerances& tol, bool vanishing_check) {
    EmbeddingReport rep;
    rep.theorem = std::move(theorem);
    rep.grid_values.resize(vg.r.size(), 2);
    rep.grid_values.col(0) = vg.r;
    rep.grid_values.col(1) = vg.v;
    rep.finite_sup = vg.v.maxCoeff();
    rep.note = vg.note;

    const TrendFit fit = classify_trend(vg.r, vg.v, tol);
    rep.trend = fit.trend;
    rep.rate = fit.rate;
    rep.log_rate = fit.log_rate;

    if (!vanishing_check) {
        switch (fit.trend) {
            case Trend::Diverging:
                rep.verdict = Verdict::Fails;
                break;
            case Trend::Vanishing:
                rep.verdict = Verdict::Holds;
                break;
            case Trend::Bounded:
                rep.verdict = fit.growing ? Verdict::Inconclusive : Verdict::Holds;
                if (fit.growing) rep.note = "flat slope but values still increasing";
                break;
        }
    } else {
        // the limit must be 0: vanishing trend with a rate bounded away from
        // 0 plus a monotone drop below vanish_tol x value near r = 1e-2
        double v_ref = 0.0, best = kInf;
        for (Index i = 0; i < vg.r.size(); ++i) {
            if (!std::isfinite(vg.v[i])) continue;
            const double d = std::abs(std::log(vg.r[i] / 1e-2));
            if (d < best) {
                best = d;
                v_ref = vg.v[i];
            }
        }
        const double r_min = vg.r.minCoeff();
        std::vector<Index> win;
        for (Index i = 0; i < vg.r.size(); ++i)
            if (vg.r[i] <= 100.0 * r_min) win.push_back(i);
        std::sort(win.begin(), win.end(), [&](Index a, Index b) { return vg.r[a] > vg.r[b]; });
        bool below = true, monotone = true;
        double prev = kInf;
        for (Index i : win) {
            if (!(vg.v[i] <= tol.vanish_tol * v_ref)) below = false;
            if (vg.v[i] > prev * (1.0 + 1e-9)) monotone = false;
            prev = vg.v[i];
        }
        if (fit.trend == Trend::Vanishing && fit.rate >= tol.slope_tol && below && monotone)
            rep.verdict = Verdict::Holds;
        else if (fit.trend == Trend::Vanishing)
            rep.verdict = Verdict::Inconclusive;
        else
            rep.verdict = Verdict::Fails;
        if (rep.verdict != Verdict::Holds && rep.note.empty())
            rep.note = "criterion values do not decay to 0";
    }

    if (!vg.prescreen.empty()) {
        rep.verdict = Verdict::Fails;
        rep.note = vg.prescreen;
    }
    return rep;
}

ArrayXd resolved_r(const CheckOptions& opt) {
    return opt.r_values.size() ? opt.r_values : default_r_values();
}

void require_admissible(const Weight& phi) {
    const std::string msg = phi.admissibility_failure();
    if (!msg.empty()) throw std::invalid_argument(msg);
}

ValueGrid morrey_values(const RiSpace& X, int n, int m, const Weight& phi,
                        const CheckOptions& opt) {
    require_admissible(phi);
    ValueGrid vg;
    vg.r = resolved_r(opt);
    vg.v.resize(vg.r.size());
    if (m >= n) {
        // the kernel norm is a finite constant for every r.i. space; the
        // criterion reduces to phi being bounded away from 0
        const double beta = -1.0 + static_cast<double>(m) / n;
        const double c = kernel_tail_norm(X.associate(), beta, 0.0);
        for (Index i = 0; i < vg.r.size(); ++i) vg.v[i] = c / phi(vg.r[i]);
        vg.note = "m >= n: criterion reduces to inf phi > 0";
    } else {
        const KernelNorms kn(X);
        for (Index i = 0; i < vg.r.size(); ++i) vg.v[i] = kn.morrey(n, m, vg.r[i]) / phi(vg.r[i]);
    }
    return vg;
}

ValueGrid campanato_values(const RiSpace& X, int n, int m, int k, const Weight& phi,
                           const CheckOptions& opt) {
    require_admissible(phi);
    ValueGrid vg;
    vg.r = resolved_r(opt);
    vg.v.resize(vg.r.size());
    {
        ArrayXd q(vg.r.size());
        for (Index i = 0; i < vg.r.size(); ++i) q[i] = phi(vg.r[i]) / vg.r[i];
        if (classify_trend(vg.r, q, opt.tol).trend == Trend::Vanishing)
            vg.prescreen = "liminf phi(r)/r = 0 on the grid";
    }
    const KernelNorms kn(X);
    for (Index i = 0; i < vg.r.size(); ++i) vg.v[i] = kn.campanato(n, m, k, vg.r[i]) / phi(vg.r[i]);
    return vg;
}

}  // namespace

EmbeddingReport check_morrey(const RiSpace& X, int n, int m, const Weight& phi,
                             const CheckOptions& opt) {
    return assemble_report("morrey", morrey_values(X, n, m, phi, opt), opt.tol, false);
}

EmbeddingReport check_campanato(const RiSpace& X, int n, int m, int k, const Weight& phi,
                                const CheckOptions& opt) {
    const char* theorem = (k == m - 1) ? "campanato-critical" : "campanato-subcritical";
    return assemble_report(theorem, campanato_values(X, n, m, k, phi, opt), opt.tol, false);
}

EmbeddingReport check_vanishing_morrey(const RiSpace& X, int n, int m, const Weight& phi,
                                       const CheckOptions& opt) {
    return assemble_report("morrey-vanishing", morrey_values(X, n, m, phi, opt), opt.tol, true);
}

EmbeddingReport check_vanishing_campanato(const RiSpace& X, int n, int m, int k,
                                          const Weight& phi, const CheckOptions& opt) {
    const char* theorem = (k == m - 1) ? "campanato-critical-vanishing"
                                       : "campanato-subcritical-vanishing";
    return assemble_report(theorem, campanato_values(X, n, m, k, phi, opt), opt.tol, true);
}

// ---------------------------------------------------------------------------
// optimal targets and domains
// ---------------------------------------------------------------------------

ArrayXd TargetSampling::r_values() const {
    const double decades = std::log10(r_max / r_min);
    const int n = std::max(2, static_cast<int>(std::ceil(decades * per_decade)));
    ArrayXd r(n + 1);
    for (int i = 0; i <= n; ++i)
        r[i] = r_min * std::pow(r_max / r_min, static_cast<double>(i) / n);
    r[n] = r_max;
    return r;
}

Weight optimal_morrey_target(const RiSpace& X, int n, int m, const TargetSampling& s) {
    if (!(m >= 1 && m <= n - 1))
        throw std::domain_error("optimal_morrey_target: need 1 <= m <= n-1");
    const KernelNorms kn(X);
    const ArrayXd r = s.r_values();
    ArrayXd phi(r.size());
    for (Index i = 0; i < r.size(); ++i) phi[i] = kn.morrey(n, m, r[i]);
    return Weight::sampled(r, phi);
}

Weight optimal_campanato_target(const RiSpace& X, int n, int m, int k,
                                const TargetSampling& s) {
    if (!(k >= 0 && k <= m - 1))
        throw std::domain_error("optimal_campanato_target: need 0 <= k <= m-1");
    const KernelNorms kn(X);
    const ArrayXd r = s.r_values();
    ArrayXd phi(r.size());
    for (Index i = 0; i < r.size(); ++i) phi[i] = kn.campanato(n, m, k, r[i]);
    return Weight::sampled(r, phi);
}

double optimal_morrey_domain_norm(const Weight& phi, int n, int m, const StepFunction& f,
                                  const ArrayXd& r_values) {
    if (!f.rearranged)
        throw std::invalid_argument("optimal_morrey_domain_norm: f must be rearranged");
    const ArrayXd r = r_values.size() ? r_values : default_r_values();
    {
        ArrayXd pv(r.size());
        for (Index i = 0; i < r.size(); ++i) pv[i] = phi(r[i]);
        if (classify_trend(r, pv, {}).trend == Trend::Vanishing)
            throw std::domain_error(
                "optimal_morrey_domain_norm: inf phi = 0, the embedding fails for every "
                "rearrangement-invariant domain");
    }
    const double beta = -1.0 + static_cast<double>(m) / n;
    double best = 0.0;
    for (Index i = 0; i < r.size(); ++i) {
        const double val = integrate_power_against_double_star(f, beta, r[i], 1.0) /
                           phi(std::pow(r[i], 1.0 / n));
        best = std::max(best, val);
    }
    return best;
}

double optimal_campanato_domain_norm(const Weight& phi, int n, int m, int k,
                                     const StepFunction& f, const ArrayXd& r_values) {
    if (!f.rearranged)
        throw std::invalid_argument("optimal_campanato_domain_norm: f must be rearranged");
    if (!(k >= 0 && k <= m - 1))
        throw std::domain_error("optimal_campanato_domain_norm: need 0 <= k <= m-1");
    const ArrayXd r = r_values.size() ? r_values : default_r_values();
    {
        ArrayXd q(r.size());
        for (Index i = 0; i < r.size(); ++i) q[i] = phi(r[i]) / r[i];
        if (classify_trend(r, q, {}).trend == Trend::Vanishing)
            throw std::domain_error(
                "optimal_campanato_domain_norm: liminf phi(r)/r = 0, the embedding fails "
                "for every rearrangement-invariant domain");
    }
    if (m >= n + k + 1) return cumulative(f, 1.0);
    double best = 0.0;
    if (k == m - 1) {
        for (Index i = 0; i < r.size(); ++i) {
            const double rr = r[i];
            best = std::max(best, std::pow(rr, 1.0 / n) / phi(std::pow(rr, 1.0 / n)) *
                                      double_star(f, rr));
        }
        return best;
    }
    const double beta = -1.0 + static_cast<double>(m - k - 1) / n;
    for (Index i = 0; i < r.size(); ++i) {
        const double rr = r[i];
        best = std::max(best, std::pow(rr, 1.0 / n) / phi(std::pow(rr, 1.0 / n)) *
                                  integrate_power_against_double_star(f, beta, rr, 1.0));
    }
    return best;
}

double marcinkiewicz_norm(const Weight& phi, int n, const StepFunction& f,
                          const ArrayXd& t_values) {
    if (!f.rearranged) throw std::invalid_argument("marcinkiewicz_norm: f must be rearranged");
    std::vector<double> ts;
    if (t_values.size()) {
        ts.assign(t_values.data(), t_values.data() + t_values.size());
    } else {
        const ArrayXd d = default_r_values();
        ts.assign(d.data(), d.data() + d.size());
        for (Index i = 0; i < f.grid.breakpoints.size(); ++i)
            ts.push_back(f.grid.breakpoints[i]);
        ts.push_back(1.0);
    }
    double best = 0.0;
    for (double t : ts) {
        if (!(t > 0.0 && t <= 1.0)) continue;
        best = std::max(best, cumulative(f, t) / t / phi(std::pow(t, 1.0 / n)));
    }
    return best;
}

// ---------------------------------------------------------------------------
// Holder-type comparison
// ---------------------------------------------------------------------------

ModulusTargets modulus_targets(const RiSpace& X, int n, int m, double r) {
    if (!(m >= 1 && m <= n)) throw std::domain_error("modulus_targets: need 1 <= m <= n");
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("modulus_targets: r must lie in (0,1)");
    const RiSpace assoc = X.associate();
    const double rn = std::pow(r, n);
    ModulusTargets out;
    out.rho = std::numeric_limits<double>::quiet_NaN();
    if (m <= n - 1) out.theta = kernel_head_norm(assoc, -1.0 + static_cast<double>(m) / n, rn);
    if (m >= 2) out.rho = r * kernel_tail_norm(assoc, -1.0 + static_cast<double>(m - 1) / n, rn);
    if (m == 1)
        out.sigma_hat = out.theta;
    else if (m <= n - 1)
        out.sigma_hat = out.theta + out.rho;
    else
        out.sigma_hat = out.rho;
    return out;
}

double campanato_to_holder_condition(const Weight& phi, const Weight& sigma, double r,
                                     double eps_min) {
    if (!(r > eps_min))
        throw std::domain_error("campanato_to_holder_condition: r must exceed eps_min");
    if (!phi.integrable_against_ds_over_s()) return kInf;
    const double integral =
        integrate_log_cells([&](double s) { return phi(s) / s; }, eps_min, r, 16);
    return integral / sigma(r);
}

}  // namespace riembed
