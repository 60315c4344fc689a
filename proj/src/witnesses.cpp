#include "riembed/witnesses.hpp"

#include <cmath>
#include <sstream>

namespace riembed {

namespace {

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace

double extremal_vf_centered_average(const StepFunction& f, int n, int m, double r) {
    if (!(n >= 2 && m >= 1 && m <= n - 1))
        throw std::domain_error("extremal_vf_centered_average: need 1 <= m <= n-1");
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("extremal_vf_centered_average: r must lie in (0,1)");
    if (m > 20) throw std::domain_error("extremal_vf_centered_average: m too large");
    const double mn = static_cast<double>(m) / n;

    // Fubini over the inner polynomial:
    //   (1/(r m)) [ ∫_0^r s^(m/n) f + ∫_r^1 s^(m/n - m) (s^m - (s-r)^m) f ]
    double head = integrate_power_against(f, {1.0, mn, 0.0, r});
    double tail = 0.0;
    for (int i = 1; i <= m; ++i) {
        const double sign = (i % 2 == 1) ? 1.0 : -1.0;
        const double coef = sign * binomial(m, i) * std::pow(r, i);
        tail += integrate_power_against(f, {coef, mn - i, r, 1.0});
    }
    return (head + tail) / (r * m);
}

WitnessReport morrey_lower_witness(const RiSpace& X, int n, int m, const Weight& phi,
                                   const std::vector<double>& r_list) {
    const std::string fail = phi.admissibility_failure();
    if (!fail.empty()) throw std::invalid_argument(fail);

    const KernelNorms kn(X);
    const Grid grid = Grid::log_spaced(1e-12, 32);
    WitnessReport report;

    for (double r : r_list) {
        if (!(r > 0.0 && r < 1.0)) continue;
        WitnessSample sample;
        sample.r = r;  // ball measure; the matching radius is r^(1/n)
        const double phival = phi(std::pow(r, 1.0 / n));
        const double beta = -1.0 + static_cast<double>(m) / n;
        sample.kernel_over_phi = kn.tail(beta, r) / phival;

        // dictionary elements are general step functions; norms go through
        // the rearrangement, the average bound needs no monotonicity
        std::vector<std::pair<std::string, StepFunction>> dict;
        for (double a : {0.01, 0.1, 0.5, 1.0 - 1e-12}) {
            ArrayXd bp(2), v(2);
            bp << a, 1.0;
            v << 1.0, 0.0;
            if (a >= 1.0 - 1e-12) v[1] = 1.0;
            dict.emplace_back("indicator", StepFunction::on(Grid::from_breakpoints(bp), v));
        }
        for (double theta : {0.25 * -beta, -beta, std::min(0.95, -2.0 * beta)}) {
            ArrayXd v(grid.cells());
            for (Index i = 0; i < grid.cells(); ++i) {
                const double s = grid.right(i);
                v[i] = s >= r ? std::pow(s, -theta) : 0.0;
            }
            dict.emplace_back("truncated-power", StepFunction::on(grid, std::move(v)));
        }
        // exact dual maximizer of ∫_r^1 s^beta f over the unit ball of L^p
        if (X.family() == Family::Lebesgue && !std::isinf(X.p()) && X.p() > 1.0) {
            const double pp = X.p() / (X.p() - 1.0);
            ArrayXd v(grid.cells());
            for (Index i = 0; i < grid.cells(); ++i) {
                const double s = grid.right(i);
                v[i] = s >= r ? std::pow(s, beta * (pp - 1.0)) : 0.0;
            }
            dict.emplace_back("dual-maximizer", StepFunction::on(grid, std::move(v)));
        }

        for (auto& [name, f0] : dict) {
            ArrayXd widths(f0.cells());
            for (Index i = 0; i < f0.cells(); ++i) widths[i] = f0.grid.width(i);
            const double nf = norm(X, rearrange(f0.values, widths));
            if (!(nf > 0.0) || !std::isfinite(nf)) continue;
            ArrayXd unit = f0.values / nf;
            StepFunction f = StepFunction::on(f0.grid, std::move(unit));
            const double avg = extremal_vf_centered_average(f, n, m, r);
            const double ratio = avg / phival;
            if (ratio > sample.best_ratio) {
                sample.best_ratio = ratio;
                sample.best_function = name;
            }
        }
        sample.tracking =
            sample.kernel_over_phi > 0.0 ? sample.best_ratio / sample.kernel_over_phi : 0.0;
        report.sup_ratio = std::max(report.sup_ratio, sample.best_ratio);
        report.samples.push_back(std::move(sample));
    }
    return report;
}

double radial_morrey_norm(const RadialProfile& u, const Weight& phi, int n,
                          const std::vector<double>& samples) {
    double best = 0.0;
    for (double t : samples) {
        if (!(t > 0.0 && t <= 1.0)) continue;
        best = std::max(best, cumulative(u.profile, t) / t / phi(std::pow(t, 1.0 / n)));
    }
    return best;
}

}  // namespace riembed
