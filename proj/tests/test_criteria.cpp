#include "riembed/criteria.hpp"

#include "riembed/asymptotics.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace riembed;
using riembed::testing::integrate;
using riembed::testing::random_rearranged_step;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

CheckOptions fast_options(double eps = 1e-12, int per_decade = 24) {
    CheckOptions opt;
    opt.r_values = default_r_values(eps, per_decade);
    return opt;
}

// X-norm of s^alpha restricted to (lo,hi), via a fine step representation
// rearranged the generic way; independent of the kernel_*_norm closed forms
double power_piece_norm(const RiSpace& X, double alpha, double lo, double hi) {
    const Grid g = Grid::log_spaced(1e-9, 160);
    ArrayXd v(g.cells()), w(g.cells());
    for (Index i = 0; i < g.cells(); ++i) {
        const double mid = g.left(i) > 0.0 ? std::sqrt(g.left(i) * g.right(i))
                                           : 0.5 * g.right(i);
        v[i] = (mid > lo && mid < hi) ? std::pow(mid, alpha) : 0.0;
        w[i] = g.width(i);
    }
    return norm(X, rearrange(v, w)).value;
}

std::vector<RiSpace> lemma_spaces() {
    return {RiSpace::lebesgue(1.0), RiSpace::lebesgue(2.0),
            RiSpace::lebesgue(std::numeric_limits<double>::infinity()),
            RiSpace::lorentz(2.0, 1.0), RiSpace::orlicz(YoungFunction::power(2.0)),
            RiSpace::zygmund(2.0, 1.0)};
}

}  // namespace

TEST_CASE("kernel_norm_morrey closed forms") {
    // X' = L^inf: sup of the decreasing kernel sits at the left endpoint
    CHECK(kernel_norm_morrey(RiSpace::lebesgue(1.0), 3, 1, 0.1) ==
          doctest::Approx(std::pow(0.1, -2.0)).epsilon(1e-12));
    // X' = L^1: plain integral
    CHECK(kernel_norm_morrey(RiSpace::lebesgue(kInf), 3, 1, 0.1) ==
          doctest::Approx(3.0 * (1.0 - 0.1)).epsilon(1e-12));
    // X = L^2, n=3, m=1, r=0.1: sqrt(3 (1/r - 1)) = sqrt(27)
    CHECK(kernel_norm_morrey(RiSpace::lebesgue(2.0), 3, 1, 0.1) ==
          doctest::Approx(std::sqrt(27.0)).epsilon(1e-12));
    // cross-check by quadrature of the defining integral
    const double oracle = std::pow(
        integrate([&](double s) { return std::pow(s, -4.0 / 3.0); }, 1e-3, 1.0), 0.5);
    CHECK(kernel_norm_morrey(RiSpace::lebesgue(2.0), 3, 1, 0.1) ==
          doctest::Approx(oracle).epsilon(1e-8));

    CHECK_THROWS_AS(kernel_norm_morrey(RiSpace::lebesgue(2.0), 3, 3, 0.1),
                    std::domain_error);
    CHECK_THROWS_AS(kernel_norm_morrey(RiSpace::lebesgue(2.0), 3, 1, 1.5),
                    std::domain_error);
}

TEST_CASE("kernel_norm_morrey analytic formula across the grid") {
    for (double p : {1.5, 2.0, 4.0}) {
        const double pp = p / (p - 1.0);
        const int n = 3, m = 1;
        const double beta = -1.0 + static_cast<double>(m) / n;
        const double e = beta * pp + 1.0;
        KernelNorms kn(RiSpace::lebesgue(p));
        for (double r : {1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2}) {
            const double a = std::pow(r, n);
            const double expect = std::pow((1.0 - std::pow(a, e)) / e, 1.0 / pp);
            CHECK(kn.morrey(n, m, r) == doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("kernel_norm_campanato branches") {
    // critical branch, Lebesgue: r^(1-n) (r^n)^(1/p') = r^(1-n/p)
    for (double p : {2.0, 5.0}) {
        for (double r : {1e-6, 1e-2, 0.3})
            CHECK(kernel_norm_campanato(RiSpace::lebesgue(p), 3, 2, 1, r) ==
                  doctest::Approx(std::pow(r, 1.0 - 3.0 / p)).epsilon(1e-12));
    }
    // critical branch, weak L^(n/m) with m=1: constant n' = n/(n-1)
    for (int n : {2, 3, 4}) {
        const double expect = static_cast<double>(n) / (n - 1);
        for (double r : {1e-8, 1e-3})
            CHECK(kernel_norm_campanato(RiSpace::weak_lebesgue(n), n, 1, 0, r) ==
                  doctest::Approx(expect).epsilon(1e-12));
    }
    // subcritical with X' = L^inf: r (r^n)^(-1+(m-k-1)/n) = r^(m-k-n)
    CHECK(kernel_norm_campanato(RiSpace::lebesgue(1.0), 4, 3, 0, 0.1) ==
          doctest::Approx(std::pow(0.1, 3.0 - 0.0 - 4.0)).epsilon(1e-12));
    CHECK_THROWS_AS(kernel_norm_campanato(RiSpace::lebesgue(2.0), 3, 2, 2, 0.1),
                    std::domain_error);
}

TEST_CASE("weak kernel norms find the interior maximum") {
    // golden-section oracle in log u for sup_u u^(1/p) g*(u)
    auto golden_sup = [](double p, double beta, double a) {
        const double len = 1.0 - a;
        auto h = [&](double lu) {
            const double u = std::exp(lu);
            const double k = beta < 0.0 ? std::pow(u + a, beta) : std::pow(1.0 - u, beta);
            return std::pow(u, 1.0 / p) * k;
        };
        double lo = std::log(a * 1e-8), hi = std::log(len * (1.0 - 1e-13));
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = h(x1), f2 = h(x2);
        for (int it = 0; it < 300; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = h(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = h(x1);
            }
        }
        return std::max({f1, f2, h(std::log(len * (1.0 - 1e-13)))});
    };
    const RiSpace winf = RiSpace::lorentz(2.0, std::numeric_limits<double>::infinity());
    for (double beta : {-0.9, -0.5, 0.3}) {
        for (double a : {1e-6, 1e-2, 0.3}) {
            CHECK(kernel_tail_norm(winf, beta, a) ==
                  doctest::Approx(golden_sup(2.0, beta, a)).epsilon(1e-9));
        }
    }
    // the head sup diverges at 0 once 1/p + beta < 0
    CHECK(std::isinf(kernel_head_norm(RiSpace::lorentz(3.0, std::numeric_limits<double>::infinity()),
                                      -0.4, 0.3)));
}

TEST_CASE("lorentz kernel norms match direct quadrature") {
    // the finite-q Lorentz branch integrates the kernel rearrangement on log
    // cells; compare against plain adaptive quadrature of the same integral
    struct Case {
        double p, q, beta, a;
    };
    for (const Case c : {Case{2.0, 1.0, -0.5, 0.01}, Case{3.0, 2.0, -2.0 / 3.0, 1e-4},
                         Case{2.0, 1.0, 0.5, 0.3}, Case{2.5, 1.5, 0.25, 1e-3}}) {
        const RiSpace X = RiSpace::lorentz(c.p, c.q);
        const double got = kernel_tail_norm(X, c.beta, c.a);
        const double len = 1.0 - c.a;
        auto integrand = [&](double u) {
            const double k = c.beta < 0.0 ? std::pow(u + c.a, c.beta)
                                          : std::pow(1.0 - u, c.beta);
            return std::pow(u, c.q / c.p - 1.0) * std::pow(k, c.q);
        };
        // integrate in log coordinates so the u -> 0 power is smooth
        double oracle = integrate(
            [&](double x) {
                const double u = std::exp(x);
                return integrand(u) * u;
            },
            std::log(1e-10), std::log(len * (1.0 - 1e-12)), 1e-13);
        oracle += std::pow(1e-10, c.q / c.p) / (c.q / c.p) *
                  std::pow(c.beta < 0.0 ? std::pow(c.a, c.beta) : 1.0, c.q);
        oracle = std::pow(oracle, 1.0 / c.q);
        CHECK(got == doctest::Approx(oracle).epsilon(1e-6));
    }
    // head variant with beta > 0 (rearrangement is (a-u)^beta)
    {
        const RiSpace X = RiSpace::lorentz(2.0, 1.0);
        const double a = 0.4, beta = 0.5;
        const double got = kernel_head_norm(X, beta, a);
        const double oracle = integrate(
            [&](double x) {
                const double u = std::exp(x);
                return std::pow(u, 0.5) * std::pow(a - u, beta);
            },
            std::log(1e-12), std::log(a * (1.0 - 1e-12)), 1e-13);
        CHECK(got == doctest::Approx(oracle).epsilon(1e-5));
    }
}

TEST_CASE("orlicz power kernels reproduce lebesgue closed forms") {
    // the full step-representation + Luxemburg pipeline against the exact
    // Lebesgue route, down to extreme r
    for (double p : {1.5, 2.0, 3.0}) {
        KernelNorms lux(RiSpace::orlicz(YoungFunction::power(p)));
        KernelNorms closed(RiSpace::lebesgue(p));
        for (double r : {1e-12, 1e-8, 1e-4, 1e-1}) {
            const double a = lux.morrey(3, 1, r);
            const double b = closed.morrey(3, 1, r);
            CHECK(a == doctest::Approx(b).epsilon(2e-3));
            const double c = lux.campanato(3, 2, 0, r);
            const double d = closed.campanato(3, 2, 0, r);
            CHECK(c == doctest::Approx(d).epsilon(2e-3));
        }
    }
}

TEST_CASE("kernel norm is nonincreasing in r") {
    for (const auto& X : {RiSpace::lebesgue(2.0), RiSpace::weak_lebesgue(2.0),
                          RiSpace::zygmund(2.0, 1.0)}) {
        KernelNorms kn(X);
        double prev = kInf;
        for (double r = 1e-10; r < 1.0; r *= 10.0) {
            const double v = kn.morrey(3, 1, r);
            CHECK(v <= prev * (1.0 + 1e-9));
            prev = v;
        }
    }
}

TEST_CASE("check_morrey verdicts") {
    const RiSpace X = RiSpace::lebesgue(2.0);
    // ratio is sqrt(3) sqrt(1-r): bounded, embedding holds
    const EmbeddingReport holds = check_morrey(X, 3, 1, Weight::power_log(-0.5));
    CHECK(holds.verdict == Verdict::Holds);
    CHECK(holds.trend == Trend::Bounded);
    CHECK(holds.finite_sup == doctest::Approx(std::sqrt(3.0)).epsilon(1e-4));

    // ratio diverges like r^(-1/2)
    const EmbeddingReport fails = check_morrey(X, 3, 1, Weight::one());
    CHECK(fails.verdict == Verdict::Fails);
    CHECK(fails.trend == Trend::Diverging);
    CHECK(fails.rate == doctest::Approx(0.5).epsilon(0.05));

    // m >= n: holds for every space and every weight bounded away from 0
    const EmbeddingReport trivial =
        check_morrey(RiSpace::lebesgue(kInf), 2, 2, Weight::one());
    CHECK(trivial.verdict == Verdict::Holds);
    const EmbeddingReport trivial_fails =
        check_morrey(RiSpace::lebesgue(kInf), 2, 2, Weight::power_log(0.5));
    CHECK(trivial_fails.verdict == Verdict::Fails);
}

TEST_CASE("check_morrey report invariants") {
    for (const auto& rep :
         {check_morrey(RiSpace::lebesgue(2.0), 3, 1, Weight::power_log(-0.5)),
          check_morrey(RiSpace::lebesgue(2.0), 3, 1, Weight::one()),
          check_morrey(RiSpace::weak_lebesgue(3.0), 3, 1, Weight::power_log(-0.5))}) {
        if (rep.verdict == Verdict::Holds) CHECK(rep.trend != Trend::Diverging);
        if (rep.verdict == Verdict::Fails) CHECK(rep.trend == Trend::Diverging);
        CHECK(rep.grid_values.rows() > 100);
        CHECK(rep.finite_sup >= rep.grid_values.col(1).maxCoeff());
    }
    // non-admissible weights are rejected with a diagnostic: a sampled
    // weight collapsing by ten orders over [1/2, 1] has vanishing infimum
    {
        ArrayXd r(3), phi(3);
        r << 0.25, 0.5, 1.0;
        phi << 1.0, 1.0, 1e-14;
        CHECK_THROWS_WITH_AS(
            check_morrey(RiSpace::lebesgue(2.0), 3, 1, Weight::sampled(r, phi)),
            doctest::Contains("admissible"), std::invalid_argument);
    }
}

TEST_CASE("check_campanato verdicts") {
    // BMO pipeline: L^(n/m), k = 0, phi = 1 holds
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}}) {
        const EmbeddingReport rep = check_campanato(
            RiSpace::lebesgue(static_cast<double>(n) / m), n, m, 0, Weight::one());
        CHECK(rep.verdict == Verdict::Holds);
    }
    // ratio identically 1
    const double p = 5.0;
    const EmbeddingReport unit = check_campanato(RiSpace::lebesgue(p), 3, 2, 1,
                                                 Weight::power_log(1.0 - 3.0 / p));
    CHECK(unit.verdict == Verdict::Holds);
    CHECK(unit.finite_sup == doctest::Approx(1.0).epsilon(1e-9));

    // liminf phi(r)/r = 0 pre-screen
    const EmbeddingReport pre =
        check_campanato(RiSpace::lebesgue(p), 3, 2, 1, Weight::power_log(2.0));
    CHECK(pre.verdict == Verdict::Fails);
    CHECK(pre.note.find("liminf") != std::string::npos);
}

TEST_CASE("vanishing checks and rates") {
    const RiSpace X = RiSpace::lebesgue(2.0);
    // constant ratio: the plain embedding holds but the vanishing one fails
    const EmbeddingReport flat = check_vanishing_morrey(X, 3, 1, Weight::power_log(-0.5));
    CHECK(flat.verdict == Verdict::Fails);
    if (flat.trend == Trend::Bounded) CHECK(std::abs(flat.rate) <= 0.05);

    const EmbeddingReport vanish =
        check_vanishing_morrey(X, 3, 1, Weight::power_log(-0.75));
    CHECK(vanish.verdict == Verdict::Holds);
    CHECK(vanish.trend == Trend::Vanishing);
    CHECK(std::abs(vanish.rate - 0.25) <= 0.05);

    // positive limit when m >= n and phi = 1
    const EmbeddingReport pos =
        check_vanishing_morrey(RiSpace::lebesgue(kInf), 2, 2, Weight::one());
    CHECK(pos.verdict == Verdict::Fails);

    // campanato variants: constant ratio at the exact weight fails the
    // vanishing check, a quarter-power surplus passes it
    const double p = 5.0;
    const EmbeddingReport cflat = check_vanishing_campanato(
        RiSpace::lebesgue(p), 3, 2, 1, Weight::power_log(1.0 - 3.0 / p));
    CHECK(cflat.verdict == Verdict::Fails);
    const EmbeddingReport cvan = check_vanishing_campanato(
        RiSpace::lebesgue(p), 3, 2, 1, Weight::power_log(1.0 - 3.0 / p - 0.25));
    CHECK(cvan.verdict == Verdict::Holds);
    CHECK(std::abs(cvan.rate - 0.25) <= 0.05);
}

TEST_CASE("ties at the verdict boundary are never promoted to holds") {
    // ratio ~ (log 1/r)^0.03: both slopes sit inside the tolerance gates but
    // the values keep increasing across the window
    const EmbeddingReport rep =
        check_morrey(RiSpace::lebesgue(2.0), 2, 1, Weight::power_log(0.0, 0.47));
    CHECK(rep.verdict == Verdict::Inconclusive);
    CHECK(rep.trend == Trend::Bounded);
}

TEST_CASE("restriction to small r yields the same verdict and comparable sup") {
    struct Case {
        RiSpace X;
        Weight phi;
    };
    const std::vector<Case> cases = {
        {RiSpace::lebesgue(2.0), Weight::power_log(-0.5)},
        {RiSpace::lebesgue(2.0), Weight::one()},
        {RiSpace::weak_lebesgue(2.0), Weight::power_log(-0.25)}};
    const double r0 = 1e-2;
    for (const auto& c : cases) {
        const EmbeddingReport full = check_morrey(c.X, 3, 1, c.phi);
        CheckOptions opt;
        const ArrayXd all = default_r_values();
        std::vector<double> small;
        for (Index i = 0; i < all.size(); ++i)
            if (all[i] < r0) small.push_back(all[i]);
        opt.r_values = Eigen::Map<ArrayXd>(small.data(), static_cast<Index>(small.size()));
        const EmbeddingReport restricted = check_morrey(c.X, 3, 1, c.phi, opt);
        CHECK(full.verdict == restricted.verdict);
        // the lemma's own constant: sup_full <= max(1, K phi(r0/2)) sup_small
        double K = 0.0;
        for (double r = r0; r < 1.0; r *= 1.1) K = std::max(K, 1.0 / c.phi(r));
        const double constant = std::max(1.0, K * c.phi(r0 / 2.0));
        CHECK(full.finite_sup <= constant * restricted.finite_sup * (1.0 + 1e-9));
        CHECK(full.finite_sup >= restricted.finite_sup * (1.0 - 1e-12));
    }
}

TEST_CASE("optimal morrey target self-consistency") {
    for (const auto& X : {RiSpace::lebesgue(2.0), RiSpace::weak_lebesgue(2.0),
                          RiSpace::zygmund(2.0, 1.0)}) {
        const TargetSampling s{1e-12, 0.5, 12};
        const Weight target = optimal_morrey_target(X, 3, 1, s);
        CheckOptions opt;
        opt.r_values = s.r_values();
        const EmbeddingReport rep = check_morrey(X, 3, 1, target, opt);
        CHECK(rep.verdict == Verdict::Holds);
        CHECK(rep.finite_sup == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("optimal campanato target self-consistency") {
    for (const auto& X : {RiSpace::lebesgue(3.0), RiSpace::weak_lebesgue(2.0)}) {
        for (int k : {0, 1}) {
            const TargetSampling s{1e-12, 0.5, 12};
            const Weight target = optimal_campanato_target(X, 3, 2, k, s);
            CheckOptions opt;
            opt.r_values = s.r_values();
            const EmbeddingReport rep = check_campanato(X, 3, 2, k, target, opt);
            CHECK(rep.verdict == Verdict::Holds);
            CHECK(rep.finite_sup == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("optimal targets match closed forms") {
    // X = L^1: kernel norm is r^(m-n)
    {
        const Weight t = optimal_morrey_target(RiSpace::lebesgue(1.0), 3, 1);
        for (double r : {1e-10, 1e-4, 0.3})
            CHECK(t(r) == doctest::Approx(std::pow(r, -2.0)).epsilon(1e-9));
    }
    // X = L^(n/m): exactly (n log(1/r))^(1-m/n)
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 2}}) {
        KernelNorms kn(RiSpace::lebesgue(static_cast<double>(n) / m));
        for (double r : {1e-12, 1e-6, 1e-2}) {
            const double expect =
                std::pow(n * std::log(1.0 / r), 1.0 - static_cast<double>(m) / n);
            CHECK(kn.morrey(n, m, r) == doctest::Approx(expect).epsilon(1e-9));
        }
    }
    // Zygmund above the boundary: bounded target
    {
        const Weight t =
            optimal_morrey_target(RiSpace::zygmund(2.0, 4.0), 4, 2, {1e-12, 0.5, 8});
        CHECK(t(1e-11) == doctest::Approx(t(1e-4)).epsilon(0.25));
    }
    // campanato k = m-1 for Lebesgue: r^(1-n/p)
    {
        const Weight t = optimal_campanato_target(RiSpace::lebesgue(4.0), 3, 2, 1);
        for (double r : {1e-9, 1e-3})
            CHECK(t(r) == doctest::Approx(std::pow(r, 1.0 - 0.75)).epsilon(1e-9));
    }
    // BMO: k=0, X = L^(n/m), target is flat
    {
        const Weight t =
            optimal_campanato_target(RiSpace::lebesgue(1.5), 3, 2, 0, {1e-12, 0.5, 8});
        CHECK(t(1e-11) == doctest::Approx(t(1e-3)).epsilon(0.05));
    }
    // Zygmund campanato k=0: flat target decays like (log 1/r)^(-alpha m/n)
    {
        const double alpha = 1.0;
        const int n = 4, m = 2;
        const Weight t = optimal_campanato_target(
            RiSpace::zygmund(static_cast<double>(n) / m, alpha), n, m, 0,
            {1e-13, 0.5, 8});
        const LogPowerFit fit = fit_log_power(t, {1e-12, 1e-4}, 0);
        CHECK(std::abs(fit.a) <= 0.02);
        CHECK(std::abs(fit.b - (-alpha * m / static_cast<double>(n))) <= 0.1);
    }
}

TEST_CASE("optimal morrey domain norm") {
    const ArrayXd grid = default_r_values(1e-14, 32);
    // f = 1, phi = 1: sup approaches n/m
    {
        const StepFunction one = rearrange({{1.0, 1.0}});
        const double v = optimal_morrey_domain_norm(Weight::one(), 3, 1, one, grid);
        CHECK(v == doctest::Approx(3.0).epsilon(1e-4));
    }
    // f = 0
    CHECK(optimal_morrey_domain_norm(Weight::one(), 3, 1, rearrange({{0.0, 1.0}}),
                                     grid) == 0.0);
    // brute-force grid oracle for phi(rho) = rho^(m-n), f an indicator
    {
        const StepFunction f = rearrange({{1.0, 0.1}, {0.0, 0.9}});
        const Weight phi = Weight::power_log(-2.0);
        const double got = optimal_morrey_domain_norm(phi, 3, 1, f, grid);
        double oracle = 0.0;
        for (Index i = 0; i < grid.size(); ++i) {
            const double r = grid[i];
            const double integral = integrate(
                [&](double s) { return std::pow(s, -2.0 / 3.0) * cumulative(f, s) / s; },
                r, 1.0);
            oracle = std::max(oracle, integral / phi(std::pow(r, 1.0 / 3.0)));
        }
        CHECK(got == doctest::Approx(oracle).epsilon(1e-7));
        CHECK(got == doctest::Approx(0.11994633550493121).epsilon(1e-9));  // frozen
    }
    // inf phi = 0 is rejected
    CHECK_THROWS_AS(optimal_morrey_domain_norm(Weight::power_log(0.5), 3, 1,
                                               rearrange({{1.0, 1.0}}), grid),
                    std::domain_error);
}

TEST_CASE("optimal campanato domain norm") {
    const ArrayXd grid = default_r_values(1e-14, 32);
    // k = m-1, phi = 1: sup r^(1/n) f**(r); the truncated critical power
    // yields a near-constant profile matching the weak space
    {
        const int n = 3;
        const Grid g = Grid::log_spaced(1e-12, 64);
        ArrayXd v(g.cells());
        for (Index i = 0; i < g.cells(); ++i) v[i] = std::pow(g.right(i), -1.0 / n);
        const StepFunction f = StepFunction::on(g, std::move(v), true);
        const double got = optimal_campanato_domain_norm(Weight::one(), n, 1, 0, f, grid);
        const double expect = 1.0 / (1.0 - 1.0 / n);
        CHECK(got == doctest::Approx(expect).epsilon(0.01));
    }
    // m >= n+k+1: the L^1 branch
    {
        const StepFunction f = rearrange({{2.0, 0.5}, {1.0, 0.5}});
        CHECK(optimal_campanato_domain_norm(Weight::power_log(1.0), 2, 4, 1, f, grid) ==
              doctest::Approx(1.5));
    }
    // f = 1, phi(rho) = rho, k <= m-2: closed-form value n/(m-k-1)
    {
        const StepFunction one = rearrange({{1.0, 1.0}});
        const double got =
            optimal_campanato_domain_norm(Weight::power_log(1.0), 3, 2, 0, one, grid);
        CHECK(got == doctest::Approx(3.0).epsilon(1e-4));
    }
    // liminf phi(r)/r = 0 is rejected
    CHECK_THROWS_AS(optimal_campanato_domain_norm(Weight::power_log(2.0), 3, 2, 0,
                                                  rearrange({{1.0, 1.0}}), grid),
                    std::domain_error);
}

TEST_CASE("marcinkiewicz norm") {
    // weak-Lebesgue scaling: n=2, alpha=-1, truncated t^(-1/2): value 2
    {
        const Grid g = Grid::log_spaced(1e-14, 64);
        ArrayXd v(g.cells());
        for (Index i = 0; i < g.cells(); ++i) v[i] = std::pow(g.right(i), -0.5);
        const StepFunction f = StepFunction::on(g, std::move(v), true);
        CHECK(marcinkiewicz_norm(Weight::power_log(-1.0), 2, f) ==
              doctest::Approx(2.0).epsilon(0.01));
    }
    // phi = 1: indicator has sup f** = 1
    CHECK(marcinkiewicz_norm(Weight::one(), 2, rearrange({{1.0, 0.25}, {0.0, 0.75}})) ==
          doctest::Approx(1.0).epsilon(1e-9));
    // alpha <= -n: recovers the L^1 norm at t = 1
    {
        const StepFunction f = rearrange({{3.0, 0.25}, {1.0, 0.75}});
        CHECK(marcinkiewicz_norm(Weight::power_log(-2.5), 2, f) ==
              doctest::Approx(cumulative(f, 1.0)).epsilon(1e-9));
    }
}

TEST_CASE("marcinkiewicz dominates sampled sub-averages") {
    std::mt19937_64 rng(53);
    const Weight phi = Weight::power_log(-0.5);
    for (int trial = 0; trial < 30; ++trial) {
        const StepFunction f = random_rearranged_step(rng);
        const double mk = marcinkiewicz_norm(phi, 3, f);
        std::uniform_real_distribution<double> ut(0.0, 0.5);
        for (int i = 0; i < 10; ++i) {
            const double t0 = ut(rng), t = 1e-3 + ut(rng);
            const double avg = (cumulative(f, t0 + t) - cumulative(f, t0)) / t /
                               phi(std::pow(t, 1.0 / 3.0));
            CHECK(avg <= mk * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("modulus targets") {
    // Lebesgue p > n, m = 1: theta(r) = c r^(1-n/p), the Holder exponent
    {
        const int n = 3;
        const double p = 6.0, pp = p / (p - 1.0);
        const double e = (-1.0 + 1.0 / n) * pp;
        const double c = std::pow(1.0 / (e + 1.0), 1.0 / pp);
        for (double r : {1e-6, 1e-2}) {
            const ModulusTargets mt = modulus_targets(RiSpace::lebesgue(p), n, 1, r);
            CHECK(mt.theta == doctest::Approx(c * std::pow(r, 1.0 - n / p)).epsilon(1e-9));
            CHECK(mt.sigma_hat == mt.theta);
            CHECK(std::isnan(mt.rho));
        }
    }
    CHECK_THROWS_AS(modulus_targets(RiSpace::lebesgue(2.0), 3, 4, 0.1), std::domain_error);
}

TEST_CASE("zygmund modulus asymptotics") {
    // 2 <= m <= n-1: sigma_hat ~ (log 1/r)^(1-(alpha+1)m/n)
    {
        const int n = 4, m = 2;
        const double alpha = 4.0;  // comfortably above (n-m)/m so the
                                   // Holder target exists and transients decay
        const RiSpace X = RiSpace::zygmund(static_cast<double>(n) / m, alpha);
        ArrayXd r(25), v(25);
        for (int i = 0; i < 25; ++i) {
            r[i] = 1e-10 * std::pow(1e6, i / 24.0);
            v[i] = modulus_targets(X, n, m, r[i]).sigma_hat;
        }
        const LogPowerFit fit = fit_log_power(r, v, {1e-10, 1e-4}, 0);
        const double expect_b = 1.0 - (alpha + 1.0) * m / n;  // = -1.5
        CHECK(std::abs(fit.a) <= 0.03);
        CHECK(std::abs(fit.b - expect_b) <= 0.15);
    }
    // m = n: sigma_hat ~ (log 1/r)^(-alpha)
    {
        const int n = 3;
        const RiSpace X = RiSpace::zygmund(1.0, 1.0);
        ArrayXd r(25), v(25);
        for (int i = 0; i < 25; ++i) {
            r[i] = 1e-10 * std::pow(1e6, i / 24.0);
            v[i] = modulus_targets(X, n, n, r[i]).sigma_hat;
        }
        const LogPowerFit fit = fit_log_power(r, v, {1e-10, 1e-4}, 0);
        CHECK(std::abs(fit.a) <= 0.03);
        CHECK(std::abs(fit.b - (-1.0)) <= 0.15);
    }
}

TEST_CASE("campanato to holder condition") {
    // phi = sigma = r^a: ratio tends to 1/a
    for (double a : {0.5, 1.0}) {
        const Weight phi = Weight::power_log(a);
        CHECK(campanato_to_holder_condition(phi, phi, 1e-2) ==
              doctest::Approx(1.0 / a).epsilon(1e-4));
    }
    // BMO weight: logarithmically divergent integral
    CHECK(std::isinf(campanato_to_holder_condition(Weight::one(), Weight::one(), 0.1)));
    // slow log weight with exponent >= -1: still divergent
    CHECK(std::isinf(
        campanato_to_holder_condition(Weight::power_log(0.0, -0.5), Weight::one(), 0.1)));
    // integrable log weight b < -1 gives a finite ratio
    CHECK(std::isfinite(
        campanato_to_holder_condition(Weight::power_log(0.0, -1.5), Weight::one(), 0.1)));
}

TEST_CASE("double-integral lemma with the stated constants") {
    std::mt19937_64 rng(59);
    for (double alpha : {0.25, 0.5, 0.75}) {
        const double upper = 2.0 / (1.0 - alpha);
        const double lower = (1.0 - std::pow(2.0, -1.0 + alpha)) / (2.0 * (1.0 - alpha));
        for (int trial = 0; trial < 100; ++trial) {
            const StepFunction f = random_rearranged_step(rng);
            for (int j = 0; j < 10; ++j) {
                const double r =
                    0.001 + 0.248 * std::uniform_real_distribution<double>()(rng);
                const double lhs =
                    integrate_power_against_double_star(f, -1.0 + alpha, r, 1.0);
                const double rhs =
                    std::pow(r, -1.0 + alpha) * cumulative(f, r) +
                    integrate_power_against(f, {1.0, -1.0 + alpha, r, 1.0 - r});
                CHECK(lhs <= upper * rhs * (1.0 + 1e-12));
                CHECK(lhs >= lower * rhs * (1.0 - 1e-12));
            }
        }
    }
}

TEST_CASE("interval-norm lemma") {
    // || s^alpha chi_(0,r)** ||_X ~ r || s^(alpha-1) chi_(r,1) ||_X with the
    // constant max(2^(1-alpha), 1) + 1
    for (const auto& X : lemma_spaces()) {
        for (double alpha : {1.0 / 3.0, 0.5, 1.0}) {
            for (double r : {0.02, 0.1, 0.3}) {
                const Grid g = Grid::log_spaced(1e-9, 160);
                ArrayXd v(g.cells()), w(g.cells());
                for (Index i = 0; i < g.cells(); ++i) {
                    const double mid = g.left(i) > 0.0
                                           ? std::sqrt(g.left(i) * g.right(i))
                                           : 0.5 * g.right(i);
                    v[i] = std::pow(mid, alpha) * std::min(1.0, r / mid);
                    w[i] = g.width(i);
                }
                const double lhs = norm(X, rearrange(v, w)).value;
                const double rhs = r * kernel_tail_norm(X, -1.0 + alpha, r);
                const double cap = std::max(std::pow(2.0, 1.0 - alpha), 1.0) + 1.0;
                CHECK(lhs >= rhs * (1.0 - 0.02));
                CHECK(lhs <= cap * rhs * (1.0 + 0.02));
            }
        }
    }
}

TEST_CASE("half-interval lemma") {
    // || s^alpha chi_(r,1) || ~ || s^alpha chi_(r,1/2) ||; routing the tail
    // through the support-stretching dilation makes the constant 2^(alpha+1)+1
    for (const auto& X : lemma_spaces()) {
        for (double alpha : {-0.5, 0.0, 0.5, 1.0}) {
            for (double r : {0.01, 0.1, 0.24}) {
                const double full = power_piece_norm(X, alpha, r, 1.0);
                const double half = power_piece_norm(X, alpha, r, 0.5);
                CHECK(full >= half * (1.0 - 0.02));
                CHECK(full <= (std::pow(2.0, alpha + 1.0) + 1.0) * half * (1.0 + 0.02));
            }
        }
    }
}

TEST_CASE("comparison-of-conditions lemma and verdict equivalence") {
    for (const auto& X : lemma_spaces()) {
        for (double alpha : {1.0 / 3.0, 2.0 / 3.0, 1.0}) {
            for (double r : {1e-4, 1e-2, 0.3}) {
                const double lhs = kernel_head_norm(X, alpha, r);
                const double rhs = std::pow(r, alpha) * fundamental(X, r);
                CHECK(lhs <= rhs * (1.0 + 0.02));
                CHECK(lhs >= std::pow(2.0, -1.0 - alpha) * rhs * (1.0 - 0.02));
            }
        }
    }

    // consequence: the critical campanato condition and its s^(1/n) variant
    // produce identical verdicts
    const int n = 2, m = 1;
    for (const auto& X : {RiSpace::lebesgue(2.0), RiSpace::lebesgue(4.0),
                          RiSpace::weak_lebesgue(2.0)}) {
        for (const auto& phi : {Weight::one(), Weight::power_log(0.5)}) {
            const CheckOptions opt = fast_options();
            const EmbeddingReport direct = check_campanato(X, n, m, 0, phi, opt);
            const RiSpace assoc = X.associate();
            ArrayXd v(opt.r_values.size());
            for (Index i = 0; i < opt.r_values.size(); ++i) {
                const double r = opt.r_values[i];
                v[i] = kernel_head_norm(assoc, 1.0 / n, std::pow(r, n)) /
                       (phi(r) * std::pow(r, n));
            }
            const TrendFit tf = classify_trend(opt.r_values, v, {});
            const bool variant_holds = tf.trend != Trend::Diverging;
            CHECK(variant_holds == (direct.verdict == Verdict::Holds));
        }
    }
}

TEST_CASE("bmo equivalence of the two domain functionals") {
    std::mt19937_64 rng(61);
    const ArrayXd grid = default_r_values(1e-12, 24);
    for (int n : {2, 3, 4}) {
        for (int m = 1; m <= n; ++m) {
            const double C = 4.0 * n;
            for (int trial = 0; trial < 10; ++trial) {
                const StepFunction f = random_rearranged_step(rng);
                double lhs = 0.0, rhs = 0.0;
                for (Index i = 0; i < grid.size(); ++i) {
                    const double r = grid[i];
                    lhs = std::max(lhs, std::pow(r, 1.0 / n) *
                                            integrate_power_against_double_star(
                                                f, -1.0 + (m - 1.0) / n, r, 1.0));
                    rhs = std::max(rhs, std::pow(r, static_cast<double>(m) / n) *
                                            double_star(f, r));
                }
                CHECK(lhs <= C * rhs);
                CHECK(lhs >= rhs / C);
            }
        }
    }
}
