#include "riembed/spaces.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace riembed;
using riembed::testing::random_rearranged_step;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::vector<RiSpace> all_spaces() {
    return {RiSpace::lebesgue(1.0),     RiSpace::lebesgue(2.0),
            RiSpace::lebesgue(3.5),     RiSpace::lebesgue(kInf),
            RiSpace::weak_lebesgue(2.0), RiSpace::weak_lebesgue(1.5),
            RiSpace::lorentz(2.0, 1.0), RiSpace::lorentz(3.0, 2.0),
            RiSpace::lorentz(2.0, kInf),
            RiSpace::orlicz(YoungFunction::power(2.0)),
            RiSpace::orlicz(YoungFunction::power(1.0)),
            RiSpace::zygmund(2.0, 1.0), RiSpace::zygmund(2.0, -0.5),
            RiSpace::zygmund(1.0, 1.0)};
}

// Hölder constants per family (see the Orlicz normalization notes)
double holder_constant(const RiSpace& X) {
    if (!X.uses_luxemburg()) return 1.0 + 1e-9;
    if (X.family() == Family::Orlicz &&
        (X.young().kind() == YoungFunction::Kind::Power ||
         X.young().kind() == YoungFunction::Kind::LinfLike))
        return 1.0 + 1e-9;
    return 2.5;
}

}  // namespace

TEST_CASE("norm closed cases") {
    const StepFunction one = rearrange({{1.0, 1.0}});
    CHECK(norm(RiSpace::lebesgue(2.0), one).value == doctest::Approx(1.0));

    for (double p : {1.0, 2.0, 4.0}) {
        const StepFunction ind = rearrange({{1.0, 0.3}, {0.0, 0.7}});
        CHECK(norm(RiSpace::lebesgue(p), ind).value ==
              doctest::Approx(std::pow(0.3, 1.0 / p)));
    }
    CHECK(norm(RiSpace::lebesgue(kInf), rearrange({{5.0, 0.1}, {2.0, 0.9}})).value == 5.0);
}

TEST_CASE("weak norm of the truncated critical power is 1 up to grid resolution") {
    const Grid g = Grid::log_spaced(1e-12, 64);
    ArrayXd v(g.cells());
    for (Index i = 0; i < g.cells(); ++i) v[i] = std::pow(g.right(i), -0.5);
    const StepFunction f = StepFunction::on(g, std::move(v), true);
    const double w = norm(RiSpace::weak_lebesgue(2.0), f).value;
    CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lorentz norm exact cell integrals") {
    // ||t^(1/p-1/q) chi_(0,a)||_q = (p/q)^(1/q) a^(1/p)
    for (double p : {2.0, 3.0}) {
        for (double q : {1.0, 2.0, 4.0}) {
            const StepFunction ind = rearrange({{1.0, 0.2}, {0.0, 0.8}});
            CHECK(norm(RiSpace::lorentz(p, q), ind).value ==
                  doctest::Approx(std::pow(p / q, 1.0 / q) * std::pow(0.2, 1.0 / p))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("associate families") {
    CHECK(RiSpace::lebesgue(1.0).associate().describe() == "Linf");
    CHECK(RiSpace::lebesgue(kInf).associate().describe() == "L:1");
    CHECK(RiSpace::lebesgue(3.0).associate().p() == doctest::Approx(1.5));
    const RiSpace wk = RiSpace::weak_lebesgue(2.0).associate();
    CHECK(wk.family() == Family::Lorentz);
    CHECK(wk.p() == doctest::Approx(2.0));
    CHECK(wk.q() == doctest::Approx(1.0));
    const RiSpace lz = RiSpace::lorentz(3.0, 2.0).associate();
    CHECK(lz.p() == doctest::Approx(1.5));
    CHECK(lz.q() == doctest::Approx(2.0));
    const RiSpace zy = RiSpace::zygmund(2.0, 1.0).associate();
    CHECK(zy.family() == Family::Zygmund);
    CHECK(zy.p() == doctest::Approx(2.0));
    CHECK(zy.alpha() == doctest::Approx(-1.0));
}

TEST_CASE("associate norm closed cases") {
    // X = L^1: associate norm is the essential sup
    const StepFunction g = rearrange({{4.0, 0.25}, {1.0, 0.75}});
    CHECK(associate_norm(RiSpace::lebesgue(1.0), g).value == 4.0);
    // X = L^inf: associate norm is the integral
    CHECK(associate_norm(RiSpace::lebesgue(kInf), rearrange({{1.0, 1.0}})).value ==
          doctest::Approx(1.0));
    // weak L^(n/m) with n=2, m=1: ||chi_(0,t)||_(2,1) = 2 t^(1/2) = 1 at t = 1/4
    const StepFunction ind = rearrange({{1.0, 0.25}, {0.0, 0.75}});
    CHECK(associate_norm(RiSpace::weak_lebesgue(2.0), ind).value ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fundamental closed forms and the product identity") {
    CHECK(fundamental(RiSpace::lebesgue(2.0), 0.25) == doctest::Approx(0.5));
    // Orlicz power reduces to Lebesgue
    for (double p : {1.5, 3.0})
        for (double r : {0.01, 0.5})
            CHECK(fundamental(RiSpace::orlicz(YoungFunction::power(p)), r) ==
                  doctest::Approx(std::pow(r, 1.0 / p)).epsilon(1e-12));

    // product identity: exact to 1% for Lebesgue and power-Orlicz pairs,
    // bounded ratio for Lorentz/weak/Zygmund pairs
    for (double r = 1e-10; r < 0.9; r *= 3.7) {
        for (const auto& X :
             {RiSpace::lebesgue(1.0), RiSpace::lebesgue(2.0), RiSpace::lebesgue(4.0),
              RiSpace::lebesgue(kInf), RiSpace::orlicz(YoungFunction::power(2.0)),
              RiSpace::orlicz(YoungFunction::power(3.0)),
              RiSpace::orlicz(YoungFunction::power(1.0))}) {
            const double prod = fundamental(X, r) * fundamental(X.associate(), r);
            CHECK(prod == doctest::Approx(r).epsilon(0.01));
        }
        for (const auto& X : {RiSpace::weak_lebesgue(2.0), RiSpace::lorentz(3.0, 1.0),
                              RiSpace::lorentz(2.0, 4.0), RiSpace::zygmund(2.0, 1.0),
                              RiSpace::zygmund(3.0, -1.0)}) {
            const double ratio = fundamental(X, r) * fundamental(X.associate(), r) / r;
            CHECK(ratio >= 0.25);
            CHECK(ratio <= 4.0);
        }
    }
}

TEST_CASE("dilation identities and bound") {
    std::mt19937_64 rng(23);
    const StepFunction f = rearrange({{2.0, 0.25}, {1.0, 0.75}});
    CHECK(dilation_norm(RiSpace::lebesgue(1.0), f, 1.0).value ==
          doctest::Approx(norm(RiSpace::lebesgue(1.0), f).value));
    CHECK(dilation_norm(RiSpace::lebesgue(1.0), rearrange({{1.0, 1.0}}), 0.5).value ==
          doctest::Approx(0.5));
    CHECK(dilation_norm(RiSpace::lebesgue(kInf), f, 2.0).value ==
          doctest::Approx(norm(RiSpace::lebesgue(kInf), f).value));
    CHECK_THROWS_AS(dilation_norm(RiSpace::lebesgue(2.0), f, -1.0), std::domain_error);

    // contraction for lam <= 1; support stretching costs at most lam beyond
    // (the L1 norm of a dilated indicator is exactly lam times the original)
    for (const auto& X : all_spaces()) {
        for (int trial = 0; trial < 5; ++trial) {
            const StepFunction g = random_rearranged_step(rng);
            const double base = norm(X, g).value;
            for (double lam : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
                const double dil = dilation_norm(X, g, lam).value;
                CHECK(dil <= std::max(1.0, lam) * base * (1.0 + 1e-9));
            }
        }
    }
}

TEST_CASE("holder inequality against the associate norm") {
    std::mt19937_64 rng(31);
    for (const auto& X : all_spaces()) {
        const double cx = holder_constant(X);
        for (int trial = 0; trial < 10; ++trial) {
            const StepFunction f = random_rearranged_step(rng);
            const StepFunction g = random_rearranged_step(rng);
            const double lhs = inner_product(f, g);
            const double rhs = norm(X, f).value * associate_norm(X, g).value;
            if (!std::isfinite(rhs)) continue;
            CHECK(lhs <= cx * rhs);
        }
    }
}

TEST_CASE("lattice monotonicity") {
    std::mt19937_64 rng(37);
    for (const auto& X : all_spaces()) {
        for (int trial = 0; trial < 8; ++trial) {
            const StepFunction f = random_rearranged_step(rng);
            ArrayXd bigger = f.values * 1.17 + 0.05;
            const StepFunction g = StepFunction::on(f.grid, std::move(bigger), true);
            CHECK(norm(X, f).value <= norm(X, g).value * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("embedding chain with the module's own constants") {
    std::mt19937_64 rng(41);
    const double edge = 1.0 - 1e-12;
    for (const auto& X : all_spaces()) {
        const double c_lower = fundamental(X.associate(), edge);
        const double c_upper = fundamental(X, edge);
        const double cx = holder_constant(X);
        for (int trial = 0; trial < 8; ++trial) {
            const StepFunction f = random_rearranged_step(rng);
            const double l1 = cumulative(f, 1.0);
            const double nx = norm(X, f).value;
            CHECK(l1 <= cx * c_lower * nx * (1.0 + 1e-9));
            CHECK(nx <= f.max_value() * c_upper * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("duality grid estimator lower-bounds the associate norm") {
    std::mt19937_64 rng(43);
    for (const auto& X : all_spaces()) {
        const double cx = holder_constant(X);
        for (int trial = 0; trial < 5; ++trial) {
            const StepFunction g = random_rearranged_step(rng);
            const double closed = associate_norm(X, g).value;
            const double est = duality_grid_estimate(X, g).value;
            if (!std::isfinite(closed)) continue;
            CHECK(est <= cx * closed * (1.0 + 1e-9));
            CHECK(est > 0.0);
        }
    }
}

TEST_CASE("norm requires rearranged input") {
    ArrayXd bp(2), v(2);
    bp << 0.5, 1.0;
    v << 1.0, 2.0;
    const StepFunction raw = StepFunction::on(Grid::from_breakpoints(bp), v);
    CHECK_THROWS_AS(norm(RiSpace::lebesgue(2.0), raw), std::invalid_argument);
    CHECK_THROWS_AS(double_star(raw, 0.5), std::invalid_argument);
}

TEST_CASE("norm value method tags") {
    const StepFunction f = rearrange({{1.0, 1.0}});
    CHECK(norm(RiSpace::lebesgue(2.0), f).method == NormValue::Method::ClosedForm);
    CHECK(norm(RiSpace::zygmund(2.0, 1.0), f).method ==
          NormValue::Method::LuxemburgBisection);
    CHECK(duality_grid_estimate(RiSpace::lebesgue(2.0), f).method ==
          NormValue::Method::DualityGrid);
}

TEST_CASE("interpolation operator bound") {
    // T_gamma f(r) = r^(1-gamma) ∫_r^1 s^(gamma-2) f(s) ds has norm at most
    // 1/(1-gamma) on every family; checked on a pointwise minorant of T_gamma f
    std::mt19937_64 rng(47);
    const Grid grid = Grid::log_spaced(1e-10, 64);
    for (double gamma : {-1.0, 0.0, 0.5}) {
        for (const auto& X : all_spaces()) {
            for (int trial = 0; trial < 3; ++trial) {
                const StepFunction f = random_rearranged_step(rng);
                auto T = [&](double r) {
                    if (r >= 1.0) return 0.0;
                    return std::pow(r, 1.0 - gamma) *
                           integrate_power_against(f, {1.0, gamma - 2.0, r, 1.0});
                };
                ArrayXd v(grid.cells()), w(grid.cells());
                for (Index i = 0; i < grid.cells(); ++i) {
                    const double a = grid.left(i), b = grid.right(i);
                    const double ta = a > 0.0 ? T(a) : f.values[0] / (1.0 - gamma);
                    v[i] = std::min(ta, T(std::min(b, 1.0 - 1e-15)));
                    w[i] = grid.width(i);
                }
                const StepFunction minorant = rearrange(v, w);
                const double lhs = norm(X, minorant).value;
                const double rhs = norm(X, f).value / (1.0 - gamma);
                CHECK(lhs <= rhs * (1.0 + 1e-6));
            }
        }
    }
}
