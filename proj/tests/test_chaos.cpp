#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "chaostream/chaos.hpp"
#include "chaostream/key.hpp"

using namespace chaostream;
using Catch::Approx;

namespace {

// independent fine-step integrator used as oracle (deliberately not
// rk4_step)
template <typename F>
SystemState oracle_rk4(F f, SystemState s, double h, int steps) {
    for (int n = 0; n < steps; ++n) {
        const SystemState k1 = f(s);
        const SystemState k2 = f({s.v1 + h / 2 * k1.v1, s.v2 + h / 2 * k1.v2,
                                  s.v3 + h / 2 * k1.v3});
        const SystemState k3 = f({s.v1 + h / 2 * k2.v1, s.v2 + h / 2 * k2.v2,
                                  s.v3 + h / 2 * k2.v3});
        const SystemState k4 =
            f({s.v1 + h * k3.v1, s.v2 + h * k3.v2, s.v3 + h * k3.v3});
        s = {s.v1 + h / 6 * (k1.v1 + 2 * k2.v1 + 2 * k3.v1 + k4.v1),
             s.v2 + h / 6 * (k1.v2 + 2 * k2.v2 + 2 * k3.v2 + k4.v2),
             s.v3 + h / 6 * (k1.v3 + 2 * k2.v3 + 2 * k3.v3 + k4.v3)};
    }
    return s;
}

// Taylor series for exp(x), the independent oracle for the scalar test
// system
double taylor_exp(double x) {
    long double sum = 1.0L, term = 1.0L;
    for (int k = 1; k <= 30; ++k) {
        term *= x / k;
        sum += term;
    }
    return static_cast<double>(sum);
}

SystemState exp_system(const SystemState& s) { return {s.v1, 0.0, 0.0}; }

}  // namespace

TEST_CASE("lorenz derivative matches the defining equations", "[chaos]") {
    const LorenzParams p{10.0, 28.0, 8.0 / 3.0};

    const SystemState d1 = lorenz_deriv({1.0, 2.0, 3.0}, p);
    CHECK(d1.v1 == Approx(10.0).margin(1e-12));
    CHECK(d1.v2 == Approx(23.0).margin(1e-12));
    CHECK(d1.v3 == Approx(-6.0).margin(1e-12));

    const SystemState d0 = lorenz_deriv({0.0, 0.0, 0.0}, p);
    CHECK(d0.v1 == 0.0);
    CHECK(d0.v2 == 0.0);
    CHECK(d0.v3 == 0.0);

    const SystemState d2 = lorenz_deriv({1.0, 1.0, 1.0}, p);
    CHECK(d2.v1 == 0.0);
    CHECK(d2.v2 == Approx(26.0).margin(1e-12));
    CHECK(d2.v3 == Approx(1.0 - 8.0 / 3.0).margin(1e-12));
}

TEST_CASE("chen derivative matches the defining equations", "[chaos]") {
    const ChenParams p{35.0, 3.0, 28.0};

    const SystemState d1 = chen_deriv({1.0, 1.0, 1.0}, p);
    CHECK(d1.v1 == 0.0);
    CHECK(d1.v2 == Approx(20.0).margin(1e-12));
    CHECK(d1.v3 == Approx(-2.0).margin(1e-12));

    const SystemState d0 = chen_deriv({0.0, 0.0, 0.0}, p);
    CHECK(d0.v1 == 0.0);
    CHECK(d0.v2 == 0.0);
    CHECK(d0.v3 == 0.0);

    const SystemState d2 = chen_deriv({1.0, 0.0, 0.0}, p);
    CHECK(d2.v1 == Approx(-35.0).margin(1e-12));
    CHECK(d2.v2 == Approx(-7.0).margin(1e-12));
    CHECK(d2.v3 == 0.0);
}

TEST_CASE("derivatives reject non-finite states", "[chaos]") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(lorenz_deriv({nan, 0.0, 0.0}, LorenzParams{}),
                    DomainError);
    CHECK_THROWS_AS(chen_deriv({0.0, inf, 0.0}, ChenParams{}), DomainError);
}

TEST_CASE("rk4 step reproduces exp to oracle accuracy", "[chaos]") {
    const SystemState out = rk4_step(exp_system, {1.0, 0.0, 0.0}, 0.001);
    CHECK(std::fabs(out.v1 - taylor_exp(0.001)) <= 1e-12);
    CHECK(out.v2 == 0.0);
    CHECK(out.v3 == 0.0);
}

TEST_CASE("rk4 step with zero derivative keeps the state", "[chaos]") {
    const auto zero = [](const SystemState&) {
        return SystemState{0.0, 0.0, 0.0};
    };
    const SystemState s{4.5, -1.25, 0.375};
    const SystemState out = rk4_step(zero, s, 0.125);
    CHECK(out == s);
}

TEST_CASE("rk4 step agrees with a fine-step reference on Lorenz", "[chaos]") {
    const LorenzParams p{10.0, 28.0, 8.0 / 3.0};
    const auto f = [&p](const SystemState& s) { return lorenz_deriv(s, p); };
    const SystemState start{13.3604, 7.2052, 21.5026};
    const SystemState coarse = rk4_step(f, start, 0.001);
    const SystemState fine = oracle_rk4(f, start, 1e-6, 1000);
    CHECK(std::fabs(coarse.v1 - fine.v1) <= 1e-9);
    CHECK(std::fabs(coarse.v2 - fine.v2) <= 1e-9);
    CHECK(std::fabs(coarse.v3 - fine.v3) <= 1e-9);
}

TEST_CASE("rk4 step validates input", "[chaos]") {
    CHECK_THROWS_AS(rk4_step(exp_system, {1.0, 0.0, 0.0}, 0.0), ParamError);
    CHECK_THROWS_AS(rk4_step(exp_system, {1.0, 0.0, 0.0}, -0.1), ParamError);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(rk4_step(exp_system, {nan, 0.0, 0.0}, 0.1), DomainError);
}

TEST_CASE("rk4 step reports divergence", "[chaos]") {
    const LorenzParams p{10.0, 28.0, 8.0 / 3.0};
    const auto f = [&p](const SystemState& s) { return lorenz_deriv(s, p); };
    // products overflow to inf within the step
    CHECK_THROWS_AS(rk4_step(f, {1e160, -1e160, 1e160}, 1.0),
                    IntegrationDiverged);
}

TEST_CASE("halving the step shrinks exp error fourth-order", "[chaos]") {
    // integrate dy/dt = y over [0,1]; global error ratio should sit near 16
    const double target = taylor_exp(1.0);
    const SystemState coarse =
        advance(exp_system, SystemState{1.0, 0.0, 0.0}, 10, 0.1);
    const SystemState fine =
        advance(exp_system, SystemState{1.0, 0.0, 0.0}, 20, 0.05);
    const double e1 = std::fabs(coarse.v1 - target);
    const double e2 = std::fabs(fine.v1 - target);
    REQUIRE(e2 > 0.0);
    const double ratio = e1 / e2;
    CHECK(ratio >= 14.0);
    CHECK(ratio <= 18.0);
}

TEST_CASE("advance composes rk4 steps", "[chaos]") {
    const LorenzParams p{10.0, 28.0, 8.0 / 3.0};
    const auto f = [&p](const SystemState& s) { return lorenz_deriv(s, p); };
    const SystemState start{13.3604, 7.2052, 21.5026};

    CHECK(advance(f, start, 0, 0.001) == start);

    const SystemState two = advance(f, start, 2, 0.001);
    const SystemState composed =
        rk4_step(f, rk4_step(f, start, 0.001), 0.001);
    CHECK(two == composed);
}

TEST_CASE("lorenz transient stays on the attractor", "[chaos]") {
    const SecretKey key;
    const SystemState s =
        advance(key.lorenz_params(), key.lorenz_seed(), 4000, 0.001);
    REQUIRE(s.finite());
    CHECK(std::fabs(s.v1) < 100.0);
    CHECK(std::fabs(s.v2) < 100.0);
    CHECK(std::fabs(s.v3) < 100.0);
}

TEST_CASE("a million steps stay finite for both systems", "[chaos]") {
    const SecretKey key;
    const SystemState l =
        advance(key.lorenz_params(), key.lorenz_seed(), 1000000, 0.001);
    const SystemState c =
        advance(key.chen_params(), key.chen_seed(), 1000000, 0.001);
    CHECK(l.finite());
    CHECK(c.finite());
}

TEST_CASE("advance is deterministic", "[chaos]") {
    const SecretKey key;
    const SystemState a =
        advance(key.chen_params(), key.chen_seed(), 5000, 0.001);
    const SystemState b =
        advance(key.chen_params(), key.chen_seed(), 5000, 0.001);
    CHECK(a == b);
}

TEST_CASE("origin is a fixed point of both flows", "[chaos]") {
    const SecretKey key;
    const SystemState o{0.0, 0.0, 0.0};
    CHECK(advance(key.lorenz_params(), o, 100, 0.001) == o);
    CHECK(advance(key.chen_params(), o, 100, 0.001) == o);
}

TEST_CASE("parameter regime flags", "[chaos]") {
    CHECK(LorenzParams{10.0, 28.0, 8.0 / 3.0}.chaotic_regime());
    CHECK_FALSE(LorenzParams{10.0, 20.0, 8.0 / 3.0}.chaotic_regime());
    CHECK_FALSE(LorenzParams{-1.0, 28.0, 8.0 / 3.0}.positive());
    CHECK(ChenParams{35.0, 3.0, 28.0}.chaotic_regime());
    CHECK_FALSE(ChenParams{35.0, 3.0, 30.0}.chaotic_regime());
    CHECK(regime_warnings(LorenzParams{10.0, 20.0, 8.0 / 3.0}).size() == 1);
    CHECK(regime_warnings(ChenParams{35.0, 3.0, 28.0}).empty());
}
