#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

#include "chaostream/errors.hpp"

namespace chaostream {

// One point of a three-dimensional autonomous system, double precision.
struct SystemState {
    double v1 = 0.0;
    double v2 = 0.0;
    double v3 = 0.0;

    bool finite() const {
        return std::isfinite(v1) && std::isfinite(v2) && std::isfinite(v3);
    }

    friend bool operator==(const SystemState&, const SystemState&) = default;
};

inline SystemState operator+(const SystemState& a, const SystemState& b) {
    return {a.v1 + b.v1, a.v2 + b.v2, a.v3 + b.v3};
}

inline SystemState operator*(double s, const SystemState& a) {
    return {s * a.v1, s * a.v2, s * a.v3};
}

// Lorenz family: dv1 = sigma (v2 - v1), dv2 = r v1 - v1 v3 - v2,
// dv3 = v1 v2 - rho v3. Chaotic regime at sigma = 10, rho = 8/3 needs
// r > 24.74.
struct LorenzParams {
    double sigma = 10.0;
    double r = 28.0;
    double rho = 8.0 / 3.0;

    bool positive() const { return sigma > 0.0 && r > 0.0 && rho > 0.0; }
    bool chaotic_regime() const { return positive() && r > 24.74; }
};

// Chen family: dv1 = a (v2 - v1), dv2 = (c - a) v1 - v1 v3 + c v2,
// dv3 = v1 v2 - b v3. Chaotic for a = 35, b = 3, 20 <= c <= 28.4.
struct ChenParams {
    double a = 35.0;
    double b = 3.0;
    double c = 28.0;

    bool positive() const { return a > 0.0 && b > 0.0 && c > 0.0; }
    bool chaotic_regime() const {
        return a == 35.0 && b == 3.0 && c >= 20.0 && c <= 28.4;
    }
};

inline SystemState lorenz_deriv(const SystemState& s, const LorenzParams& p) {
    if (!s.finite()) throw DomainError("lorenz_deriv: non-finite state");
    return {p.sigma * (s.v2 - s.v1),
            p.r * s.v1 - s.v1 * s.v3 - s.v2,
            s.v1 * s.v2 - p.rho * s.v3};
}

inline SystemState chen_deriv(const SystemState& s, const ChenParams& p) {
    if (!s.finite()) throw DomainError("chen_deriv: non-finite state");
    return {p.a * (s.v2 - s.v1),
            (p.c - p.a) * s.v1 - s.v1 * s.v3 + p.c * s.v2,
            s.v1 * s.v2 - p.b * s.v3};
}

template <typename F>
concept DerivFn = std::invocable<F&, const SystemState&>;

// Classical fixed-step fourth-order Runge-Kutta update.
template <DerivFn Deriv>
SystemState rk4_step(Deriv&& deriv, const SystemState& s, double h) {
    if (!(h > 0.0)) throw ParamError("rk4_step: step size must be positive");
    if (!s.finite()) throw DomainError("rk4_step: non-finite state");
    try {
        const SystemState k1 = deriv(s);
        const SystemState k2 = deriv(s + 0.5 * h * k1);
        const SystemState k3 = deriv(s + 0.5 * h * k2);
        const SystemState k4 = deriv(s + h * k3);
        const SystemState next =
            s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!next.finite())
            throw IntegrationDiverged("rk4_step: non-finite result");
        return next;
    } catch (const DomainError&) {
        // a stage left the finite domain mid-step
        throw IntegrationDiverged("rk4_step: state diverged within a step");
    }
}

template <DerivFn Deriv>
SystemState advance(Deriv&& deriv, SystemState s, std::uint64_t steps,
                    double h) {
    for (std::uint64_t i = 0; i < steps; ++i) s = rk4_step(deriv, s, h);
    return s;
}

inline SystemState advance(const LorenzParams& p, SystemState s,
                           std::uint64_t steps, double h) {
    return advance([&p](const SystemState& x) { return lorenz_deriv(x, p); },
                   s, steps, h);
}

inline SystemState advance(const ChenParams& p, SystemState s,
                           std::uint64_t steps, double h) {
    return advance([&p](const SystemState& x) { return chen_deriv(x, p); }, s,
                   steps, h);
}

// Advisory regime diagnostics; the pipeline stays well-defined outside the
// chaotic regimes, so these never throw.
inline std::vector<std::string> regime_warnings(const LorenzParams& p) {
    std::vector<std::string> w;
    if (!p.positive())
        w.push_back("lorenz parameters should all be strictly positive");
    if (p.positive() && !p.chaotic_regime())
        w.push_back("lorenz r <= 24.74: outside the chaotic regime");
    return w;
}

inline std::vector<std::string> regime_warnings(const ChenParams& p) {
    std::vector<std::string> w;
    if (!p.positive())
        w.push_back("chen parameters should all be strictly positive");
    if (p.positive() && !p.chaotic_regime())
        w.push_back(
            "chen parameters outside the chaotic regime (a=35, b=3, "
            "20<=c<=28.4)");
    return w;
}

}  // namespace chaostream
