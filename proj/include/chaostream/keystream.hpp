#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

#include "chaostream/bitstream.hpp"
#include "chaostream/chaos.hpp"
#include "chaostream/errors.hpp"
#include "chaostream/key.hpp"

namespace chaostream {

// Fractional part of x * 10^5; the coordinate is stretched so that the
// bit-relevant digits come from deep in the mantissa.
inline double preprocess_lorenz(double x) {
    if (!std::isfinite(x))
        throw DomainError("preprocess_lorenz: non-finite value");
    const double u = x * 1e5;
    if (!std::isfinite(u))
        throw DomainError("preprocess_lorenz: scaled value overflows");
    return u - std::floor(u);
}

// Fractional part of y * 10^6.
inline double preprocess_chen(double y) {
    if (!std::isfinite(y))
        throw DomainError("preprocess_chen: non-finite value");
    const double u = y * 1e6;
    if (!std::isfinite(u))
        throw DomainError("preprocess_chen: scaled value overflows");
    return u - std::floor(u);
}

inline int quantize_omega(double xhat) {
    if (!(xhat >= 0.0 && xhat <= 1.0))
        throw DomainError("quantize_omega: value outside [0,1]");
    return xhat >= 0.5 ? 1 : 0;
}

// Inverted threshold relative to quantize_omega: values above 0.5 map to 0,
// and 0.5 itself maps to 1.
inline int quantize_phi(double yhat) {
    if (!(yhat >= 0.0 && yhat <= 1.0))
        throw DomainError("quantize_phi: value outside [0,1]");
    return yhat > 0.5 ? 0 : 1;
}

// XOR mixing of the six quantized bits into four candidate output bits.
inline std::array<int, 4> mix(const std::array<int, 3>& omega,
                              const std::array<int, 3>& phi) {
    return {omega[0] ^ phi[1] ^ omega[2],
            phi[2] ^ omega[0] ^ phi[0],
            omega[1] ^ phi[0] ^ phi[1],
            omega[2] ^ omega[1] ^ phi[2]};
}

// Select lines for the 4x1 multiplexer, derived from the quantized bits so
// the selection itself varies per iteration. Returned as {s1, s0}.
inline std::pair<int, int> select_lines(const std::array<int, 3>& omega,
                                        const std::array<int, 3>& phi) {
    return {phi[0] ^ phi[1] ^ phi[2], omega[0] ^ omega[1] ^ omega[2]};
}

// s1 is the most significant select line.
inline int mux_select(const std::array<int, 4>& mixed, int s1, int s0) {
    return mixed[(s1 << 1) | s0];
}

// Every intermediate of one generator iteration; mainly for analysis and
// tests.
struct IterationTrace {
    SystemState lorenz;
    SystemState chen;
    std::array<double, 3> xhat;
    std::array<double, 3> yhat;
    std::array<int, 3> omega;
    std::array<int, 3> phi;
    std::array<int, 4> mixed;
    int s1 = 0;
    int s0 = 0;
    int out = 0;
};

// Keystream generator state. Construction discards the key's t transient
// iterations; each next_bit() advances both systems one RK4 step and runs
// the preprocess/quantize/mix/select pipeline.
//
// Single-owner mutable: one logical stream per instance. Distinct instances
// are safe to run concurrently.
class KeystreamGenerator {
public:
    explicit KeystreamGenerator(const SecretKey& key, double step = 1e-3)
        : key_(key), step_(step) {
        if (!(step > 0.0))
            throw ParamError("KeystreamGenerator: step must be positive");
        if (!key.finite())
            throw DomainError("KeystreamGenerator: non-finite key component");
        lorenz_ = advance(key.lorenz_params(), key.lorenz_seed(), key.t, step);
        chen_ = advance(key.chen_params(), key.chen_seed(), key.t, step);
    }

    IterationTrace next_trace() {
        const LorenzParams lp = key_.lorenz_params();
        const ChenParams cp = key_.chen_params();
        lorenz_ = rk4_step(
            [&lp](const SystemState& s) { return lorenz_deriv(s, lp); },
            lorenz_, step_);
        chen_ = rk4_step(
            [&cp](const SystemState& s) { return chen_deriv(s, cp); }, chen_,
            step_);

        IterationTrace tr;
        tr.lorenz = lorenz_;
        tr.chen = chen_;
        tr.xhat = {preprocess_lorenz(lorenz_.v1), preprocess_lorenz(lorenz_.v2),
                   preprocess_lorenz(lorenz_.v3)};
        tr.yhat = {preprocess_chen(chen_.v1), preprocess_chen(chen_.v2),
                   preprocess_chen(chen_.v3)};
        for (int i = 0; i < 3; ++i) {
            tr.omega[i] = quantize_omega(tr.xhat[i]);
            tr.phi[i] = quantize_phi(tr.yhat[i]);
        }
        tr.mixed = mix(tr.omega, tr.phi);
        const auto [s1, s0] = select_lines(tr.omega, tr.phi);
        tr.s1 = s1;
        tr.s0 = s0;
        tr.out = mux_select(tr.mixed, s1, s0);
        ++iteration_count_;
        return tr;
    }

    int next_bit() { return next_trace().out; }

    const SystemState& lorenz_state() const { return lorenz_; }
    const SystemState& chen_state() const { return chen_; }
    const SecretKey& key() const { return key_; }
    double step() const { return step_; }
    std::uint64_t iteration_count() const { return iteration_count_; }

private:
    SecretKey key_;
    double step_;
    SystemState lorenz_;
    SystemState chen_;
    std::uint64_t iteration_count_ = 0;
};

inline BitStream generate(const SecretKey& key, std::size_t nbits,
                          double step = 1e-3) {
    KeystreamGenerator gen(key, step);
    BitStream out;
    out.reserve(nbits);
    for (std::size_t i = 0; i < nbits; ++i) out.push_back(gen.next_bit());
    return out;
}

}  // namespace chaostream
