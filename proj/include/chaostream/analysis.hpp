#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "chaostream/bitstream.hpp"
#include "chaostream/errors.hpp"
#include "chaostream/key.hpp"
#include "chaostream/nist.hpp"
#include "chaostream/voice.hpp"

namespace chaostream {

// Mean-removed, non-circular, normalized autocorrelation:
// r(tau) = sum_i (s_i - mu)(s_{i+tau} - mu) / sum_i (s_i - mu)^2, r(0) = 1.
// Lags above length-1 are not computed.
inline std::vector<double> autocorrelation(const std::vector<double>& seq,
                                           std::size_t max_lag) {
    const std::size_t n = seq.size();
    if (n < 2) throw LengthError("autocorrelation: need at least 2 samples");
    double mu = 0.0;
    for (double v : seq) mu += v;
    mu /= static_cast<double>(n);
    std::vector<double> d(n);
    double denom = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = seq[i] - mu;
        denom += d[i] * d[i];
    }
    if (denom == 0.0)
        throw DegenerateInput("autocorrelation: constant sequence");
    const std::size_t lags = std::min(max_lag, n - 1);
    std::vector<double> r(lags + 1);
    for (std::size_t tau = 0; tau <= lags; ++tau) {
        double num = 0.0;
        for (std::size_t i = 0; i + tau < n; ++i) num += d[i] * d[i + tau];
        r[tau] = num / denom;
    }
    return r;
}

inline std::vector<double> bits_to_pm1(const BitStream& bits) {
    std::vector<double> s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        s[i] = 2.0 * bits.bit(i) - 1.0;
    return s;
}

inline double max_offpeak_autocorrelation(const BitStream& bits,
                                          std::size_t max_lag = 1000) {
    const auto r = autocorrelation(bits_to_pm1(bits), max_lag);
    double best = 0.0;
    for (std::size_t tau = 1; tau < r.size(); ++tau)
        best = std::max(best, std::fabs(r[tau]));
    return best;
}

// Percent residual deviation: 100 * sqrt(sum (O-E)^2 / sum O^2).
inline double prd(const std::vector<double>& original,
                  const std::vector<double>& other) {
    if (original.size() != other.size())
        throw LengthError("prd: length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < original.size(); ++i) {
        const double diff = original[i] - other[i];
        num += diff * diff;
        den += original[i] * original[i];
    }
    if (den == 0.0) throw DegenerateInput("prd: zero-energy original");
    return 100.0 * std::sqrt(num / den);
}

inline std::vector<double> to_doubles(const VoiceSignal& sig) {
    std::vector<double> out(sig.samples.size());
    for (std::size_t i = 0; i < sig.samples.size(); ++i)
        out[i] = static_cast<double>(sig.samples[i]);
    return out;
}

inline double prd(const VoiceSignal& original, const VoiceSignal& other) {
    return prd(to_doubles(original), to_doubles(other));
}

// Fraction (as a percentage) of sample positions whose values differ.
inline double percent_difference(const VoiceSignal& a, const VoiceSignal& b) {
    if (a.samples.size() != b.samples.size())
        throw LengthError("percent_difference: length mismatch");
    if (a.samples.empty()) return 0.0;
    std::size_t diff = 0;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        if (a.samples[i] != b.samples[i]) ++diff;
    return 100.0 * static_cast<double>(diff) /
           static_cast<double>(a.samples.size());
}

// Equal-width histogram over the full 16-bit range [-32768, 32767].
inline std::vector<std::uint64_t> histogram(const VoiceSignal& sig,
                                            int bins) {
    if (bins < 2) throw ParamError("histogram: need at least 2 bins");
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins), 0);
    for (std::int16_t s : sig.samples) {
        const std::int64_t shifted = static_cast<std::int64_t>(s) + 32768;
        std::int64_t idx = shifted * bins / 65536;
        idx = std::min<std::int64_t>(idx, bins - 1);
        ++counts[static_cast<std::size_t>(idx)];
    }
    return counts;
}

struct SensitivityRow {
    std::string parameter;   // "control" for the unperturbed row
    double percent_difference = 0.0;
    bool sub_ulp = false;    // perturbation vanished in double precision
};

// Table of recovered-signal differences when decrypting with a key whose
// components are perturbed one at a time: +delta for the twelve real
// components, t+1 for the transient count, plus an unperturbed control row.
inline std::vector<SensitivityRow> sensitivity_sweep(const SecretKey& key,
                                                     const VoiceSignal& sig,
                                                     double delta,
                                                     double step = 1e-3) {
    if (!(delta > 0.0))
        throw ParamError("sensitivity_sweep: delta must be positive");
    const CipherText ct = encrypt(key, sig, step);

    struct Field {
        const char* name;
        double SecretKey::*member;
    };
    static constexpr Field fields[12] = {
        {"x1_0", &SecretKey::x1_0}, {"x2_0", &SecretKey::x2_0},
        {"x3_0", &SecretKey::x3_0}, {"sigma", &SecretKey::sigma},
        {"rho", &SecretKey::rho},   {"r", &SecretKey::r},
        {"y1_0", &SecretKey::y1_0}, {"y2_0", &SecretKey::y2_0},
        {"y3_0", &SecretKey::y3_0}, {"a", &SecretKey::a},
        {"b", &SecretKey::b},       {"c", &SecretKey::c}};

    std::vector<SensitivityRow> rows;
    rows.reserve(14);
    const auto run_row = [&](const std::string& name, const SecretKey& k,
                             bool sub_ulp) {
        const VoiceSignal recovered = decrypt(k, ct, step);
        rows.push_back({name, percent_difference(sig, recovered), sub_ulp});
    };

    // row order: Lorenz components, t, Chen components, control
    for (int i = 0; i < 6; ++i) {
        SecretKey k = key;
        k.*(fields[i].member) += delta;
        run_row(fields[i].name, k, k.*(fields[i].member) == key.*(fields[i].member));
    }
    {
        SecretKey k = key;
        k.t += 1;
        run_row("t", k, false);
    }
    for (int i = 6; i < 12; ++i) {
        SecretKey k = key;
        k.*(fields[i].member) += delta;
        run_row(fields[i].name, k, k.*(fields[i].member) == key.*(fields[i].member));
    }
    run_row("control", key, false);
    return rows;
}

struct TestResult {
    std::string name;
    bool implemented = true;
    bool run = false;
    double statistic = std::numeric_limits<double>::quiet_NaN();
    double p_value = std::numeric_limits<double>::quiet_NaN();
    bool passed = false;
    std::string note;
    std::map<std::string, double> details;
};

struct AnalysisReport {
    double alpha = 0.01;
    std::size_t bit_count = 0;
    std::vector<TestResult> tests;
    double max_offpeak_autocorr = std::numeric_limits<double>::quiet_NaN();
    std::size_t autocorr_max_lag = 0;
    double prd = std::numeric_limits<double>::quiet_NaN();
    double sensitivity_delta = 0.0;
    std::vector<SensitivityRow> sensitivity_rows;

    // p-values of the tests that actually ran
    std::map<std::string, double> p_values() const {
        std::map<std::string, double> out;
        for (const auto& t : tests)
            if (t.implemented && t.run) out[t.name] = t.p_value;
        return out;
    }
};

// Runs the implemented battery plus the off-peak autocorrelation scan.
// Tests whose preconditions the input cannot meet are reported as not run
// rather than raising; randomness failures are results, not errors.
inline AnalysisReport analyze_bits(const BitStream& bits,
                                   double alpha = 0.01) {
    AnalysisReport rep;
    rep.alpha = alpha;
    rep.bit_count = bits.size();

    const auto add = [&](const std::string& name, auto&& fn) {
        TestResult tr;
        tr.name = name;
        try {
            const nist::TestStat st = fn();
            tr.run = true;
            tr.statistic = st.statistic;
            tr.p_value = st.p_value;
            tr.passed = st.p_value >= alpha;
        } catch (const Error& e) {
            tr.note = e.what();
        }
        rep.tests.push_back(std::move(tr));
    };
    const auto not_implemented = [&](const std::string& name) {
        TestResult tr;
        tr.name = name;
        tr.implemented = false;
        tr.note = "not implemented; export the bitstream for external tooling";
        rep.tests.push_back(std::move(tr));
    };

    add("frequency", [&] {
        if (bits.size() < 100)
            throw LengthError("need at least 100 bits");
        return nist::detail::frequency_raw(bits);
    });
    add("block_frequency", [&] {
        if (bits.size() < 128)
            throw LengthError("need at least one 128-bit block");
        return nist::detail::block_frequency_raw(bits, 128);
    });
    add("cusum_forward", [&] {
        if (bits.size() < 100)
            throw LengthError("need at least 100 bits");
        return nist::detail::cusum_raw(bits, nist::CusumMode::forward);
    });
    add("cusum_reverse", [&] {
        if (bits.size() < 100)
            throw LengthError("need at least 100 bits");
        return nist::detail::cusum_raw(bits, nist::CusumMode::reverse);
    });
    add("runs", [&] {
        if (bits.size() < 100)
            throw LengthError("need at least 100 bits");
        return nist::detail::runs_raw(bits);
    });
    add("longest_runs", [&] {
        if (bits.size() < 128)
            throw LengthError("need at least 128 bits");
        return nist::detail::longest_runs_raw(bits);
    });
    not_implemented("rank");
    add("spectral", [&] {
        if (bits.size() < 1000)
            throw LengthError("need at least 1000 bits");
        return nist::detail::spectral_raw(bits);
    });
    not_implemented("linear_complexity");
    {
        TestResult tr;
        tr.name = "serial";
        try {
            if (bits.size() < 100)
                throw LengthError("need at least 100 bits");
            const auto s = nist::detail::serial_raw(bits, 2);
            tr.run = true;
            tr.statistic = s.del1;
            tr.p_value = std::min(s.p1, s.p2);
            tr.passed = tr.p_value >= alpha;
            tr.note = "p = min(p1, p2), m = 2";
            tr.details = {{"p1", s.p1}, {"p2", s.p2}, {"del2", s.del2}};
        } catch (const Error& e) {
            tr.note = e.what();
        }
        rep.tests.push_back(std::move(tr));
    }
    add("approximate_entropy", [&] {
        if (bits.size() < 100)
            throw LengthError("need at least 100 bits");
        return nist::detail::approx_entropy_raw(bits, 2);
    });
    not_implemented("lempel_ziv");
    not_implemented("overlapping_template");

    if (bits.size() >= 2) {
        try {
            rep.autocorr_max_lag = std::min<std::size_t>(1000, bits.size() - 1);
            rep.max_offpeak_autocorr =
                max_offpeak_autocorrelation(bits, rep.autocorr_max_lag);
        } catch (const DegenerateInput&) {
            // constant stream: leave NaN
        }
    }
    return rep;
}

}  // namespace chaostream
