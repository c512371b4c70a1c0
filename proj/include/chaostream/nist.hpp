#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "chaostream/bitstream.hpp"
#include "chaostream/detail/fft.hpp"
#include "chaostream/detail/special.hpp"
#include "chaostream/errors.hpp"

// The implemented subset of the SP 800-22 battery. Public functions enforce
// the published minimum lengths; the detail versions compute the bare
// statistic and are what the worked-example tests call on short vectors.
namespace chaostream::nist {

struct TestStat {
    double statistic = 0.0;
    double p_value = 0.0;
};

struct SerialStat {
    double del1 = 0.0;
    double del2 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
};

enum class CusumMode { forward, reverse };

namespace detail {

using chaostream::detail::clamp_p;
using chaostream::detail::igamc;
using chaostream::detail::normal_cdf;

inline TestStat frequency_raw(const BitStream& bits) {
    const std::size_t n = bits.size();
    if (n == 0) throw LengthError("frequency: empty input");
    long long s = 0;
    for (std::size_t i = 0; i < n; ++i) s += 2 * bits.bit(i) - 1;
    const double s_obs =
        std::fabs(static_cast<double>(s)) / std::sqrt(static_cast<double>(n));
    return {s_obs, clamp_p(std::erfc(s_obs / std::sqrt(2.0)))};
}

inline TestStat block_frequency_raw(const BitStream& bits, int block_len) {
    const std::size_t n = bits.size();
    const std::size_t m = static_cast<std::size_t>(block_len);
    const std::size_t nblocks = n / m;
    double sum = 0.0;
    for (std::size_t blk = 0; blk < nblocks; ++blk) {
        std::size_t ones = 0;
        for (std::size_t j = 0; j < m; ++j)
            ones += static_cast<std::size_t>(bits.bit(blk * m + j));
        const double pi = static_cast<double>(ones) / static_cast<double>(m);
        sum += (pi - 0.5) * (pi - 0.5);
    }
    const double chi2 = 4.0 * static_cast<double>(m) * sum;
    return {chi2, clamp_p(igamc(static_cast<double>(nblocks) / 2.0,
                                chi2 / 2.0))};
}

inline TestStat cusum_raw(const BitStream& bits, CusumMode mode) {
    const long long n = static_cast<long long>(bits.size());
    if (n == 0) throw LengthError("cusum: empty input");
    long long s = 0, z = 0;
    for (long long i = 0; i < n; ++i) {
        const std::size_t idx = mode == CusumMode::forward
                                    ? static_cast<std::size_t>(i)
                                    : static_cast<std::size_t>(n - 1 - i);
        s += 2 * bits.bit(idx) - 1;
        z = std::max(z, std::llabs(s));
    }
    const double sqn = std::sqrt(static_cast<double>(n));
    const double zd = static_cast<double>(z);
    double sum1 = 0.0;
    for (long long k = (-n / z + 1) / 4; k <= (n / z - 1) / 4; ++k) {
        sum1 += normal_cdf((4 * k + 1) * zd / sqn);
        sum1 -= normal_cdf((4 * k - 1) * zd / sqn);
    }
    double sum2 = 0.0;
    for (long long k = (-n / z - 3) / 4; k <= (n / z - 1) / 4; ++k) {
        sum2 += normal_cdf((4 * k + 3) * zd / sqn);
        sum2 -= normal_cdf((4 * k + 1) * zd / sqn);
    }
    return {zd, clamp_p(1.0 - sum1 + sum2)};
}

inline TestStat runs_raw(const BitStream& bits) {
    const std::size_t n = bits.size();
    if (n < 2) throw LengthError("runs: need at least 2 bits");
    const double pi =
        static_cast<double>(bits.count_ones()) / static_cast<double>(n);
    // frequency pre-check from the published procedure
    if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(static_cast<double>(n)))
        return {0.0, 0.0};
    std::size_t v = 1;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (bits.bit(i) != bits.bit(i + 1)) ++v;
    const double nd = static_cast<double>(n);
    const double num = std::fabs(static_cast<double>(v) -
                                 2.0 * nd * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * nd) * pi * (1.0 - pi);
    return {static_cast<double>(v), clamp_p(std::erfc(num / den))};
}

inline TestStat longest_runs_raw(const BitStream& bits) {
    const std::size_t n = bits.size();
    if (n < 128) throw LengthError("longest_runs: need at least 128 bits");
    std::size_t m;
    int k, vmin, vmax;
    std::vector<double> pi;
    if (n < 6272) {
        m = 8;
        k = 3;
        vmin = 1;
        vmax = 4;
        pi = {0.21484375, 0.3671875, 0.23046875, 0.1875};
    } else if (n < 750000) {
        m = 128;
        k = 5;
        vmin = 4;
        vmax = 9;
        pi = {0.1174035788, 0.242955959, 0.249363483,
              0.17517706,   0.102701071, 0.112398847};
    } else {
        m = 10000;
        k = 6;
        vmin = 10;
        vmax = 16;
        pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
    }
    const std::size_t nblocks = n / m;
    std::vector<std::size_t> nu(static_cast<std::size_t>(k) + 1, 0);
    for (std::size_t blk = 0; blk < nblocks; ++blk) {
        int longest = 0, run = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (bits.bit(blk * m + j)) {
                ++run;
                longest = std::max(longest, run);
            } else {
                run = 0;
            }
        }
        const int cls = std::min(std::max(longest, vmin), vmax) - vmin;
        ++nu[static_cast<std::size_t>(cls)];
    }
    double chi2 = 0.0;
    for (int i = 0; i <= k; ++i) {
        const double expected = static_cast<double>(nblocks) *
                                pi[static_cast<std::size_t>(i)];
        const double d = static_cast<double>(nu[static_cast<std::size_t>(i)]) -
                         expected;
        chi2 += d * d / expected;
    }
    return {chi2, clamp_p(igamc(k / 2.0, chi2 / 2.0))};
}

inline TestStat spectral_raw(const BitStream& bits) {
    const std::size_t n = bits.size();
    if (n < 2) throw LengthError("spectral: need at least 2 bits");
    std::vector<std::complex<double>> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = std::complex<double>(2.0 * bits.bit(i) - 1.0, 0.0);
    const auto spectrum = chaostream::detail::dft(x);
    // only bins 0 .. n/2-1 enter the count, mirroring the published code
    const double threshold =
        std::sqrt(std::log(20.0) * static_cast<double>(n));
    std::size_t n1 = 0;
    for (std::size_t j = 0; j < n / 2; ++j)
        if (std::abs(spectrum[j]) < threshold) ++n1;
    const double n0 = 0.95 * static_cast<double>(n) / 2.0;
    const double d = (static_cast<double>(n1) - n0) /
                     std::sqrt(static_cast<double>(n) * 0.95 * 0.05 / 4.0);
    return {d, clamp_p(std::erfc(std::fabs(d) / std::sqrt(2.0)))};
}

inline double psi_squared(const BitStream& bits, int m) {
    if (m <= 0) return 0.0;
    const std::size_t n = bits.size();
    std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t idx = 0;
        for (int j = 0; j < m; ++j)
            idx = (idx << 1) |
                  static_cast<std::size_t>(
                      bits.bit((i + static_cast<std::size_t>(j)) % n));
        ++counts[idx];
    }
    double sum = 0.0;
    for (std::uint64_t c : counts)
        sum += static_cast<double>(c) * static_cast<double>(c);
    return static_cast<double>(std::size_t{1} << m) /
               static_cast<double>(n) * sum -
           static_cast<double>(n);
}

inline SerialStat serial_raw(const BitStream& bits, int m) {
    const double psim0 = psi_squared(bits, m);
    const double psim1 = psi_squared(bits, m - 1);
    const double psim2 = psi_squared(bits, m - 2);
    SerialStat s;
    s.del1 = psim0 - psim1;
    s.del2 = psim0 - 2.0 * psim1 + psim2;
    s.p1 = clamp_p(igamc(std::pow(2.0, m - 1) / 2.0, s.del1 / 2.0));
    s.p2 = clamp_p(igamc(std::pow(2.0, m - 2) / 2.0, s.del2 / 2.0));
    return s;
}

inline TestStat approx_entropy_raw(const BitStream& bits, int m) {
    const std::size_t n = bits.size();
    const auto phi = [&](int blk) {
        if (blk <= 0) return 0.0;
        std::vector<std::uint64_t> counts(std::size_t{1} << blk, 0);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t idx = 0;
            for (int j = 0; j < blk; ++j)
                idx = (idx << 1) |
                      static_cast<std::size_t>(
                          bits.bit((i + static_cast<std::size_t>(j)) % n));
            ++counts[idx];
        }
        double sum = 0.0;
        for (std::uint64_t c : counts)
            if (c > 0)
                sum += static_cast<double>(c) *
                       std::log(static_cast<double>(c) /
                                static_cast<double>(n));
        return sum / static_cast<double>(n);
    };
    const double apen = phi(m) - phi(m + 1);
    const double chi2 =
        2.0 * static_cast<double>(n) * (std::log(2.0) - apen);
    return {chi2, clamp_p(igamc(std::pow(2.0, m - 1), chi2 / 2.0))};
}

inline int max_pattern_length(std::size_t n) {
    return static_cast<int>(std::bit_width(n)) - 1 - 2;  // floor(log2 n) - 2
}

}  // namespace detail

inline double frequency(const BitStream& bits) {
    if (bits.size() < 100)
        throw LengthError("frequency: need at least 100 bits");
    return detail::frequency_raw(bits).p_value;
}

inline double block_frequency(const BitStream& bits, int block_len = 128) {
    if (block_len < 1)
        throw ParamError("block_frequency: block length must be positive");
    if (bits.size() < static_cast<std::size_t>(block_len))
        throw LengthError("block_frequency: input shorter than one block");
    return detail::block_frequency_raw(bits, block_len).p_value;
}

inline double cusum(const BitStream& bits, CusumMode mode) {
    if (bits.size() < 100) throw LengthError("cusum: need at least 100 bits");
    return detail::cusum_raw(bits, mode).p_value;
}

inline double runs(const BitStream& bits) {
    if (bits.size() < 100) throw LengthError("runs: need at least 100 bits");
    return detail::runs_raw(bits).p_value;
}

inline double longest_runs(const BitStream& bits) {
    if (bits.size() < 128)
        throw LengthError("longest_runs: need at least 128 bits");
    return detail::longest_runs_raw(bits).p_value;
}

inline double spectral(const BitStream& bits) {
    if (bits.size() < 1000)
        throw LengthError("spectral: need at least 1000 bits");
    return detail::spectral_raw(bits).p_value;
}

inline std::pair<double, double> serial(const BitStream& bits, int m = 2) {
    if (bits.size() < 100)
        throw LengthError("serial: need at least 100 bits");
    if (m < 2) throw ParamError("serial: pattern length must be >= 2");
    if (m > detail::max_pattern_length(bits.size()))
        throw ParamError("serial: pattern length exceeds floor(log2 n) - 2");
    const auto s = detail::serial_raw(bits, m);
    return {s.p1, s.p2};
}

inline double approx_entropy(const BitStream& bits, int m = 2) {
    if (bits.size() < 100)
        throw LengthError("approx_entropy: need at least 100 bits");
    if (m < 1) throw ParamError("approx_entropy: pattern length must be >= 1");
    if (m > detail::max_pattern_length(bits.size()))
        throw ParamError(
            "approx_entropy: pattern length exceeds floor(log2 n) - 2");
    return detail::approx_entropy_raw(bits, m).p_value;
}

}  // namespace chaostream::nist
