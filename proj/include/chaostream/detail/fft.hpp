#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace chaostream::detail {

// Iterative radix-2 Cooley-Tukey transform; size must be a power of two.
// Twiddles come from a table filled with std::polar so accuracy does not
// degrade with transform size.
inline void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    std::vector<std::complex<double>> twiddle(n / 2);
    for (std::size_t i = 0; i < n / 2; ++i)
        twiddle[i] = std::polar(
            1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(i) /
                     static_cast<double>(n));

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v =
                    a[i + j + len / 2] * twiddle[j * stride];
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

// Forward DFT of arbitrary length via Bluestein's chirp-z reduction to a
// power-of-two convolution. Chirp phases are reduced modulo 2n before the
// trig evaluation so they stay accurate for large indices.
inline std::vector<std::complex<double>> dft(
    const std::vector<std::complex<double>>& input) {
    const std::size_t n = input.size();
    if (n == 0) return {};
    if ((n & (n - 1)) == 0) {
        auto a = input;
        fft_pow2(a, false);
        return a;
    }

    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;

    std::vector<std::complex<double>> chirp(n);
    for (std::size_t j = 0; j < n; ++j) {
        const unsigned long long j2 =
            (static_cast<unsigned long long>(j) * j) %
            (2ull * static_cast<unsigned long long>(n));
        chirp[j] = std::polar(1.0, -std::numbers::pi *
                                       static_cast<double>(j2) /
                                       static_cast<double>(n));
    }

    std::vector<std::complex<double>> a(m), b(m);
    for (std::size_t j = 0; j < n; ++j) a[j] = input[j] * chirp[j];
    b[0] = std::conj(chirp[0]);
    for (std::size_t j = 1; j < n; ++j)
        b[j] = b[m - j] = std::conj(chirp[j]);

    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t j = 0; j < m; ++j) a[j] *= b[j];
    fft_pow2(a, true);

    std::vector<std::complex<double>> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = a[j] * chirp[j];
    return out;
}

}  // namespace chaostream::detail
