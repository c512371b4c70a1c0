#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "chaostream/detail/special.hpp"
#include "chaostream/nist.hpp"
#include "test_util.hpp"

using namespace chaostream;
using Catch::Approx;
using testutil::bits_from_string;

// Frozen expectations below were computed with tests/oracle/nist_reference.py
// (scipy-backed); the short vectors are the published worked examples.

TEST_CASE("frequency test worked example", "[nist]") {
    const auto r = nist::detail::frequency_raw(bits_from_string("1011010101"));
    CHECK(r.statistic == Approx(2.0 / std::sqrt(10.0)).margin(1e-12));
    CHECK(r.p_value == Approx(0.527089).margin(1e-5));
    CHECK(r.p_value == Approx(0.5270892568655381).margin(1e-9));
}

TEST_CASE("frequency test extremes", "[nist]") {
    BitStream balanced;
    for (int i = 0; i < 100; ++i) balanced.push_back(i % 2);
    CHECK(nist::frequency(balanced) == 1.0);

    const BitStream zeros(100);
    CHECK(nist::frequency(zeros) < 1e-20);

    CHECK_THROWS_AS(nist::frequency(BitStream(99)), LengthError);
}

TEST_CASE("runs test worked example", "[nist]") {
    const auto r = nist::detail::runs_raw(bits_from_string("1001101011"));
    CHECK(r.statistic == 7.0);
    CHECK(r.p_value == Approx(0.147232).margin(1e-5));
    CHECK(r.p_value == Approx(0.14723225536366571).margin(1e-9));
}

TEST_CASE("runs test applies the frequency pre-check", "[nist]") {
    BitStream biased;
    for (int i = 0; i < 100; ++i) biased.push_back(i < 90 ? 1 : 0);
    CHECK(nist::runs(biased) == 0.0);
    CHECK_THROWS_AS(nist::runs(BitStream(10)), LengthError);
}

TEST_CASE("block frequency worked example and extremes", "[nist]") {
    const auto r = nist::detail::block_frequency_raw(
        bits_from_string("0110011010"), 3);
    CHECK(r.p_value == Approx(0.8012519569012009).margin(1e-9));

    // every block exactly half ones -> chi2 = 0 -> p = 1
    BitStream half;
    for (int i = 0; i < 512; ++i) half.push_back(i % 2);
    CHECK(nist::block_frequency(half, 4) == 1.0);

    BitStream ones;
    for (int i = 0; i < 2000; ++i) ones.push_back(1);
    CHECK(nist::block_frequency(ones, 128) < 1e-12);

    CHECK_THROWS_AS(nist::block_frequency(BitStream(10), 0), ParamError);
    CHECK_THROWS_AS(nist::block_frequency(BitStream(10), 128), LengthError);
}

TEST_CASE("cusum worked example", "[nist]") {
    const BitStream bits = bits_from_string("1011010111");
    const auto f = nist::detail::cusum_raw(bits, nist::CusumMode::forward);
    const auto b = nist::detail::cusum_raw(bits, nist::CusumMode::reverse);
    CHECK(f.statistic == 4.0);
    CHECK(f.p_value == Approx(0.4116586191538023).margin(1e-9));
    CHECK(b.p_value == Approx(0.4116586191538023).margin(1e-9));
}

TEST_CASE("cusum of an alternating stream is maximally unsurprising",
          "[nist]") {
    BitStream alt;
    for (int i = 0; i < 100; ++i) alt.push_back(i % 2 == 0);
    const auto r = nist::detail::cusum_raw(alt, nist::CusumMode::forward);
    CHECK(r.statistic == 1.0);
    CHECK(r.p_value == Approx(1.0).margin(1e-12));
    CHECK_THROWS_AS(nist::cusum(BitStream(10), nist::CusumMode::forward),
                    LengthError);
}

TEST_CASE("longest runs worked example", "[nist]") {
    const std::string s =
        "1100110000010101011011000100110011100000000000100100110101010001"
        "0001001111010110100000001101011111001100111001101101100010110010";
    const auto r = nist::detail::longest_runs_raw(bits_from_string(s));
    CHECK(r.p_value == Approx(0.1806093182397121).margin(1e-9));
    CHECK_THROWS_AS(nist::longest_runs(BitStream(100)), LengthError);
}

TEST_CASE("spectral test agrees with the reference on a seeded input",
          "[nist]") {
    const BitStream bits = testutil::splitmix_bits(42, 2000);
    const auto r = nist::detail::spectral_raw(bits);
    CHECK(r.p_value == Approx(0.6815188972977637).margin(1e-9));
    CHECK(nist::detail::frequency_raw(bits).p_value ==
          Approx(0.1946589114126912).margin(1e-9));
    CHECK_THROWS_AS(nist::spectral(BitStream(500)), LengthError);
}

TEST_CASE("serial worked example", "[nist]") {
    const auto r = nist::detail::serial_raw(bits_from_string("0011011101"), 3);
    CHECK(r.p1 == Approx(0.8087921354109989).margin(1e-9));
    CHECK(r.p2 == Approx(0.6703200460356398).margin(1e-9));

    const BitStream bits = testutil::splitmix_bits(3, 4096);
    CHECK_THROWS_AS(nist::serial(bits, 1), ParamError);
    CHECK_THROWS_AS(nist::serial(bits, 11), ParamError);  // floor(log2)-2 = 10
    const auto [p1, p2] = nist::serial(bits, 2);
    CHECK(p1 >= 0.0);
    CHECK(p1 <= 1.0);
    CHECK(p2 >= 0.0);
    CHECK(p2 <= 1.0);
}

TEST_CASE("approximate entropy worked example and degenerate input",
          "[nist]") {
    const auto r =
        nist::detail::approx_entropy_raw(bits_from_string("0100110101"), 3);
    CHECK(r.p_value == Approx(0.2619611048816654).margin(1e-9));

    const BitStream zeros(2000);
    CHECK(nist::approx_entropy(zeros, 2) < 1e-12);
    CHECK_THROWS_AS(nist::approx_entropy(testutil::splitmix_bits(1, 200), 0),
                    ParamError);
}

TEST_CASE("igamc matches analytic identities and frozen references",
          "[nist]") {
    using chaostream::detail::igam;
    using chaostream::detail::igamc;

    // two independent routes to the same values
    CHECK(igamc(0.5, 1.0) == Approx(std::erfc(1.0)).epsilon(1e-13));
    CHECK(igamc(1.0, 7.0) == Approx(std::exp(-7.0)).epsilon(1e-13));

    CHECK(igamc(0.5, 1.0) == Approx(0.15729920705028105).epsilon(1e-12));
    CHECK(igamc(2.5, 3.2) == Approx(0.2692187989871035).epsilon(1e-12));
    CHECK(igamc(390.5, 400.0) == Approx(0.3107469014172151).epsilon(1e-12));
    CHECK(igamc(2.0, 0.1) == Approx(0.9953211598395555).epsilon(1e-12));

    for (double a : {0.5, 1.0, 3.3, 17.0})
        for (double x : {0.1, 1.0, 2.2, 40.0})
            CHECK(igam(a, x) + igamc(a, x) == Approx(1.0).epsilon(1e-12));

    CHECK(igamc(2.0, 0.0) == 1.0);
    CHECK(igam(2.0, 0.0) == 0.0);
}

TEST_CASE("p-values stay within [0,1] on random streams", "[nist]") {
    for (std::uint64_t seed : {101ull, 202ull, 303ull, 404ull, 505ull}) {
        const BitStream bits = testutil::splitmix_bits(seed, 2000);
        const double ps[] = {
            nist::frequency(bits),
            nist::block_frequency(bits, 128),
            nist::cusum(bits, nist::CusumMode::forward),
            nist::cusum(bits, nist::CusumMode::reverse),
            nist::runs(bits),
            nist::longest_runs(bits),
            nist::spectral(bits),
            nist::serial(bits, 2).first,
            nist::serial(bits, 2).second,
            nist::approx_entropy(bits, 2),
        };
        for (double p : ps) {
            REQUIRE(p >= 0.0);
            REQUIRE(p <= 1.0);
        }
    }
}
