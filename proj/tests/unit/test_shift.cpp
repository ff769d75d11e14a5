#include "nutdisc/discrepancy.hpp"
#include "nutdisc/error.hpp"
#include "nutdisc/shift.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace nutdisc;

namespace {

BigInt big(unsigned long n) { return BigInt(n); }

}  // namespace

TEST_CASE("binary decomposition") {
    auto d = binary_decomposition(big(21));
    CHECK(d.exponents == std::vector<std::size_t>{4, 2, 0});
    CHECK(d.r() == 3);
    CHECK(binary_decomposition(pow2(70)).exponents == std::vector<std::size_t>{70});
    CHECK(binary_decomposition(big(7)).exponents == std::vector<std::size_t>{2, 1, 0});
    CHECK_THROWS_AS(binary_decomposition(big(0)), Error);
}

TEST_CASE("sigma_r for the identity at N = 21") {
    auto s = sigma_r_vector(Gf2Matrix::identity(8), binary_decomposition(big(21)));
    CHECK(s.first == 1);
    CHECK(s.last == 5);
    for (std::size_t j = 1; j <= 5; ++j) CHECK(s(j) == (j == 3 || j == 5));
}

TEST_CASE("sigma_r for band matrices alternates in blocks of alpha") {
    for (std::size_t alpha : {1U, 2U, 3U, 4U}) {
        const std::size_t r = 5;
        BigInt count = 0;
        for (std::size_t i = 1; i <= r; ++i) count += pow2(2 * alpha * (r - i));
        auto c = build_matrix(MatrixSpec::band(alpha, 2 * alpha * r + 2));
        auto s = sigma_r_vector(c, binary_decomposition(count));
        CAPTURE(alpha);
        for (std::size_t j = 1; j <= 2 * alpha * (r - 1) + 1; ++j) {
            // 0 on [1, alpha+1], then blocks of width alpha alternating 1, 0, 1, ...
            const bool expected = j > alpha + 1 && ((j - alpha - 2) / alpha) % 2 == 0;
            CAPTURE(j);
            CHECK(s(j) == expected);
        }
    }
}

TEST_CASE("delta shifts for the identity at N = 21") {
    auto id = Gf2Matrix::identity(8);
    auto d = binary_decomposition(big(21));
    auto s1 = delta_shift(id, d, 1);
    CHECK(s1.delta == DyadicRational());
    CHECK(s1.carry == 0);
    CHECK(delta_shift(id, d, 2).scaled_delta == Rational(1, 8));
    CHECK(delta_shift(id, d, 2).delta.value() == Rational(1, 32));
    CHECK(delta_shift(id, d, 3).scaled_delta == Rational(5, 32));
    CHECK(delta_shift(id, d, 3).delta.value() == Rational(5, 32));
    CHECK_THROWS_AS(delta_shift(id, d, 4), Error);
    CHECK_THROWS_AS(delta_shift(id, d, 0), Error);
}

TEST_CASE("fast integral examples") {
    auto id = Gf2Matrix::identity(8);
    CHECK(signed_integral_fast(id, big(21)) == Rational(39, 32));
    CHECK(signed_integral_fast(build_matrix(MatrixSpec::upper1(8)), big(3)) == Rational(1, 4));
    auto upper_shift = delta_shift(build_matrix(MatrixSpec::upper1(8)), binary_decomposition(big(3)), 2);
    CHECK(upper_shift.delta.value() == Rational(3, 4));
    for (const auto& m : oracle::battery(40)) {
        for (std::size_t k = 0; k < 39; ++k) CHECK(signed_integral_fast(m.matrix, pow2(k)) == Rational(1, 2));
    }
}

TEST_CASE("fast integral preconditions") {
    auto small = Gf2Matrix::identity(4);
    try {
        signed_integral_fast(small, big(16));
        FAIL("expected a dimension error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::dimension);
    }
    auto lower = Gf2Matrix::from_entries(6, [](std::size_t i, std::size_t j) { return j <= i; });
    try {
        signed_integral_fast(lower, big(5));
        FAIL("expected unsupported");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::unsupported);
    }
}

TEST_CASE("fast integral equals the entrywise oracle") {
    for (const auto& m : oracle::battery(14)) {
        CAPTURE(m.name);
        auto ref = oracle::prefix(m.matrix, 1 << 10);
        Rational running = 0;
        for (std::uint64_t n = 1; n <= ref.size(); ++n) {
            running += Rational(1, 2) - ref[n - 1];
            CHECK(signed_integral_fast(m.matrix, big(n)) == running);
        }
    }
}

TEST_CASE("random NUT matrices at large N") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        auto c = build_matrix(oracle::random_nut(1000 + trial, 32));
        BigInt n = big(1 + rng() % ((1UL << 20) - 1));
        auto d = binary_decomposition(n);
        CHECK(sigma_flip_check(c, d));
        if (n < 70000) {
            CHECK(signed_integral_fast(c, n) ==
                  signed_integral_direct(prefix(c, static_cast<std::size_t>(n.get_ui()))));
        }
        for (std::size_t i = 1; i <= d.r(); ++i) {
            auto s = delta_shift(c, d, i);
            // support stops at n_1 + 1
            CHECK(s.sigma.bits.size() <= d.top() + 1);
            CHECK(s.delta.value() >= 0);
            CHECK(s.delta.value() < 1);
        }
    }
}

TEST_CASE("sigma flip relation") {
    CHECK(sigma_flip_check(Gf2Matrix::identity(8), binary_decomposition(big(21))));
    auto band2 = build_matrix(MatrixSpec::band(2, 16));
    CHECK(sigma_flip_check(band2, binary_decomposition(big(273))));
    for (const auto& m : oracle::battery(16)) {
        for (unsigned long n = 1; n < 2000; n += 7) CHECK(sigma_flip_check(m.matrix, binary_decomposition(big(n))));
    }
}

TEST_CASE("truncated form") {
    auto id = Gf2Matrix::identity(10);
    auto t = truncated_integral(id, binary_decomposition(big(21)));
    CHECK(t.exact == Rational(39, 32));
    CHECK(t.residual == t.exact - t.truncated);
    auto one = truncated_integral(id, binary_decomposition(big(8)));
    CHECK(one.exact == Rational(1, 2));
}
