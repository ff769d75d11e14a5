#include "nutdisc/error.hpp"
#include "nutdisc/gf2.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace nutdisc;

TEST_CASE("bits_lsb expands LSB first") {
    CHECK(bits_lsb(std::uint64_t{5}).to_vector() == std::vector<int>{1, 0, 1});
    CHECK(bits_lsb(std::uint64_t{0}).empty());
    CHECK(bits_lsb(std::uint64_t{6}).to_vector() == std::vector<int>{0, 1, 1});

    BigInt big = pow2(200) + 3;
    BitVector bits = bits_lsb(big);
    CHECK(bits.size() == 201);
    CHECK(to_integer(bits) == big);
}

TEST_CASE("matvec hand examples") {
    CHECK(matvec(Gf2Matrix::identity(4), {1, 0, 1}).to_vector() == std::vector<int>{1, 0, 1, 0});
    CHECK(matvec(build_matrix(MatrixSpec::upper1(3)), {1, 1, 0}).to_vector() ==
          std::vector<int>{0, 1, 0});
    CHECK(matvec(build_matrix(MatrixSpec::band(2, 3)), {1, 0, 1}).to_vector() ==
          std::vector<int>{1, 1, 1});
}

TEST_CASE("matvec rejects vectors longer than M") {
    auto c = Gf2Matrix::identity(3);
    try {
        matvec(c, {0, 0, 0, 1});
        FAIL("expected a dimension error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::dimension);
    }
    // trailing zeros are harmless
    CHECK(matvec(c, {1, 0, 0, 0, 0}).to_vector() == std::vector<int>{1, 0, 0});
}

TEST_CASE("matvec is linear and upper triangular") {
    std::mt19937_64 rng(7);
    auto c = build_matrix(oracle::random_nut(3, 40));
    for (int trial = 0; trial < 200; ++trial) {
        std::uint64_t u = rng() & ((std::uint64_t{1} << 40) - 1);
        std::uint64_t v = rng() & ((std::uint64_t{1} << 40) - 1);
        CHECK(matvec(c, bits_lsb(u ^ v)) == (matvec(c, bits_lsb(u)) ^ matvec(c, bits_lsb(v))));

        // digit y_j only sees input digits j..M
        std::size_t j = 1 + rng() % 39;
        std::uint64_t low = rng() & ((std::uint64_t{1} << (j - 1)) - 1);
        auto a = matvec(c, bits_lsb(u)).to_vector();
        auto b = matvec(c, bits_lsb(u ^ low)).to_vector();
        for (std::size_t k = j; k <= 40; ++k) CHECK(a[k - 1] == b[k - 1]);
    }
}

TEST_CASE("full rank prefix check") {
    CHECK(full_rank_prefix_check(Gf2Matrix::identity(8)));
    auto zero_first = Gf2Matrix::from_entries(3, [](std::size_t i, std::size_t j) { return i > 1 && i == j; });
    CHECK_FALSE(full_rank_prefix_check(zero_first));
    // nonsingular overall, but the 1x1 prefix is zero
    auto swap = Gf2Matrix::from_entries(2, [](std::size_t i, std::size_t j) { return i != j; });
    CHECK_FALSE(full_rank_prefix_check(swap));
    // not triangular, every prefix invertible
    auto lower = Gf2Matrix::from_entries(3, [](std::size_t i, std::size_t j) { return j <= i; });
    CHECK(full_rank_prefix_check(lower));
    CHECK_FALSE(lower.is_nut());
    for (const auto& m : oracle::battery(32)) CHECK(full_rank_prefix_check(m.matrix));
}

TEST_CASE("family constructions") {
    CHECK(build_matrix(MatrixSpec::band(1, 16)) == Gf2Matrix::identity(16));
    CHECK(build_matrix(MatrixSpec::column("1", 8)) == build_matrix(MatrixSpec::upper1(8)));
    CHECK(build_matrix(MatrixSpec::rowpattern("1", 8)) == build_matrix(MatrixSpec::upper1(8)));
    CHECK(build_matrix(MatrixSpec::rowpattern("0", 8)) == Gf2Matrix::identity(8));

    // alternating column matrix: row i reads 1 at the diagonal, then a_{j-1}
    auto alt = build_matrix(MatrixSpec::column("01", 6));
    const int expected[6][6] = {{1, 0, 1, 0, 1, 0}, {0, 1, 1, 0, 1, 0}, {0, 0, 1, 0, 1, 0},
                                {0, 0, 0, 1, 1, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}};
    for (std::size_t i = 1; i <= 6; ++i) {
        for (std::size_t j = 1; j <= 6; ++j) CHECK(alt.at(i, j) == (expected[i - 1][j - 1] == 1));
    }

    auto band3 = build_matrix(MatrixSpec::band(3, 10));
    for (std::size_t i = 1; i <= 10; ++i) {
        for (std::size_t j = 1; j <= 10; ++j) CHECK(band3.at(i, j) == (i <= j && j < i + 3));
    }

    auto rows = build_matrix(MatrixSpec::rowpattern("10", 6));
    CHECK(rows.at(1, 6));
    CHECK_FALSE(rows.at(2, 3));
    CHECK(rows.at(3, 5));
    for (const auto& m : oracle::battery(16)) CHECK(m.matrix.is_nut());
}

TEST_CASE("h_count") {
    CHECK(h_count(MatrixSpec::rowpattern("0"), 7) == 7);
    CHECK(h_count(MatrixSpec::rowpattern("1"), 9) == 0);
    CHECK(h_count(MatrixSpec::rowpattern("01"), 5) == 3);
    CHECK_THROWS_AS(h_count(MatrixSpec::identity(), 3), Error);
    CHECK_THROWS_AS(h_count(MatrixSpec::rowpattern("0", 4), 5), Error);
}

TEST_CASE("explicit singular matrices are rejected") {
    auto spec = MatrixSpec::explicit_matrix({{0, 1}, {1, 0}});
    try {
        build_matrix(spec);
        FAIL("expected a singular error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::singular);
    }
}
