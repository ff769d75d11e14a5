#pragma once

// Elements of the digital (0,1)-sequence X^C over Z_2 as exact dyadic rationals.

#include "nutdisc/gf2.hpp"
#include "nutdisc/numbers.hpp"

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace nutdisc {

/// k / 2^e, kept normalized (k odd, or k = 0 with e = 0).
class DyadicRational {
public:
    DyadicRational() = default;
    DyadicRational(BigInt numerator, std::size_t exponent);

    const BigInt& numerator() const noexcept { return numerator_; }
    std::size_t exponent() const noexcept { return exponent_; }

    Rational value() const;

    /// Numerator rescaled to denominator 2^e, e >= exponent().
    BigInt scaled_numerator(std::size_t e) const;

    /// "k/2^e"
    std::string to_string() const;

    friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
    friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

private:
    BigInt numerator_ = 0;
    std::size_t exponent_ = 0;
};

/// Finite multiset of points in [0,1) in generation order, with a cached sorted view.
class PointSet {
public:
    PointSet();
    explicit PointSet(std::vector<DyadicRational> points);

    std::size_t size() const noexcept;
    bool empty() const noexcept { return size() == 0; }

    const std::vector<DyadicRational>& points() const noexcept;
    const DyadicRational& operator[](std::size_t n) const noexcept { return points()[n]; }

    /// Ascending order; computed once on first use (thread-safe).
    const std::vector<DyadicRational>& sorted() const;

    /// Largest exponent over all points: every point is k / 2^max_exponent().
    std::size_t max_exponent() const noexcept;

private:
    struct Data;
    std::shared_ptr<Data> data_;
};

inline constexpr std::size_t kDefaultPointBudget = std::size_t{1} << 22;

/// x_n = sum_j y_j 2^-j with y = C * digits(n). Requires n < 2^M
/// (Error(out_of_range) otherwise) and C with full-rank prefixes.
DyadicRational element(const Gf2Matrix& c, const BigInt& n);

/// x_0, ..., x_{N-1} in index order. Throws Error(resource) above `budget`
/// and Error(out_of_range) when N > 2^M.
PointSet prefix(const Gf2Matrix& c, std::size_t count, std::size_t budget = kDefaultPointBudget);

}  // namespace nutdisc
