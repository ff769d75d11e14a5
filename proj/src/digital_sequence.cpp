#include "nutdisc/digital_sequence.hpp"

#include "nutdisc/error.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>

namespace nutdisc {

// -- DyadicRational ----------------------------------------------------------

DyadicRational::DyadicRational(BigInt numerator, std::size_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
    if (sgn(numerator_) < 0) throw Error(ErrorKind::domain, "dyadic numerator must be >= 0");
    if (sgn(numerator_) == 0) {
        exponent_ = 0;
        return;
    }
    std::size_t twos = mpz_scan1(numerator_.get_mpz_t(), 0);
    std::size_t shift = std::min(twos, exponent_);
    if (shift > 0) {
        mpz_fdiv_q_2exp(numerator_.get_mpz_t(), numerator_.get_mpz_t(), shift);
        exponent_ -= shift;
    }
}

Rational DyadicRational::value() const {
    Rational q(numerator_, pow2(exponent_));
    q.canonicalize();
    return q;
}

BigInt DyadicRational::scaled_numerator(std::size_t e) const {
    BigInt out;
    mpz_mul_2exp(out.get_mpz_t(), numerator_.get_mpz_t(), e - exponent_);
    return out;
}

std::string DyadicRational::to_string() const {
    return numerator_.get_str(10) + "/2^" + std::to_string(exponent_);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
    std::size_t e = std::max(a.exponent_, b.exponent_);
    int c = cmp(a.scaled_numerator(e), b.scaled_numerator(e));
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

// -- PointSet ----------------------------------------------------------------

struct PointSet::Data {
    std::vector<DyadicRational> points;
    std::size_t max_exponent = 0;
    std::once_flag sorted_once;
    std::vector<DyadicRational> sorted;
};

PointSet::PointSet() : data_(std::make_shared<Data>()) {}

PointSet::PointSet(std::vector<DyadicRational> points) : data_(std::make_shared<Data>()) {
    for (const auto& x : points) {
        if (cmp(x.numerator(), pow2(x.exponent())) >= 0) {
            throw Error(ErrorKind::domain, "point " + x.to_string() + " is outside [0,1)");
        }
        data_->max_exponent = std::max(data_->max_exponent, x.exponent());
    }
    data_->points = std::move(points);
}

std::size_t PointSet::size() const noexcept { return data_->points.size(); }

const std::vector<DyadicRational>& PointSet::points() const noexcept { return data_->points; }

std::size_t PointSet::max_exponent() const noexcept { return data_->max_exponent; }

const std::vector<DyadicRational>& PointSet::sorted() const {
    std::call_once(data_->sorted_once, [d = data_.get()] {
        const auto& pts = d->points;
        std::vector<std::size_t> order(pts.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        if (d->max_exponent <= 64) {
            // common-denominator machine keys
            std::vector<std::uint64_t> keys(pts.size());
            for (std::size_t n = 0; n < pts.size(); ++n) {
                keys[n] = pts[n].scaled_numerator(d->max_exponent).get_ui();
            }
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
        } else {
            std::vector<BigInt> keys(pts.size());
            for (std::size_t n = 0; n < pts.size(); ++n) {
                keys[n] = pts[n].scaled_numerator(d->max_exponent);
            }
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
        }
        d->sorted.reserve(pts.size());
        for (auto n : order) d->sorted.push_back(pts[n]);
    });
    return data_->sorted;
}

// -- generation --------------------------------------------------------------

DyadicRational element(const Gf2Matrix& c, const BigInt& n) {
    const std::size_t m = c.dimension();
    if (sgn(n) < 0 || bit_length(n) > m) {
        throw Error(ErrorKind::out_of_range,
                    "element: index " + n.get_str() + " needs more than " + std::to_string(m) +
                        " digits");
    }
    BitVector y = matvec(c, bits_lsb(n));
    // y_j contributes 2^{M-j} at denominator 2^M
    BigInt k;
    for (std::size_t j = 1; j <= m; ++j) {
        if (y.get(j - 1)) mpz_setbit(k.get_mpz_t(), m - j);
    }
    return DyadicRational(std::move(k), m);
}

PointSet prefix(const Gf2Matrix& c, std::size_t count, std::size_t budget) {
    const std::size_t m = c.dimension();
    if (count > budget) {
        throw Error(ErrorKind::resource,
                    "prefix of " + std::to_string(count) + " points exceeds the point budget of " +
                        std::to_string(budget) + "; use the fast integral path instead");
    }
    if (count > 0 && static_cast<std::size_t>(std::bit_width(count - 1)) > m) {
        throw Error(ErrorKind::out_of_range, "prefix: N exceeds 2^M");
    }

    // Column j of C, read as the numerator of a fraction with denominator 2^M.
    const std::size_t digits = count > 1 ? static_cast<std::size_t>(std::bit_width(count - 1)) : 0;
    std::vector<DyadicRational> points;
    points.reserve(count);
    if (m <= 64) {
        std::vector<std::uint64_t> column(digits, 0);
        for (std::size_t j = 1; j <= digits; ++j) {
            for (std::size_t i = 1; i <= m; ++i) {
                if (c.at(i, j)) column[j - 1] |= std::uint64_t{1} << (m - i);
            }
        }
        for (std::size_t n = 0; n < count; ++n) {
            std::uint64_t k = 0;
            for (std::size_t bits = n, j = 0; bits != 0; bits >>= 1, ++j) {
                if (bits & 1u) k ^= column[j];
            }
            BigInt num;
            mpz_set_ui(num.get_mpz_t(), k);
            points.emplace_back(std::move(num), m);
        }
    } else {
        std::vector<BigInt> column(digits);
        for (std::size_t j = 1; j <= digits; ++j) {
            for (std::size_t i = 1; i <= m; ++i) {
                if (c.at(i, j)) mpz_setbit(column[j - 1].get_mpz_t(), m - i);
            }
        }
        for (std::size_t n = 0; n < count; ++n) {
            BigInt k;
            for (std::size_t bits = n, j = 0; bits != 0; bits >>= 1, ++j) {
                if (bits & 1u) mpz_xor(k.get_mpz_t(), k.get_mpz_t(), column[j].get_mpz_t());
            }
            points.emplace_back(std::move(k), m);
        }
    }
    return PointSet(std::move(points));
}

}  // namespace nutdisc
