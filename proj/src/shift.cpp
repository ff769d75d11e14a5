#include "nutdisc/shift.hpp"

#include "nutdisc/error.hpp"

namespace nutdisc {

namespace {

void require_lemma_preconditions(const Gf2Matrix& c, const BinaryDecomposition& d) {
    if (d.r() == 0) throw Error(ErrorKind::domain, "empty binary decomposition");
    if (d.top() + 1 > c.dimension()) {
        throw Error(ErrorKind::dimension,
                    "N needs " + std::to_string(d.top() + 1) + " matrix columns but M = " +
                        std::to_string(c.dimension()));
    }
    if (!c.is_nut()) {
        throw Error(ErrorKind::unsupported, "shift calculus requires a NUT generator matrix");
    }
}

// Digits of 2^{n_1} + ... + 2^{n_{i-1}}, the index offset of block i.
BitVector block_offset_digits(const BinaryDecomposition& d, std::size_t block) {
    BitVector v(d.top() + 1);
    for (std::size_t l = 1; l < block; ++l) v.set(d.n(l), true);
    return v;
}

// l_i: 0 for i = 1, 1 for i = 2, 1 + 2^{n_{i-2}-n_{i-1}} + ... + 2^{n_1-n_{i-1}} otherwise.
BigInt block_carry(const BinaryDecomposition& d, std::size_t block) {
    BigInt l;
    if (block == 1) return l;
    const std::size_t base = d.n(block - 1);
    for (std::size_t k = 1; k < block; ++k) mpz_setbit(l.get_mpz_t(), d.n(k) - base);
    return l;
}

// 2^{n_i} delta_i * 2^{n_1 - n_i + 1}: sigma_{i,n_i+1..n_1+1} read as a binary integer.
BigInt scaled_shift_numerator(const Gf2Matrix& c, const BinaryDecomposition& d,
                              std::size_t block, const BitVector& offset) {
    const std::size_t ni = d.n(block);
    const std::size_t top = d.top();
    BigInt k;
    for (std::size_t j = 1; j <= top - ni + 1; ++j) {
        if (row_dot(c, ni + j, offset)) mpz_setbit(k.get_mpz_t(), top - ni + 1 - j);
    }
    return k;
}

}  // namespace

BinaryDecomposition binary_decomposition(const BigInt& value) {
    if (value < 1) throw Error(ErrorKind::domain, "binary_decomposition: N must be >= 1");
    BinaryDecomposition d;
    d.value = value;
    for (std::size_t i = bit_length(value); i-- > 0;) {
        if (mpz_tstbit(value.get_mpz_t(), i)) d.exponents.push_back(i);
    }
    return d;
}

SigmaVector sigma_r_vector(const Gf2Matrix& c, const BinaryDecomposition& d) {
    require_lemma_preconditions(c, d);
    const std::size_t lo = d.n(d.r()) + 1;
    const std::size_t hi = d.top() + 1;

    // Indicator on the block: ones at block positions n_l - n_r + 1, l = 1..r-1.
    std::vector<bool> indicator(hi - lo + 1, false);
    for (std::size_t l = 1; l < d.r(); ++l) indicator[d.n(l) - d.n(d.r())] = true;

    SigmaVector out;
    out.first = lo;
    out.last = hi;
    out.bits = BitVector(hi);
    for (std::size_t row = lo; row <= hi; ++row) {
        bool acc = false;
        for (std::size_t col = lo; col <= hi; ++col) {
            if (indicator[col - lo] && c.at(row, col)) acc = !acc;
        }
        out.bits.set(row - 1, acc);
    }
    return out;
}

ShiftVector delta_shift(const Gf2Matrix& c, const BinaryDecomposition& d, std::size_t block) {
    require_lemma_preconditions(c, d);
    if (block < 1 || block > d.r()) {
        throw Error(ErrorKind::domain, "delta_shift: block index " + std::to_string(block) +
                                           " outside 1.." + std::to_string(d.r()));
    }
    const std::size_t top = d.top();
    const std::size_t ni = d.n(block);

    ShiftVector s;
    s.block = block;
    s.carry = block_carry(d, block);

    // digits of 2^{n_{i-1}} l_i
    BitVector offset(top + 1);
    if (block > 1) {
        const std::size_t base = d.n(block - 1);
        for (std::size_t b = 0; b < bit_length(s.carry); ++b) {
            if (mpz_tstbit(s.carry.get_mpz_t(), b)) offset.set(base + b, true);
        }
    }

    s.sigma.first = 1;
    s.sigma.last = top + 1;
    s.sigma.bits = BitVector(top + 1);
    for (std::size_t j = 1; j <= top + 1; ++j) s.sigma.bits.set(j - 1, row_dot(c, j, offset));

    if (block == 1) {
        s.delta = DyadicRational();
        s.scaled_delta = 0;
        return s;
    }
    // delta_i = sum_{j=1}^{n_1-n_i+1} sigma_{i,n_i+j} 2^{-(n_i+j)}
    BigInt k;
    for (std::size_t j = 1; j <= top - ni + 1; ++j) {
        if (s.sigma(ni + j)) mpz_setbit(k.get_mpz_t(), top + 1 - (ni + j));
    }
    s.delta = DyadicRational(k, top + 1);
    s.scaled_delta = s.delta.value() * Rational(pow2(ni));
    s.scaled_delta.canonicalize();
    return s;
}

Rational signed_integral_fast(const Gf2Matrix& c, const BinaryDecomposition& d) {
    require_lemma_preconditions(c, d);
    const std::size_t top = d.top();
    // sum_i 2^{n_i} delta_i over the common denominator 2^{n_1+1}
    BigInt shifts;
    for (std::size_t i = 2; i <= d.r(); ++i) {
        BigInt k = scaled_shift_numerator(c, d, i, block_offset_digits(d, i));
        mpz_mul_2exp(k.get_mpz_t(), k.get_mpz_t(), d.n(i));
        shifts += k;
    }
    Rational result = Rational(static_cast<unsigned long>(d.r())) / 2;
    Rational shift_sum(shifts, pow2(top + 1));
    shift_sum.canonicalize();
    return result - shift_sum;
}

Rational signed_integral_fast(const Gf2Matrix& c, const BigInt& count) {
    return signed_integral_fast(c, binary_decomposition(count));
}

bool sigma_flip_check(const Gf2Matrix& c, const BinaryDecomposition& d) {
    const SigmaVector last = sigma_r_vector(c, d);
    const std::size_t r = d.r();
    const std::size_t top = d.top();
    for (std::size_t i = 2; i <= r; ++i) {
        const ShiftVector s = delta_shift(c, d, i);
        const std::size_t ni = d.n(i);
        for (std::size_t j = 1; j <= top - ni + 1; ++j) {
            bool expected = last(ni + j);
            if (j == 1 && i < r) expected = !expected;
            if (s.sigma(ni + j) != expected) return false;
        }
    }
    return true;
}

TruncatedIntegral truncated_integral(const Gf2Matrix& c, const BinaryDecomposition& d) {
    const SigmaVector sigma = sigma_r_vector(c, d);
    const std::size_t r = d.r();

    Rational truncated;
    for (std::size_t i = 2; i <= r; ++i) {
        if (sigma(d.n(i) + 1)) truncated += 1;
    }
    for (std::size_t k = 2; k <= r; ++k) {
        BigInt tail;  // sum_{i=k}^r 2^{n_i}
        for (std::size_t i = k; i <= r; ++i) mpz_setbit(tail.get_mpz_t(), d.n(i));
        BigInt weighted;  // sum_j sigma_{r,j} 2^{n_{k-1} - j}
        for (std::size_t j = d.n(k) + 1; j <= d.n(k - 1); ++j) {
            if (sigma(j)) mpz_setbit(weighted.get_mpz_t(), d.n(k - 1) - j);
        }
        Rational term(weighted * tail, pow2(d.n(k - 1)));
        term.canonicalize();
        truncated -= term;
    }

    TruncatedIntegral out;
    out.exact = signed_integral_fast(c, d);
    out.truncated = truncated;
    out.residual = out.exact - out.truncated;
    return out;
}

}  // namespace nutdisc
