#pragma once

// Digital-shift structure of the first N points of a NUT sequence.
//
// Write N = 2^{n_1} + ... + 2^{n_r} with n_1 > ... > n_r. The indices of
// block i, [2^{n_1} + ... + 2^{n_{i-1}}, ... + 2^{n_i}), map to the
// lattice {k / 2^{n_i} + delta_i : 0 <= k < 2^{n_i}}, where delta_i is read
// off the shift vector sigma_i = C * digits(2^{n_1} + ... + 2^{n_{i-1}}).
// Summing (1/2 - x) over each lattice gives
//
//     integral of Delta over [0,1] = r/2 - sum_i 2^{n_i} delta_i
//
// without enumerating a single point.

#include "nutdisc/digital_sequence.hpp"
#include "nutdisc/gf2.hpp"
#include "nutdisc/numbers.hpp"

#include <cstddef>
#include <vector>

namespace nutdisc {

struct BinaryDecomposition {
    BigInt value;
    std::vector<std::size_t> exponents;  // strictly decreasing

    std::size_t r() const noexcept { return exponents.size(); }
    std::size_t top() const noexcept { return exponents.front(); }
    /// 1-based n_i
    std::size_t n(std::size_t i) const noexcept { return exponents[i - 1]; }
};

/// Throws Error(domain) for N < 1.
BinaryDecomposition binary_decomposition(const BigInt& value);

/// sigma_{.,j} for j in [first, last], 1-based; entries outside are zero.
struct SigmaVector {
    std::size_t first = 1;
    std::size_t last = 0;
    BitVector bits;  // bit j-1 holds sigma_j

    bool operator()(std::size_t j) const noexcept {
        return j >= 1 && j - 1 < bits.size() && bits.get(j - 1);
    }
};

/// sigma_{r,j}, j = n_r+1 .. n_1+1: the block of C on rows and columns
/// n_r+1 .. n_1+1 applied to the indicator of columns n_l + 1, l < r.
SigmaVector sigma_r_vector(const Gf2Matrix& c, const BinaryDecomposition& d);

struct ShiftVector {
    std::size_t block = 1;     // i
    BigInt carry;              // l_i: the indices of block i are 2^{n_{i-1}} l_i + a
    SigmaVector sigma;         // sigma_{i,j}, j = 1 .. n_1+1
    DyadicRational delta;      // delta_i
    Rational scaled_delta;     // 2^{n_i} delta_i
};

/// Shift of block i (1-based). Throws Error(domain) for i outside 1..r,
/// Error(dimension) when n_1 + 1 > M, Error(unsupported) for non-NUT C.
ShiftVector delta_shift(const Gf2Matrix& c, const BinaryDecomposition& d, std::size_t block);

/// Exact integral of Delta over [0,1] for the first N points, O(r n_1) bit operations.
Rational signed_integral_fast(const Gf2Matrix& c, const BigInt& count);
Rational signed_integral_fast(const Gf2Matrix& c, const BinaryDecomposition& d);

/// Checks the recursion between the block shifts and sigma_r:
/// sigma_{i,n_i+j} = sigma_{r,n_i+j} for j >= 2, and for j = 1 the bit is
/// flipped when i < r (equal when i = r).
bool sigma_flip_check(const Gf2Matrix& c, const BinaryDecomposition& d);

/// The integral in the truncated sigma_r form
///   sum_{i=2}^r sigma_{r,n_i+1} - sum_{k=2}^r sum_{j=n_k+1}^{n_{k-1}} sigma_{r,j} 2^-j sum_{i>=k} 2^{n_i}
/// next to the exact value; residual = exact - truncated.
struct TruncatedIntegral {
    Rational exact;
    Rational truncated;
    Rational residual;
};

TruncatedIntegral truncated_integral(const Gf2Matrix& c, const BinaryDecomposition& d);

}  // namespace nutdisc
