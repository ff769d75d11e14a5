#pragma once

// N families, digit statistics and verification drivers for the lower
// bounds on band matrices C(alpha) and column-constant matrices C(a), the
// upper bounds in terms of s_2(N), and the S(N) statistic.

#include "nutdisc/digital_sequence.hpp"
#include "nutdisc/gf2.hpp"
#include "nutdisc/numbers.hpp"
#include "nutdisc/report.hpp"
#include "nutdisc/shift.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nutdisc {

/// Binary sum of digits (popcount). Throws Error(domain) for N < 1.
std::size_t s2(const BigInt& value);

// -- band matrices -------------------------------------------------------------

/// 2^{alpha-1} / (2^{2 alpha} - 1): growth of the integral per unit r.
Rational band_slope(std::size_t alpha);

/// 2^{alpha-1} / (2^alpha + 1): the slope obtained by summing the band
/// sigma pattern term by term. Equals band_slope only for alpha = 1.
Rational band_sigma_slope(std::size_t alpha);

struct Theorem1Point {
    BigInt count;          // (2^{2 alpha r} - 1) / (2^{2 alpha} - 1)
    Rational prediction;   // r * band_slope(alpha)
};

Theorem1Point theorem1_family(std::size_t alpha, std::size_t r);

/// Matrix dimension needed for the family up to r_max.
std::size_t theorem1_dimension(std::size_t alpha, std::size_t r_max);

/// Rows r, N, exact integral (fast path), prediction r * band_slope and its
/// deviation, plus r * band_sigma_slope for comparison. Fails when the
/// band_slope deviation grows over the second half of the range.
Verification verify_theorem1(std::size_t alpha, std::size_t r_min, std::size_t r_max);

// -- column-constant matrices ---------------------------------------------------

struct AStats {
    std::size_t m = 0;
    std::size_t l0 = 0, l1 = 0;
    std::optional<std::size_t> d0, d1;  // nullopt: fewer than two occurrences

    /// "d_l(m) >= 2", vacuously true without two occurrences.
    bool gap_at_least_two(int symbol) const noexcept {
        const auto& d = symbol == 0 ? d0 : d1;
        return !d || *d >= 2;
    }
};

/// Counts and minimal gaps of 0s and 1s among a_1..a_m (bits extended periodically).
AStats a_stats(const std::string& bits, std::size_t m);

/// N_a = 1 + sum_{i=1}^{m-1} 2^i (1 - a_i) + 2^m. Throws Error(domain) for m < 2.
BigInt theorem2_count(const std::string& bits, std::size_t m);

struct Theorem2Sigma {
    BinaryDecomposition decomposition;
    std::vector<bool> eta;   // eta[j-1] = eta_j, j = 1..n_1
    SigmaVector predicted;   // case formula, j = n_r+1 .. n_1+1
    bool eta_constant = false;  // eta_j equal to a_{n_1} for every j
};

/// eta_j = c_{j,j+1} N_j + ... + c_{j,n_1} N_{n_1-1} + c_{j,n_1+1} and the
/// predicted sigma_{r,j}: 1 at j = n_1+1, eta_j + 1 at j = n_k+1 (1 < k < r),
/// eta_j elsewhere. Requires a column-constant spec (column, upper1 or
/// identity); throws Error(unsupported) otherwise.
Theorem2Sigma theorem2_sigma_pattern(const MatrixSpec& spec, const BigInt& count);

/// Per m: N_a, l_0(m), exact integral, sign against (-1)^{a_m} (reported,
/// not asserted), residual |integral| - l_0(m)/3 and, within the point
/// budget, a direct-oracle match and the check L_p >= |integral|. Rows violating d_0(m) >= 2 are
/// reported with status "precondition_violation".
Verification verify_theorem2(const std::string& bits, std::size_t m_min, std::size_t m_max,
                             double p, std::size_t budget = kDefaultPointBudget);

// -- S(N) ------------------------------------------------------------------------

/// S(N) = r/2 - (1/2) sum_{k=2}^r 2^{-n_k} sum_{i=k+1}^r 2^{n_i}.
Rational s_statistic(const BigInt& value);

/// S(N) - (1/2) sum_{l=0}^{n_1-1} ||N / 2^{l+1}||. Requires N >= 2.
Rational s_identity_gap(const BigInt& value);

/// 2^{n_1} + sum_{i<n_1} (1 - N_i) 2^i.
BigInt flip_complement(const BigInt& value);

/// Distance to the nearest integer.
Rational nearest_integer_distance(const Rational& x);

// -- scans -----------------------------------------------------------------------

struct RangeMax {
    BigInt count;
    Rational value;
};

/// argmax of |integral| over N in [2^m, 2^{m+1}), ties to the smallest N.
RangeMax scan_range_max(const Gf2Matrix& c, std::size_t m);

/// Per N in [n_min, n_max]: L_p, L_inf and s_2(N), checking
/// L_p <= L_inf <= s_2(N), L_inf <= log N / (3 log 2) + 1 and
/// L_p <= c_p s_2(N) with c_p = 1/sqrt(3) on [1,2] and 1 above.
/// p = +infinity reports L_inf in the lp column.
Verification bound_check(const Gf2Matrix& c, std::size_t n_min, std::size_t n_max, double p,
                         std::size_t budget = kDefaultPointBudget);

/// Rows (N, |integral|, |integral| / log N); with p set and N within the
/// point budget also L_p and L_p / log N.
ExperimentReport ratio_scan(const Gf2Matrix& c, const std::vector<BigInt>& counts,
                            std::optional<double> p = std::nullopt,
                            std::size_t budget = kDefaultPointBudget);

/// N values of theorem1_family(alpha, r) for r = 1..r_max.
std::vector<BigInt> theorem1_counts(std::size_t alpha, std::size_t r_max);

/// Rows (N, L_inf of the van der Corput prefix, s_2(N)) for N = 1..n_max.
ExperimentReport figure1_data(std::size_t n_max, std::size_t budget = kDefaultPointBudget);

/// Per N = 1..n_max: fast and direct integrals, their agreement, the
/// sigma flip recursion and the residual of the truncated sigma_r form.
Verification verify_lemma1(const Gf2Matrix& c, std::size_t n_max,
                           std::size_t budget = kDefaultPointBudget);

/// Design surrogate for an O(1) residual: max |residual| over the whole
/// range may exceed the max over its first half by at most 2^-10.
bool non_growing(const std::vector<Rational>& residuals);

}  // namespace nutdisc
