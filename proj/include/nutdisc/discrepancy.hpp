#pragma once

// Discrepancy function Delta_P(t) = #{x in P : x < t} - N t and its L_p norms.
//
// With sorted points x_(1) <= ... <= x_(N) and sentinels x_(0) = 0,
// x_(N+1) = 1, Delta is the linear function i - N t on (x_(i), x_(i+1)].
// Every norm below is a sum of closed-form integrals over these pieces.

#include "nutdisc/digital_sequence.hpp"
#include "nutdisc/numbers.hpp"

#include <optional>
#include <string>

namespace nutdisc {

struct NormResult {
    double p = 1.0;                         // +infinity for the sup norm
    std::optional<Rational> exact_power;    // L_p^p, when it is rational
    std::optional<Rational> exact;          // L_p, when it is rational
    double value = 0.0;

    /// Exact "p/q" when available, otherwise a decimal with 17 significant digits.
    std::string to_string() const;
};

/// Delta_P(t), counting points strictly below t. t must lie in [0,1].
Rational delta_at(const PointSet& points, const Rational& t);

/// Sum over the points of (1/2 - x_n), which equals the integral of Delta_P over [0,1].
Rational signed_integral_direct(const PointSet& points);

/// Integral of Delta_P assembled piece by piece from the antiderivative u^2/2.
Rational signed_integral_piecewise(const PointSet& points);

/// L_p discrepancy for finite p >= 1. Integer p is exact; other p use
/// the closed-form antiderivative in double precision.
NormResult lp_norm(const PointSet& points, double p);

/// Essential supremum of |Delta_P| (one-sided limits at the jumps).
Rational linf_norm(const PointSet& points);

}  // namespace nutdisc
