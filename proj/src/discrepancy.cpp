#include "nutdisc/discrepancy.hpp"

#include "nutdisc/error.hpp"

#include <mpfr.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace nutdisc {

namespace {

// The breakpoints of Delta on the common grid 2^-E: piece i runs from
// knots[i] to knots[i+1], with knots[0] = 0 and knots[N+1] = 2^E.
struct Grid {
    std::size_t exponent = 0;
    BigInt scale;               // 2^E
    std::vector<BigInt> knots;  // N + 2 entries
};

Grid make_grid(const PointSet& points) {
    Grid g;
    g.exponent = points.max_exponent();
    g.scale = pow2(g.exponent);
    const auto& sorted = points.sorted();
    g.knots.reserve(sorted.size() + 2);
    g.knots.emplace_back(0);
    for (const auto& x : sorted) g.knots.push_back(x.scaled_numerator(g.exponent));
    g.knots.push_back(g.scale);
    return g;
}

void require_nonempty(const PointSet& points, const char* what) {
    if (points.empty()) throw Error(ErrorKind::domain, std::string(what) + ": empty point set");
}

bool is_integer_exponent(double p) {
    return std::floor(p) == p && p <= 64.0;
}

BigInt from_int128(__int128 v) {
    const bool negative = v < 0;
    unsigned __int128 m = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt out = static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64));
    out <<= 64;
    out += static_cast<unsigned long>(static_cast<std::uint64_t>(m));
    return negative ? BigInt(-out) : out;
}

// sum_i sign(u)|u|^q over the piece endpoints in 128-bit integers; nullopt
// when an intermediate could overflow.
std::optional<BigInt> power_sum_small(const PointSet& points, unsigned long q) {
    const std::size_t count = points.size();
    const std::size_t e = points.max_exponent();
    if (e + std::bit_width(count) > 62) return std::nullopt;
    const std::int64_t scale = std::int64_t{1} << e;
    const auto n = static_cast<std::int64_t>(count);
    const auto& sorted = points.sorted();
    std::vector<std::int64_t> k;
    k.reserve(count + 2);
    k.push_back(0);
    for (const auto& x : sorted) k.push_back(x.numerator().get_si() << (e - x.exponent()));
    k.push_back(scale);

    std::uint64_t max_abs = 0;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        const std::int64_t base = static_cast<std::int64_t>(i) * scale;
        max_abs = std::max({max_abs, static_cast<std::uint64_t>(std::llabs(base - n * k[i])),
                            static_cast<std::uint64_t>(std::llabs(base - n * k[i + 1]))});
    }
    if (q * std::bit_width(max_abs) + std::bit_width(k.size()) + 1 > 126) return std::nullopt;

    auto spow = [q](std::int64_t u) {
        __int128 v = 1;
        for (unsigned long j = 0; j < q; ++j) v *= u < 0 ? -u : u;
        return u < 0 ? -v : v;
    };
    __int128 total = 0;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        if (k[i] == k[i + 1]) continue;
        const std::int64_t base = static_cast<std::int64_t>(i) * scale;
        total += spow(base - n * k[i]) - spow(base - n * k[i + 1]);
    }
    return from_int128(total);
}

// sign(u) |u|^q
void signed_power(BigInt& out, const BigInt& u, unsigned long q) {
    mpz_pow_ui(out.get_mpz_t(), u.get_mpz_t(), q);
    if (q % 2 == 0 && sgn(u) < 0) mpz_neg(out.get_mpz_t(), out.get_mpz_t());
}

// Rational r with r^p = power, if one exists.
std::optional<Rational> exact_root(const Rational& power, unsigned long p) {
    if (p == 1) return power;
    BigInt num, den;
    if (mpz_root(num.get_mpz_t(), power.get_num_mpz_t(), p) == 0) return std::nullopt;
    if (mpz_root(den.get_mpz_t(), power.get_den_mpz_t(), p) == 0) return std::nullopt;
    Rational r(num, den);
    r.canonicalize();
    return r;
}

double root_to_double(const Rational& power, unsigned long p) {
    mpfr_t x;
    mpfr_init2(x, 128);
    mpfr_set_q(x, power.get_mpq_t(), MPFR_RNDN);
    mpfr_rootn_ui(x, x, p, MPFR_RNDN);
    double d = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return d;
}

double scaled_to_double(const BigInt& n, std::size_t exponent) {
    return std::ldexp(mpz_get_d(n.get_mpz_t()), -static_cast<int>(exponent));
}

// (hi^q - lo^q) / q for 0 <= lo <= hi, with gap = hi - lo supplied exactly.
double power_difference(double hi, double lo, double gap, double q) {
    if (gap == 0.0) return 0.0;
    if (lo == 0.0) return std::pow(hi, q) / q;
    return std::pow(lo, q) * std::expm1(q * std::log1p(gap / lo)) / q;
}

}  // namespace

std::string NormResult::to_string() const {
    if (exact) return to_exact_string(*exact);
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

Rational delta_at(const PointSet& points, const Rational& t) {
    if (sgn(t) < 0 || t > 1) throw Error(ErrorKind::domain, "delta_at: t must lie in [0,1]");
    const auto& sorted = points.sorted();
    auto below = std::partition_point(sorted.begin(), sorted.end(),
                                      [&](const DyadicRational& x) { return x.value() < t; });
    Rational count(static_cast<unsigned long>(below - sorted.begin()));
    return count - Rational(static_cast<unsigned long>(points.size())) * t;
}

Rational signed_integral_direct(const PointSet& points) {
    const std::size_t e = points.max_exponent();
    BigInt sum;
    for (const auto& x : points.points()) sum += x.scaled_numerator(e);
    Rational mean_part(sum, pow2(e));
    mean_part.canonicalize();
    return Rational(static_cast<unsigned long>(points.size())) / 2 - mean_part;
}

Rational signed_integral_piecewise(const PointSet& points) {
    require_nonempty(points, "signed_integral_piecewise");
    Grid g = make_grid(points);
    const BigInt n = static_cast<unsigned long>(points.size());
    // sum_i (G(u_left) - G(u_right)) / N with G(u) = u^2 / 2, u = i - N t
    BigInt total, left, right, sq;
    for (std::size_t i = 0; i + 1 < g.knots.size(); ++i) {
        BigInt base = BigInt(static_cast<unsigned long>(i)) * g.scale;
        left = base - n * g.knots[i];
        right = base - n * g.knots[i + 1];
        total += left * left - right * right;
    }
    Rational out(total, 2 * n * g.scale * g.scale);
    out.canonicalize();
    return out;
}

NormResult lp_norm(const PointSet& points, double p) {
    if (!(p >= 1.0) || std::isinf(p)) {
        throw Error(ErrorKind::domain, "lp_norm: p must be a finite real >= 1");
    }
    require_nonempty(points, "lp_norm");
    const std::size_t count = points.size();
    const BigInt n = static_cast<unsigned long>(count);

    NormResult result;
    result.p = p;

    if (is_integer_exponent(p)) {
        const auto ip = static_cast<unsigned long>(p);
        // L_p^p = sum_i (F(u_left) - F(u_right)) / N, F(u) = sign(u)|u|^{p+1} / (p+1),
        // evaluated on the integer grid u * 2^E.
        BigInt total;
        const std::size_t exponent = points.max_exponent();
        const BigInt scale = pow2(exponent);
        if (auto small = power_sum_small(points, ip + 1)) {
            total = *small;
        } else {
            const Grid g = make_grid(points);
            BigInt base, left, right, pl, pr;
            for (std::size_t i = 0; i + 1 < g.knots.size(); ++i) {
                if (g.knots[i] == g.knots[i + 1]) continue;
                mpz_mul_ui(base.get_mpz_t(), g.scale.get_mpz_t(), static_cast<unsigned long>(i));
                left = base - n * g.knots[i];
                right = base - n * g.knots[i + 1];
                signed_power(pl, left, ip + 1);
                signed_power(pr, right, ip + 1);
                total += pl;
                total -= pr;
            }
        }
        BigInt denom;
        mpz_pow_ui(denom.get_mpz_t(), scale.get_mpz_t(), ip + 1);
        denom *= n * (ip + 1);
        Rational power(total, denom);
        power.canonicalize();
        result.exact_power = power;
        result.exact = exact_root(power, ip);
        result.value = root_to_double(power, ip);
        return result;
    }

    const Grid g = make_grid(points);
    const double q = p + 1.0;
    double sum = 0.0, compensation = 0.0;
    BigInt base, left, right, gap;
    for (std::size_t i = 0; i + 1 < g.knots.size(); ++i) {
        if (g.knots[i] == g.knots[i + 1]) continue;
        mpz_mul_ui(base.get_mpz_t(), g.scale.get_mpz_t(), static_cast<unsigned long>(i));
        left = base - n * g.knots[i];
        right = base - n * g.knots[i + 1];
        gap = left - right;  // > 0
        double a = scaled_to_double(left, g.exponent);
        double b = scaled_to_double(right, g.exponent);
        double width = scaled_to_double(gap, g.exponent);
        double piece;
        if (b >= 0.0) {
            piece = power_difference(a, b, width, q);
        } else if (a <= 0.0) {
            piece = power_difference(-b, -a, width, q);
        } else {
            piece = (std::pow(a, q) + std::pow(-b, q)) / q;
        }
        piece /= static_cast<double>(count);
        // Neumaier summation
        double t = sum + piece;
        compensation += std::abs(sum) >= std::abs(piece) ? (sum - t) + piece : (piece - t) + sum;
        sum = t;
    }
    double power = sum + compensation;
    result.value = std::pow(power, 1.0 / p);
    return result;
}

Rational linf_norm(const PointSet& points) {
    require_nonempty(points, "linf_norm");
    Grid g = make_grid(points);
    const BigInt n = static_cast<unsigned long>(points.size());
    BigInt best, base, u;
    for (std::size_t i = 0; i + 1 < g.knots.size(); ++i) {
        if (g.knots[i] == g.knots[i + 1]) continue;  // measure zero
        mpz_mul_ui(base.get_mpz_t(), g.scale.get_mpz_t(), static_cast<unsigned long>(i));
        for (std::size_t k : {i, i + 1}) {
            u = base - n * g.knots[k];
            mpz_abs(u.get_mpz_t(), u.get_mpz_t());
            if (u > best) best = u;
        }
    }
    Rational out(best, g.scale);
    out.canonicalize();
    return out;
}

}  // namespace nutdisc
