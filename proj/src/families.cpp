#include "nutdisc/families.hpp"

#include "nutdisc/discrepancy.hpp"
#include "nutdisc/error.hpp"
#include "nutdisc/matrix_spec_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nutdisc {

namespace {

double natural_log(const BigInt& n) {
    long exp = 0;
    double mantissa = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exp) * std::log(2.0);
}

Rational abs_value(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

std::optional<std::size_t> as_size(const BigInt& n) {
    if (sgn(n) < 0 || !n.fits_ulong_p()) return std::nullopt;
    return static_cast<std::size_t>(n.get_ui());
}

Rational power(const Rational& q, unsigned long e) {
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
    return Rational(num, den);
}

// Copies of the first `count` points of an already generated prefix.
PointSet leading(const PointSet& all, std::size_t count) {
    return PointSet(std::vector<DyadicRational>(all.points().begin(),
                                                all.points().begin() + static_cast<long>(count)));
}

}  // namespace

std::size_t s2(const BigInt& value) {
    if (value < 1) throw Error(ErrorKind::domain, "s2: N must be >= 1");
    return mpz_popcount(value.get_mpz_t());
}

bool non_growing(const std::vector<Rational>& residuals) {
    if (residuals.empty()) return true;
    const std::size_t half = (residuals.size() + 1) / 2;
    Rational first_max = abs_value(residuals[0]);
    Rational all_max = first_max;
    for (std::size_t k = 0; k < residuals.size(); ++k) {
        Rational a = abs_value(residuals[k]);
        if (k < half && a > first_max) first_max = a;
        if (a > all_max) all_max = a;
    }
    return all_max <= first_max + inv_pow2(10);
}

// -- band matrices -------------------------------------------------------------

Rational band_slope(std::size_t alpha) {
    if (alpha < 1) throw Error(ErrorKind::domain, "band width must be >= 1");
    Rational q(pow2(alpha - 1), pow2(2 * alpha) - 1);
    q.canonicalize();
    return q;
}

Rational band_sigma_slope(std::size_t alpha) {
    if (alpha < 1) throw Error(ErrorKind::domain, "band width must be >= 1");
    Rational q(pow2(alpha - 1), pow2(alpha) + 1);
    q.canonicalize();
    return q;
}

Theorem1Point theorem1_family(std::size_t alpha, std::size_t r) {
    if (alpha < 1 || r < 1) throw Error(ErrorKind::domain, "theorem1_family: alpha, r >= 1");
    Theorem1Point pt;
    for (std::size_t l = 1; l <= r; ++l) mpz_setbit(pt.count.get_mpz_t(), 2 * alpha * (r - l));
    pt.prediction = Rational(static_cast<unsigned long>(r)) * band_slope(alpha);
    return pt;
}

std::size_t theorem1_dimension(std::size_t alpha, std::size_t r_max) {
    return std::max(kDefaultDimension, 2 * alpha * (r_max - 1) + 1);
}

std::vector<BigInt> theorem1_counts(std::size_t alpha, std::size_t r_max) {
    std::vector<BigInt> out;
    for (std::size_t r = 1; r <= r_max; ++r) out.push_back(theorem1_family(alpha, r).count);
    return out;
}

Verification verify_theorem1(std::size_t alpha, std::size_t r_min, std::size_t r_max) {
    if (r_min < 1 || r_min > r_max) throw Error(ErrorKind::domain, "verify_theorem1: bad r range");
    const auto spec = MatrixSpec::band(alpha, theorem1_dimension(alpha, r_max));
    const Gf2Matrix c = build_matrix(spec);

    Verification v;
    v.report = ExperimentReport({"r", "N", "integral", "integral_dec", "prediction", "deviation",
                                 "deviation_dec", "sigma_prediction", "sigma_deviation_dec"});
    v.report.set_meta("driver", "verify thm1");
    v.report.set_meta("matrix", render_matrix_spec(spec));
    v.report.set_meta("alpha", std::to_string(alpha));
    v.report.set_meta("r_range", std::to_string(r_min) + ".." + std::to_string(r_max));

    std::vector<Rational> deviations;
    for (std::size_t r = r_min; r <= r_max; ++r) {
        const auto pt = theorem1_family(alpha, r);
        const Rational integral = signed_integral_fast(c, pt.count);
        const Rational deviation = integral - pt.prediction;
        deviations.push_back(deviation);
        const Rational sigma_prediction = Rational(static_cast<unsigned long>(r)) * band_sigma_slope(alpha);
        v.report.add_row({BigInt(static_cast<unsigned long>(r)), pt.count, integral,
                          to_double(integral), pt.prediction, deviation, to_double(deviation),
                          sigma_prediction, to_double(integral - sigma_prediction)});
    }
    if (!non_growing(deviations)) {
        v.failures.push_back("verify thm1: deviation grows over the second half of r range");
    }
    return v;
}

// -- column-constant matrices ---------------------------------------------------

AStats a_stats(const std::string& bits, std::size_t m) {
    if (bits.empty() || bits.find_first_not_of("01") != std::string::npos) {
        throw Error(ErrorKind::domain, "a_stats: bit string must be a non-empty 0/1 string");
    }
    if (m < 1) throw Error(ErrorKind::domain, "a_stats: m must be >= 1");
    AStats s;
    s.m = m;
    std::optional<std::size_t> last[2];
    for (std::size_t i = 1; i <= m; ++i) {
        const int a = bits[(i - 1) % bits.size()] == '1' ? 1 : 0;
        (a ? s.l1 : s.l0) += 1;
        auto& gap = a ? s.d1 : s.d0;
        if (last[a]) {
            std::size_t d = i - *last[a];
            if (!gap || d < *gap) gap = d;
        }
        last[a] = i;
    }
    return s;
}

BigInt theorem2_count(const std::string& bits, std::size_t m) {
    if (m < 2) throw Error(ErrorKind::domain, "theorem2_count: m must be >= 2");
    if (bits.empty() || bits.find_first_not_of("01") != std::string::npos) {
        throw Error(ErrorKind::domain, "theorem2_count: bit string must be a non-empty 0/1 string");
    }
    BigInt n = 1;
    for (std::size_t i = 1; i < m; ++i) {
        if (bits[(i - 1) % bits.size()] == '0') mpz_setbit(n.get_mpz_t(), i);
    }
    mpz_setbit(n.get_mpz_t(), m);
    return n;
}

Theorem2Sigma theorem2_sigma_pattern(const MatrixSpec& spec, const BigInt& count) {
    using Kind = MatrixSpec::Kind;
    if (spec.kind != Kind::column && spec.kind != Kind::upper1 && spec.kind != Kind::identity) {
        throw Error(ErrorKind::unsupported,
                    "theorem2_sigma_pattern needs a column-constant matrix (column, upper1, identity)");
    }
    Theorem2Sigma out;
    out.decomposition = binary_decomposition(count);
    const auto& d = out.decomposition;
    const std::size_t top = d.top();
    const Gf2Matrix c = build_matrix(spec.at_least(top + 1));
    auto digit = [&](std::size_t i) { return mpz_tstbit(count.get_mpz_t(), i) != 0; };

    out.eta.assign(top, false);
    for (std::size_t j = 1; j <= top; ++j) {
        bool eta = false;
        for (std::size_t i = j; i <= top; ++i) {
            if (digit(i) && c.at(j, i + 1)) eta = !eta;
        }
        out.eta[j - 1] = eta;
    }

    const std::size_t lowest = d.n(d.r());
    out.predicted.first = lowest + 1;
    out.predicted.last = top + 1;
    out.predicted.bits = BitVector(top + 1);
    for (std::size_t j = lowest + 1; j <= top + 1; ++j) {
        bool sigma;
        if (j == top + 1) {
            sigma = true;
        } else if (digit(j - 1) && j - 1 != lowest) {
            sigma = !out.eta[j - 1];  // j = n_k + 1 with 1 < k < r
        } else {
            sigma = out.eta[j - 1];
        }
        out.predicted.bits.set(j - 1, sigma);
    }

    out.eta_constant = true;
    if (top >= 1) {
        const bool a_top = c.at(1, top + 1);  // a_{n_1} sits above the diagonal of column n_1 + 1
        for (bool e : out.eta) out.eta_constant = out.eta_constant && e == a_top;
    }
    return out;
}

Verification verify_theorem2(const std::string& bits, std::size_t m_min, std::size_t m_max,
                             double p, std::size_t budget) {
    if (m_min < 2 || m_min > m_max) throw Error(ErrorKind::domain, "verify_theorem2: bad m range");
    if (!(p >= 1.0)) throw Error(ErrorKind::domain, "verify_theorem2: p must be >= 1");
    const auto spec = MatrixSpec::column(bits, std::max(kDefaultDimension, m_max + 1));
    const Gf2Matrix c = build_matrix(spec);

    Verification v;
    v.report = ExperimentReport({"m", "N", "l0", "status", "integral", "integral_dec",
                                 "expected_sign", "sign_ok", "residual", "residual_dec",
                                 "direct_match", "lp_dec", "lp_ge_abs_integral"});
    v.report.set_meta("driver", "verify thm2");
    v.report.set_meta("matrix", render_matrix_spec(spec));
    v.report.set_meta("m_range", std::to_string(m_min) + ".." + std::to_string(m_max));

    std::vector<Rational> residuals;
    for (std::size_t m = m_min; m <= m_max; ++m) {
        const AStats stats = a_stats(bits, m);
        const BigInt n = theorem2_count(bits, m);
        const Rational integral = signed_integral_fast(c, n);
        const bool a_top = bits[(m - 1) % bits.size()] == '1';
        const int expected_sign = a_top ? -1 : 1;
        const Rational residual =
            abs_value(integral) - (Rational(static_cast<unsigned long>(stats.l0)) / 3);
        const bool valid = stats.gap_at_least_two(0);

        Cell direct_match = Blank{};
        Cell lp_cell = Blank{};
        Cell lp_ok = Blank{};
        if (auto count = as_size(n); valid && count && *count <= budget) {
            const PointSet pts = prefix(c, *count, budget);
            const bool match = signed_integral_direct(pts) == integral;
            direct_match = match;
            if (!match) v.failures.push_back("m=" + std::to_string(m) + ": fast != direct");
            const NormResult lp = lp_norm(pts, p);
            lp_cell = lp.value;
            bool ok;
            if (lp.exact_power) {
                ok = *lp.exact_power >= power(abs_value(integral), static_cast<unsigned long>(p));
            } else {
                ok = lp.value >= to_double(abs_value(integral)) * (1 - 1e-12);
            }
            lp_ok = ok;
            if (!ok) v.failures.push_back("m=" + std::to_string(m) + ": L_p < |integral|");
        }

        const bool sign_ok = sgn(integral) == expected_sign;
        if (valid) residuals.push_back(residual);
        v.report.add_row({BigInt(static_cast<unsigned long>(m)), n,
                          BigInt(static_cast<unsigned long>(stats.l0)),
                          std::string(valid ? "ok" : "precondition_violation"), integral,
                          to_double(integral), BigInt(expected_sign), sign_ok, residual,
                          to_double(residual), direct_match, lp_cell, lp_ok});
    }
    if (!non_growing(residuals)) {
        v.failures.push_back("verify thm2: |integral| - l0/3 grows over the second half of m range");
    }
    return v;
}

// -- S(N) ------------------------------------------------------------------------

Rational s_statistic(const BigInt& value) {
    const auto d = binary_decomposition(value);
    const std::size_t r = d.r();
    Rational inner_total;
    for (std::size_t k = 2; k <= r; ++k) {
        BigInt tail;
        for (std::size_t i = k + 1; i <= r; ++i) mpz_setbit(tail.get_mpz_t(), d.n(i));
        Rational term(tail, pow2(d.n(k)));
        term.canonicalize();
        inner_total += term;
    }
    return Rational(static_cast<unsigned long>(r)) / 2 - inner_total / 2;
}

Rational nearest_integer_distance(const Rational& x) {
    BigInt floor_x;
    mpz_fdiv_q(floor_x.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Rational frac = x - Rational(floor_x);
    Rational other = 1 - frac;
    return frac < other ? frac : other;
}

Rational s_identity_gap(const BigInt& value) {
    if (value < 2) throw Error(ErrorKind::domain, "s_identity_gap: N must be >= 2");
    const std::size_t top = bit_length(value) - 1;
    Rational total;
    for (std::size_t l = 0; l < top; ++l) {
        Rational q(value, pow2(l + 1));
        q.canonicalize();
        total += nearest_integer_distance(q);
    }
    return s_statistic(value) - total / 2;
}

BigInt flip_complement(const BigInt& value) {
    if (value < 1) throw Error(ErrorKind::domain, "flip_complement: N must be >= 1");
    const std::size_t top = bit_length(value) - 1;
    BigInt out = pow2(top);
    for (std::size_t i = 0; i < top; ++i) {
        if (!mpz_tstbit(value.get_mpz_t(), i)) mpz_setbit(out.get_mpz_t(), i);
    }
    return out;
}

// -- scans -----------------------------------------------------------------------

RangeMax scan_range_max(const Gf2Matrix& c, std::size_t m) {
    if (m + 1 > c.dimension()) throw Error(ErrorKind::dimension, "scan_range_max: m + 1 > M");
    RangeMax best;
    const BigInt lo = pow2(m);
    const BigInt hi = pow2(m + 1);
    bool first = true;
    for (BigInt n = lo; n < hi; ++n) {
        Rational value = abs_value(signed_integral_fast(c, n));
        if (first || value > best.value) {
            best.count = n;
            best.value = value;
            first = false;
        }
    }
    return best;
}

Verification bound_check(const Gf2Matrix& c, std::size_t n_min, std::size_t n_max, double p,
                         std::size_t budget) {
    if (n_min < 1 || n_min > n_max) throw Error(ErrorKind::domain, "bound_check: bad N range");
    if (!(p >= 1.0)) throw Error(ErrorKind::domain, "bound_check: p must be >= 1");
    const bool sup_norm = std::isinf(p);
    const PointSet all = prefix(c, n_max, budget);

    Verification v;
    v.report = ExperimentReport({"N", "lp", "lp_dec", "linf", "linf_dec", "s2", "log_bound",
                                 "chain_ok", "log_ok", "lp_bound_ok"});
    v.report.set_meta("driver", "scan bounds");

    for (std::size_t count = n_min; count <= n_max; ++count) {
        const PointSet pts = leading(all, count);
        const Rational linf = linf_norm(pts);
        const auto digits = static_cast<unsigned long>(s2(BigInt(static_cast<unsigned long>(count))));
        const Rational s2q(digits);
        const double log_bound = std::log(static_cast<double>(count)) / (3 * std::log(2.0)) + 1;

        NormResult lp;
        if (sup_norm) {
            lp.p = p;
            lp.exact = linf;
            lp.value = to_double(linf);
        } else {
            lp = lp_norm(pts, p);
        }

        bool chain_ok = linf <= s2q;
        bool lp_bound_ok;
        if (sup_norm) {
            lp_bound_ok = linf <= s2q;
        } else if (lp.exact_power) {
            const auto ip = static_cast<unsigned long>(p);
            chain_ok = chain_ok && *lp.exact_power <= power(linf, ip);
            if (p <= 2) {
                // L_p <= s2 / sqrt(3)  <=>  L_p^{2p} <= s2^{2p} / 3^p
                Rational lhs = power(*lp.exact_power, 2);
                Rational rhs = power(s2q, 2 * ip) / power(Rational(3), ip);
                lp_bound_ok = lhs <= rhs;
            } else {
                lp_bound_ok = *lp.exact_power <= power(s2q, ip);
            }
        } else {
            const double slack = 1 + 1e-12;
            chain_ok = chain_ok && lp.value <= to_double(linf) * slack;
            const double cp = p <= 2 ? 1 / std::sqrt(3.0) : 1.0;
            lp_bound_ok = lp.value <= cp * static_cast<double>(digits) * slack;
        }
        const bool log_ok = to_double(linf) <= log_bound * (1 + 1e-12);

        if (!chain_ok) v.failures.push_back("N=" + std::to_string(count) + ": L_p <= L_inf <= s2 violated");
        if (!log_ok) v.failures.push_back("N=" + std::to_string(count) + ": L_inf above log bound");
        if (!lp_bound_ok) v.failures.push_back("N=" + std::to_string(count) + ": L_p above c_p s2(N)");

        Cell lp_exact = lp.exact ? Cell(*lp.exact) : Cell(Blank{});
        v.report.add_row({BigInt(static_cast<unsigned long>(count)), lp_exact, lp.value, linf,
                          to_double(linf), BigInt(digits), log_bound, chain_ok, log_ok, lp_bound_ok});
    }
    return v;
}

ExperimentReport ratio_scan(const Gf2Matrix& c, const std::vector<BigInt>& counts,
                            std::optional<double> p, std::size_t budget) {
    ExperimentReport report({"N", "integral_abs", "integral_abs_dec", "ratio", "lp_dec", "lp_ratio"});
    report.set_meta("driver", "scan ratio");
    for (const auto& n : counts) {
        const Rational value = abs_value(signed_integral_fast(c, n));
        const double log_n = natural_log(n);
        const double ratio = log_n > 0 ? to_double(value) / log_n
                                       : std::numeric_limits<double>::quiet_NaN();
        Cell lp_cell = Blank{}, lp_ratio = Blank{};
        if (auto count = as_size(n); p && count && *count <= budget) {
            const NormResult lp = lp_norm(prefix(c, *count, budget), *p);
            lp_cell = lp.value;
            if (log_n > 0) lp_ratio = lp.value / log_n;
        }
        report.add_row({n, value, to_double(value), ratio, lp_cell, lp_ratio});
    }
    return report;
}

ExperimentReport figure1_data(std::size_t n_max, std::size_t budget) {
    ExperimentReport report({"N", "linf", "s2"});
    report.set_meta("driver", "scan figure1");
    report.set_meta("matrix", "identity");
    if (n_max == 0) return report;
    const PointSet all = prefix(Gf2Matrix::identity(kDefaultDimension), n_max, budget);
    for (std::size_t count = 1; count <= n_max; ++count) {
        const BigInt n = static_cast<unsigned long>(count);
        report.add_row({n, linf_norm(leading(all, count)),
                        BigInt(static_cast<unsigned long>(s2(n)))});
    }
    return report;
}

Verification verify_lemma1(const Gf2Matrix& c, std::size_t n_max, std::size_t budget) {
    const PointSet all = prefix(c, n_max, budget);
    Verification v;
    v.report = ExperimentReport(
        {"N", "r", "fast", "direct", "match", "flip_ok", "truncated", "residual"});
    v.report.set_meta("driver", "verify lemma1");

    // running sum of (1/2 - x_n) over the common denominator 2^E
    const std::size_t e = all.max_exponent();
    BigInt running;
    for (std::size_t count = 1; count <= n_max; ++count) {
        running += all[count - 1].scaled_numerator(e);
        const Rational direct =
            Rational(static_cast<unsigned long>(count)) / 2 - Rational(running) / Rational(pow2(e));

        const auto d = binary_decomposition(BigInt(static_cast<unsigned long>(count)));
        const auto terms = truncated_integral(c, d);
        const bool match = terms.exact == direct;
        const bool flip_ok = sigma_flip_check(c, d);
        if (!match) v.failures.push_back("N=" + std::to_string(count) + ": fast != direct");
        if (!flip_ok) v.failures.push_back("N=" + std::to_string(count) + ": sigma recursion fails");
        v.report.add_row({d.value, BigInt(static_cast<unsigned long>(d.r())), terms.exact, direct,
                          match, flip_ok, terms.truncated, terms.residual});
    }
    return v;
}

}  // namespace nutdisc
