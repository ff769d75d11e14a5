#include "nutdisc/numbers.hpp"

#include "nutdisc/error.hpp"

#include <mpfr.h>

#include <vector>

namespace nutdisc {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::dimension: return "dimension";
        case ErrorKind::domain: return "domain";
        case ErrorKind::singular: return "singular";
        case ErrorKind::out_of_range: return "out_of_range";
        case ErrorKind::resource: return "resource";
        case ErrorKind::unsupported: return "unsupported";
        case ErrorKind::parse: return "parse";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

std::size_t bit_length(const BigInt& n) {
    if (sgn(n) == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

BigInt pow2(std::size_t k) {
    BigInt r;
    mpz_setbit(r.get_mpz_t(), k);
    return r;
}

Rational inv_pow2(std::size_t k) {
    Rational r(BigInt(1), pow2(k));
    return r;
}

std::string to_exact_string(const Rational& q) {
    return q.get_str(10);
}

std::string to_decimal_string(const Rational& q, int digits) {
    // round(|q| * 10^digits) computed exactly, then placed around the point
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rational scaled = abs(q) * scale;
    BigInt twice_num = 2 * scaled.get_num() + scaled.get_den();
    BigInt rounded;
    mpz_fdiv_q(rounded.get_mpz_t(), twice_num.get_mpz_t(), BigInt(2 * scaled.get_den()).get_mpz_t());

    std::string body = rounded.get_str(10);
    if (digits > 0) {
        if (body.size() <= static_cast<std::size_t>(digits)) {
            body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
        }
        body.insert(body.size() - static_cast<std::size_t>(digits), ".");
    }
    if (sgn(q) < 0 && sgn(rounded) != 0) body.insert(0, "-");
    return body;
}

double to_double(const Rational& q) {
    // mpq get_d truncates; go through MPFR for round-to-nearest
    mpfr_t x;
    mpfr_init2(x, 53);
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
    double d = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return d;
}

BigInt parse_bigint(const std::string& text) {
    if (text.empty()) throw Error(ErrorKind::parse, "empty integer");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) throw Error(ErrorKind::parse, "malformed integer '" + text + "'");
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw Error(ErrorKind::parse,
                        "malformed integer '" + text + "' at position " + std::to_string(i));
        }
    }
    BigInt n;
    n.set_str(text[0] == '+' ? text.substr(1) : text, 10);
    return n;
}

Rational parse_rational(const std::string& text) {
    if (auto slash = text.find('/'); slash != std::string::npos) {
        BigInt num = parse_bigint(text.substr(0, slash));
        BigInt den = parse_bigint(text.substr(slash + 1));
        if (sgn(den) == 0) throw Error(ErrorKind::parse, "zero denominator in '" + text + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_bigint(text));
    std::string int_part = text.substr(0, dot);
    std::string frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part[0] == '-';
    if (int_part.empty() || int_part == "-" || int_part == "+") int_part += "0";
    if (frac_part.empty()) throw Error(ErrorKind::parse, "malformed number '" + text + "'");
    BigInt whole = parse_bigint(int_part);
    BigInt frac = parse_bigint(frac_part);
    if (frac_part[0] == '-' || frac_part[0] == '+') {
        throw Error(ErrorKind::parse, "malformed number '" + text + "'");
    }
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    Rational q(frac, scale);
    q.canonicalize();
    if (negative) return Rational(whole) - q;
    return Rational(whole) + q;
}

}  // namespace nutdisc
