#include "cli.hpp"

#include "nutdisc/discrepancy.hpp"
#include "nutdisc/error.hpp"
#include "nutdisc/families.hpp"
#include "nutdisc/matrix_spec_io.hpp"
#include "nutdisc/shift.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace nutdisc::cli {

namespace {

constexpr const char* kVersion = "nutdisc 1.0.0";

struct Config {
    std::string format = "csv";
    std::string output;
    std::string meta_path;
    std::size_t precision = kDefaultDimension;
    std::size_t budget = kDefaultPointBudget;

    std::string matrix = "identity";
    std::string count;          // N, arbitrary precision
    std::string p = "2";
    std::string method = "fast";
    int decimal_digits = -1;    // gen: decimal column when >= 0

    std::size_t alpha = 1;
    std::size_t r_min = 2, r_max = 20;
    std::string a_bits = "01";
    std::size_t m_min = 2, m_max = 20;
    std::size_t n_min = 1, n_max = 127;
    std::size_t m = 4;
    std::string family;
    std::string n_list;
};

std::optional<std::size_t> env_size(const char* name) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    BigInt v = parse_bigint(raw);
    if (v < 1 || !v.fits_ulong_p()) {
        throw Error(ErrorKind::parse, std::string(name) + " must be a positive integer");
    }
    return static_cast<std::size_t>(v.get_ui());
}

double parse_p(const std::string& text) {
    if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
    Rational q = parse_rational(text);
    double p = to_double(q);
    if (!(p >= 1.0)) throw Error(ErrorKind::domain, "p must lie in [1, inf]");
    return p;
}

BigInt parse_count(const std::string& text) {
    if (text.empty()) throw Error(ErrorKind::parse, "--N is required");
    BigInt n = parse_bigint(text);
    if (n < 1) throw Error(ErrorKind::domain, "N must be >= 1");
    return n;
}

std::size_t to_size(const BigInt& n, std::size_t budget) {
    if (!n.fits_ulong_p() || n.get_ui() > budget) {
        throw Error(ErrorKind::resource, "N = " + n.get_str() + " exceeds the point budget of " +
                                             std::to_string(budget) +
                                             "; use the fast integral path instead");
    }
    return static_cast<std::size_t>(n.get_ui());
}

Gf2Matrix matrix_for(const Config& cfg, std::size_t digits_needed) {
    MatrixSpec spec = parse_matrix_spec(cfg.matrix, cfg.precision);
    return build_matrix(spec.at_least(digits_needed));
}

void finish(const ExperimentReport& report, const Config& cfg, std::ostream& out) {
    emit(report, parse_format(cfg.format), cfg.output, out);
    if (!cfg.meta_path.empty()) {
        std::ofstream meta(cfg.meta_path, std::ios::binary | std::ios::trunc);
        if (!meta) throw Error(ErrorKind::io, "cannot open '" + cfg.meta_path + "' for writing");
        ExperimentReport copy = report;
        copy.set_meta("tool", kVersion);
        write_metadata(copy, meta);
    }
}

int finish(const Verification& v, const Config& cfg, std::ostream& out, std::ostream& err) {
    finish(v.report, cfg, out);
    for (const auto& f : v.failures) err << "assertion failed: " << f << '\n';
    return v.passed() ? kOk : kAssertionFailed;
}

// -- commands --------------------------------------------------------------------

int cmd_gen(const Config& cfg, std::ostream& out) {
    const BigInt n = parse_count(cfg.count);
    const std::size_t count = to_size(n, cfg.budget);
    const Gf2Matrix c = matrix_for(cfg, bit_length(n - 1));
    const PointSet pts = prefix(c, count, cfg.budget);

    std::vector<std::string> cols{"n", "point"};
    if (cfg.decimal_digits >= 0) cols.emplace_back("decimal");
    ExperimentReport report(cols);
    report.set_meta("driver", "gen");
    report.set_meta("matrix", cfg.matrix);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<Cell> row{BigInt(static_cast<unsigned long>(k)), pts[k].to_string()};
        if (cfg.decimal_digits >= 0) {
            row.emplace_back(to_decimal_string(pts[k].value(), cfg.decimal_digits));
        }
        report.add_row(std::move(row));
    }
    finish(report, cfg, out);
    return kOk;
}

int cmd_disc(const Config& cfg, std::ostream& out) {
    const BigInt n = parse_count(cfg.count);
    const std::size_t count = to_size(n, cfg.budget);
    const double p = parse_p(cfg.p);
    const Gf2Matrix c = matrix_for(cfg, bit_length(n - 1));
    const PointSet pts = prefix(c, count, cfg.budget);
    if (std::isinf(p)) {
        const Rational linf = linf_norm(pts);
        out << to_exact_string(linf) << '\n' << "decimal=" << to_decimal_string(linf) << '\n';
        return kOk;
    }
    const NormResult r = lp_norm(pts, p);
    if (r.exact) {
        out << to_exact_string(*r.exact) << '\n' << "decimal=" << to_decimal_string(*r.exact) << '\n';
    } else {
        std::ostringstream os;
        os.precision(17);
        os << r.value;
        out << os.str() << '\n';
        if (r.exact_power) out << "power=" << to_exact_string(*r.exact_power) << '\n';
    }
    return kOk;
}

int cmd_integral(const Config& cfg, std::ostream& out, std::ostream& err) {
    const BigInt n = parse_count(cfg.count);
    if (cfg.method != "fast" && cfg.method != "direct" && cfg.method != "both") {
        throw Error(ErrorKind::parse, "--method must be fast, direct or both");
    }
    const Gf2Matrix c = matrix_for(cfg, bit_length(n) + 1);
    std::optional<Rational> fast, direct;
    if (cfg.method != "direct") fast = signed_integral_fast(c, n);
    if (cfg.method != "fast") {
        direct = signed_integral_direct(prefix(c, to_size(n, cfg.budget), cfg.budget));
    }
    const Rational& value = fast ? *fast : *direct;
    out << to_exact_string(value) << '\n';
    out << "decimal=" << to_decimal_string(value) << '\n';
    if (fast && direct) {
        const bool match = *fast == *direct;
        out << "match=" << (match ? "true" : "false") << '\n';
        if (!match) {
            err << "assertion failed: fast " << to_exact_string(*fast) << " != direct "
                << to_exact_string(*direct) << '\n';
            return kAssertionFailed;
        }
    }
    return kOk;
}

int cmd_verify_thm1(const Config& cfg, std::ostream& out, std::ostream& err) {
    auto v = verify_theorem1(cfg.alpha, cfg.r_min, cfg.r_max);
    return finish(v, cfg, out, err);
}

int cmd_verify_thm2(const Config& cfg, std::ostream& out, std::ostream& err) {
    auto v = verify_theorem2(cfg.a_bits, cfg.m_min, cfg.m_max, parse_p(cfg.p), cfg.budget);
    return finish(v, cfg, out, err);
}

int cmd_verify_lemma1(const Config& cfg, std::ostream& out, std::ostream& err) {
    const Gf2Matrix c = matrix_for(cfg, bit_length(BigInt(static_cast<unsigned long>(cfg.n_max))) + 1);
    auto v = verify_lemma1(c, cfg.n_max, cfg.budget);
    v.report.set_meta("matrix", cfg.matrix);
    return finish(v, cfg, out, err);
}

int cmd_scan_max(const Config& cfg, std::ostream& out) {
    const Gf2Matrix c = matrix_for(cfg, cfg.m + 1);
    const RangeMax best = scan_range_max(c, cfg.m);
    ExperimentReport report({"m", "N", "value", "value_dec"});
    report.set_meta("driver", "scan max");
    report.set_meta("matrix", cfg.matrix);
    report.add_row({BigInt(static_cast<unsigned long>(cfg.m)), best.count, best.value,
                    to_double(best.value)});
    finish(report, cfg, out);
    return kOk;
}

int cmd_scan_ratio(const Config& cfg, std::ostream& out) {
    std::vector<BigInt> counts;
    if (!cfg.family.empty()) {
        if (cfg.family.rfind("thm1:", 0) != 0) {
            throw Error(ErrorKind::parse, "--family must look like thm1:<alpha>");
        }
        BigInt alpha = parse_bigint(cfg.family.substr(5));
        if (alpha < 1 || !alpha.fits_ulong_p()) throw Error(ErrorKind::domain, "family alpha must be >= 1");
        counts = theorem1_counts(static_cast<std::size_t>(alpha.get_ui()), cfg.r_max);
    } else if (!cfg.n_list.empty()) {
        std::stringstream ss(cfg.n_list);
        std::string item;
        while (std::getline(ss, item, ',')) counts.push_back(parse_count(item));
    } else {
        throw Error(ErrorKind::parse, "scan ratio needs --family or --n-list");
    }
    std::size_t digits = 1;
    for (const auto& n : counts) digits = std::max(digits, bit_length(n) + 1);
    const Gf2Matrix c = matrix_for(cfg, digits);
    std::optional<double> p;
    if (!cfg.p.empty() && cfg.p != "none") p = parse_p(cfg.p);
    if (p && std::isinf(*p)) throw Error(ErrorKind::domain, "scan ratio supports finite p only");
    auto report = ratio_scan(c, counts, p, cfg.budget);
    report.set_meta("matrix", cfg.matrix);
    finish(report, cfg, out);
    return kOk;
}

int cmd_scan_figure1(const Config& cfg, std::ostream& out) {
    finish(figure1_data(cfg.n_max, cfg.budget), cfg, out);
    return kOk;
}

int cmd_scan_bounds(const Config& cfg, std::ostream& out, std::ostream& err) {
    const Gf2Matrix c = matrix_for(cfg, bit_length(BigInt(static_cast<unsigned long>(cfg.n_max))) + 1);
    auto v = bound_check(c, cfg.n_min, cfg.n_max, parse_p(cfg.p), cfg.budget);
    v.report.set_meta("matrix", cfg.matrix);
    return finish(v, cfg, out, err);
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::resource:
        case ErrorKind::io:
            return kResource;
        default:
            return kInvalidInput;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    try {
        if (auto v = env_size("NUTDISC_BUDGET")) cfg.budget = *v;
        if (auto v = env_size("NUTDISC_PRECISION")) cfg.precision = *v;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }

    CLI::App app{"Digital NUT sequences over Z_2: points, exact L_p discrepancy and shift calculus",
                 "nutdisc"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output,-o", cfg.output, "write data to this file instead of stdout");
    app.add_option("--meta", cfg.meta_path, "write report metadata (JSON) to this file");
    app.add_option("--precision", cfg.precision, "matrix truncation dimension M")->check(CLI::PositiveNumber);
    app.add_option("--budget", cfg.budget, "maximum number of materialized points")->check(CLI::PositiveNumber);

    auto* gen = app.add_subcommand("gen", "emit the first N points");
    gen->add_option("--matrix", cfg.matrix, "matrix spec");
    gen->add_option("--N", cfg.count, "number of points")->required();
    gen->add_option("--decimal", cfg.decimal_digits, "also emit decimals with this many digits");

    auto* disc = app.add_subcommand("disc", "L_p discrepancy of the first N points");
    disc->add_option("--matrix", cfg.matrix, "matrix spec");
    disc->add_option("--N", cfg.count, "number of points")->required();
    disc->add_option("--p", cfg.p, "exponent in [1, inf]");

    auto* integral = app.add_subcommand("integral", "exact integral of the discrepancy function");
    integral->add_option("--matrix", cfg.matrix, "matrix spec");
    integral->add_option("--N", cfg.count, "number of points")->required();
    integral->add_option("--method", cfg.method, "fast, direct or both");

    auto* verify = app.add_subcommand("verify", "verification drivers");
    verify->require_subcommand(1);
    auto* thm1 = verify->add_subcommand("thm1", "band matrices C(alpha)");
    thm1->add_option("--alpha", cfg.alpha)->check(CLI::PositiveNumber);
    thm1->add_option("--r-min", cfg.r_min)->check(CLI::PositiveNumber);
    thm1->add_option("--r-max", cfg.r_max)->check(CLI::PositiveNumber);
    auto* thm2 = verify->add_subcommand("thm2", "column-constant matrices C(a)");
    thm2->add_option("--a", cfg.a_bits, "bit string, extended periodically");
    thm2->add_option("--m-min", cfg.m_min);
    thm2->add_option("--m-max", cfg.m_max);
    thm2->add_option("--p", cfg.p, "exponent in [1, inf)");
    auto* lemma1 = verify->add_subcommand("lemma1", "fast vs direct integral for N = 1..n-max");
    lemma1->add_option("--matrix", cfg.matrix, "matrix spec");
    lemma1->add_option("--n-max", cfg.n_max)->check(CLI::PositiveNumber);

    auto* scan = app.add_subcommand("scan", "scans and figure data");
    scan->require_subcommand(1);
    auto* scan_max = scan->add_subcommand("max", "max |integral| over N in [2^m, 2^{m+1})");
    scan_max->add_option("--matrix", cfg.matrix, "matrix spec");
    scan_max->add_option("--m", cfg.m);
    auto* ratio = scan->add_subcommand("ratio", "|integral| / log N along an N family");
    ratio->add_option("--matrix", cfg.matrix, "matrix spec");
    ratio->add_option("--family", cfg.family, "thm1:<alpha>");
    ratio->add_option("--n-list", cfg.n_list, "comma-separated N values");
    ratio->add_option("--r-max", cfg.r_max)->check(CLI::PositiveNumber);
    ratio->add_option("--p", cfg.p, "also report L_p within the point budget ('none' to skip)");
    auto* figure1 = scan->add_subcommand("figure1", "L_inf and s_2 of the van der Corput prefixes");
    figure1->add_option("--n-max", cfg.n_max);
    auto* bounds = scan->add_subcommand("bounds", "upper bound chain in terms of s_2(N)");
    bounds->add_option("--matrix", cfg.matrix, "matrix spec");
    bounds->add_option("--n-min", cfg.n_min)->check(CLI::PositiveNumber);
    bounds->add_option("--n-max", cfg.n_max)->check(CLI::PositiveNumber);
    bounds->add_option("--p", cfg.p, "exponent in [1, inf]");

    // CLI11 wants argv order reversed in a vector
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
    if (ratio->parsed() && ratio->count("--p") == 0) cfg.p = "none";

    try {
        if (gen->parsed()) return cmd_gen(cfg, out);
        if (disc->parsed()) return cmd_disc(cfg, out);
        if (integral->parsed()) return cmd_integral(cfg, out, err);
        if (thm1->parsed()) return cmd_verify_thm1(cfg, out, err);
        if (thm2->parsed()) return cmd_verify_thm2(cfg, out, err);
        if (lemma1->parsed()) return cmd_verify_lemma1(cfg, out, err);
        if (scan_max->parsed()) return cmd_scan_max(cfg, out);
        if (ratio->parsed()) return cmd_scan_ratio(cfg, out);
        if (figure1->parsed()) return cmd_scan_figure1(cfg, out);
        if (bounds->parsed()) return cmd_scan_bounds(cfg, out, err);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return kResource;
    }
    err << "error: no command\n";
    return kInvalidInput;
}

}  // namespace nutdisc::cli
