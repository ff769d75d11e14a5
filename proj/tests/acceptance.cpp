// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "cli.hpp"

#include "nutdisc/discrepancy.hpp"
#include "nutdisc/families.hpp"
#include "nutdisc/matrix_spec_io.hpp"
#include "nutdisc/shift.hpp"

#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

using namespace nutdisc;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

BigInt big(unsigned long n) { return BigInt(n); }

std::string fmt(double v, int digits = 6) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

// 1: fast integral against the direct sum for every N <= 4096
Outcome lemma_oracle() {
    constexpr std::size_t kMax = 4096;
    Outcome o;
    std::size_t checked = 0, mismatches = 0;
    for (const auto& m : oracle::battery()) {
        const PointSet pts = prefix(m.matrix, kMax);
        const std::size_t e = pts.max_exponent();
        BigInt running = 0;
        for (std::size_t n = 1; n <= kMax; ++n) {
            running += pts[n - 1].scaled_numerator(e);
            const Rational direct =
                oracle::frac(BigInt(static_cast<unsigned long>(n)), 2) - oracle::frac(running, pow2(e));
            if (n % 512 == 0 || n == 1) {
                // the running sum is the library oracle on the leading points
                std::vector<DyadicRational> head(pts.points().begin(), pts.points().begin() + static_cast<long>(n));
                if (signed_integral_direct(PointSet(std::move(head))) != direct) ++mismatches;
            }
            if (signed_integral_fast(m.matrix, big(n)) != direct) {
                ++mismatches;
                if (o.pass) o.detail = m.name + " N=" + std::to_string(n) + " ";
                o.pass = false;
            }
            ++checked;
        }
    }
    o.pass = o.pass && mismatches == 0;
    o.detail += std::to_string(checked) + " (matrix, N) pairs, " + std::to_string(mismatches) + " mismatches";
    return o;
}

// 2: L_p engine against a 10^6-cell midpoint rule and two hand values
Outcome lp_engine() {
    constexpr std::size_t kCells = 1000000;
    constexpr double kTol = 1e-4;
    Outcome o;
    std::mt19937_64 rng(20240611);
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 64;
        std::vector<DyadicRational> v;
        for (std::size_t i = 0; i < n; ++i) v.emplace_back(BigInt(static_cast<unsigned long>(rng() >> 12)), 52);
        const PointSet pts(std::move(v));
        const auto xs = oracle::as_doubles(pts);
        for (double p : {1.0, 2.0, 3.0, 2.5}) {
            const double exact = lp_norm(pts, p).value;
            const double grid = oracle::riemann_lp(xs, p, kCells);
            const double rel = std::fabs(exact - grid) / std::max(exact, 1e-300);
            worst = std::max(worst, rel);
        }
    }
    std::vector<DyadicRational> half{DyadicRational(), DyadicRational(BigInt(1), 1)};
    const PointSet hp(half);
    const double e1 = std::fabs(lp_norm(hp, 1).value - 0.5);
    const double e2 = std::fabs(lp_norm(hp, 2).value - 1 / std::sqrt(3.0));
    o.pass = worst <= kTol && e1 <= 1e-12 && e2 <= 1e-12;
    o.detail = "max relative grid error " + fmt(worst, 3) + " (tol 1e-4), hand values off by " + fmt(e1, 3) +
               ", " + fmt(e2, 3);
    return o;
}

// 3: band family residual does not grow; alpha=1, r=3 gives 39/32
Outcome band_family() {
    Outcome o;
    for (std::size_t alpha : {1U, 2U, 3U}) {
        auto v = verify_theorem1(alpha, 2, 20);
        const auto& rep = v.report;
        const std::size_t last = rep.rows().size() - 1;
        o.pass = o.pass && v.passed();
        o.detail += "alpha=" + std::to_string(alpha) + (v.passed() ? " bounded" : " grows") + " (deviation " +
                    fmt(std::get<double>(rep.at(last, "deviation_dec"))) + " at r=20, against slope " +
                    to_exact_string(band_sigma_slope(alpha)) + ": " +
                    fmt(std::get<double>(rep.at(last, "sigma_deviation_dec"))) + "); ";
    }
    auto c = build_matrix(MatrixSpec::band(1, 64));
    const Rational v = signed_integral_fast(c, theorem1_family(1, 3).count);
    o.pass = o.pass && v == Rational(39, 32);
    o.detail += "alpha=1 r=3 -> " + to_exact_string(v);
    return o;
}

// 4: |integral| / log N along (4^r - 1)/3 approaches 1/(6 log 2)
Outcome vdc_ratio() {
    const double limit = 1 / (6 * std::log(2.0));
    auto rep = ratio_scan(build_matrix(MatrixSpec::identity(64)), theorem1_counts(1, 30));
    std::vector<double> ratios;
    for (std::size_t k = 0; k < rep.rows().size(); ++k) ratios.push_back(std::get<double>(rep.at(k, "ratio")));
    bool monotone = true;
    for (std::size_t r = 6; r <= 30; ++r) {
        if (ratios[r - 1] > ratios[r - 2]) monotone = false;
    }
    const double at30 = ratios[29];
    const double rel = std::fabs(at30 - limit) / limit;
    Outcome o;
    o.pass = rel <= 0.10 && monotone;
    o.detail = "ratio(r=30) = " + fmt(at30) + " vs limit " + fmt(limit) + " (" + fmt(100 * rel, 3) +
               "% off), non-increasing from r=5: " + (monotone ? "yes" : "no");
    return o;
}

// 5: column matrix C(01): sign, residual and direct agreement
Outcome column_family() {
    auto v = verify_theorem2("01", 2, 20, 1);
    Outcome o;
    std::size_t sign_bad = 0, direct = 0, direct_bad = 0;
    std::string sign_rows;
    for (std::size_t k = 0; k < v.report.rows().size(); ++k) {
        const auto m = std::get<BigInt>(v.report.at(k, "m"));
        if (!std::get<bool>(v.report.at(k, "sign_ok"))) {
            ++sign_bad;
            sign_rows += " m=" + m.get_str() + " (integral " +
                         to_exact_string(std::get<Rational>(v.report.at(k, "integral"))) + ")";
        }
        const auto& cell = v.report.at(k, "direct_match");
        if (m <= 18) {
            if (!std::holds_alternative<bool>(cell)) {
                ++direct_bad;
            } else {
                ++direct;
                if (!std::get<bool>(cell)) ++direct_bad;
            }
        }
    }
    o.pass = v.passed() && sign_bad == 0 && direct_bad == 0;
    o.detail = std::to_string(sign_bad) + " sign mismatches" + sign_rows + ", " + std::to_string(direct) +
               " direct comparisons (m<=18) with " + std::to_string(direct_bad) + " failures";
    for (const auto& f : v.failures) o.detail += "; " + f;
    return o;
}

std::string cli_capture(const std::vector<std::string>& args, int* code = nullptr) {
    std::ostringstream out, err;
    int rc = cli::run(args, out, err);
    if (code) *code = rc;
    return out.str();
}

// 6: van der Corput L_inf profile through the CLI
Outcome vdc_profile() {
    int code = 0;
    std::istringstream csv(cli_capture({"scan", "figure1", "--n-max", "127"}, &code));
    Outcome o;
    std::string line;
    std::getline(csv, line);
    if (code != 0 || line != "N,linf,s2") return {false, "bad header or exit code"};
    std::size_t rows = 0, bad = 0;
    while (std::getline(csv, line)) {
        std::istringstream fields(line);
        std::string n_text, linf_text, s2_text;
        std::getline(fields, n_text, ',');
        std::getline(fields, linf_text, ',');
        std::getline(fields, s2_text, ',');
        const BigInt n = parse_bigint(n_text);
        const Rational linf = parse_rational(linf_text);
        const BigInt s = parse_bigint(s2_text);
        const double log_bound = std::log(n.get_d()) / (3 * std::log(2.0)) + 1;
        const bool dyadic = mpz_popcount(n.get_mpz_t()) == 1;
        if (linf > s || to_double(linf) > log_bound || (dyadic && linf > 1)) ++bad;
        if (s != oracle::popcount(n.get_ui())) ++bad;
        ++rows;
    }
    o.pass = rows == 127 && bad == 0;
    o.detail = std::to_string(rows) + " rows, " + std::to_string(bad) + " violations";
    return o;
}

// 7: L_2 <= s_2/sqrt(3) and L_4 <= s_2 over the battery, N <= 4096
Outcome lp_bound() {
    Outcome o;
    std::size_t bad = 0, checked = 0;
    std::string first;
    for (const auto& m : oracle::battery()) {
        const PointSet all = prefix(m.matrix, 4096);
        for (std::size_t n = 1; n <= 4096; ++n) {
            std::vector<DyadicRational> head(all.points().begin(), all.points().begin() + static_cast<long>(n));
            const PointSet pts(std::move(head));
            const Rational s(static_cast<unsigned long>(oracle::popcount(n)));
            const NormResult l2 = lp_norm(pts, 2);
            const NormResult l4 = lp_norm(pts, 4);
            const bool ok2 = *l2.exact_power <= s * s / 3;
            const bool ok4 = *l4.exact_power <= s * s * s * s;
            if (!ok2 || !ok4) {
                if (first.empty()) first = " first at " + m.name + " N=" + std::to_string(n);
                ++bad;
            }
            ++checked;
        }
    }
    o.pass = bad == 0;
    o.detail = std::to_string(checked) + " (matrix, N) pairs, " + std::to_string(bad) + " violations" + first;
    return o;
}

// 8: S(N) gap and flip differences over N < 2^16
Outcome s_identity() {
    std::vector<Rational> gaps, flips;
    std::string blocks;
    for (std::size_t m = 1; m < 16; ++m) {
        Rational block_max = 0;
        for (std::uint64_t n = std::uint64_t{1} << m; n < (std::uint64_t{2} << m); ++n) {
            const BigInt nb = big(n);
            gaps.push_back(abs(s_identity_gap(nb)));
            flips.push_back(abs(s_statistic(nb) - s_statistic(flip_complement(nb))));
            block_max = std::max(block_max, gaps.back());
        }
        if (m == 1 || m == 8 || m == 15) blocks += (blocks.empty() ? "" : ", ") + to_exact_string(block_max);
    }
    Outcome o;
    o.pass = non_growing(gaps) && non_growing(flips);
    o.detail = "max |gap| " + to_exact_string(*std::max_element(gaps.begin(), gaps.end())) +
               ", max |S(N)-S(N')| " + to_exact_string(*std::max_element(flips.begin(), flips.end())) +
               ", gap block maxima at m=1,8,15: " + blocks + ", non-growing over the N range: " +
               (o.pass ? "yes" : "no");
    return o;
}

// 9: net property and shifted-lattice blocks, m <= 12
Outcome net_structure() {
    constexpr std::size_t kBits = 12;
    constexpr std::size_t kScale = 16;
    std::size_t bad = 0, blocks = 0;
    for (const auto& m : oracle::battery()) {
        const PointSet all = prefix(m.matrix, std::size_t{1} << (kBits + 1));
        std::vector<std::uint64_t> scaled;
        for (const auto& x : all.points()) scaled.push_back(x.scaled_numerator(kScale).get_ui());

        for (std::size_t mm = 0; mm <= kBits; ++mm) {
            const std::size_t size = std::size_t{1} << mm;
            for (std::size_t q = 0; q < scaled.size() / size; ++q) {
                std::vector<char> seen(size, 0);
                for (std::size_t k = q * size; k < (q + 1) * size; ++k) seen[scaled[k] >> (kScale - mm)] = 1;
                if (std::count(seen.begin(), seen.end(), 1) != static_cast<long>(size)) ++bad;
                ++blocks;
            }
        }

        for (std::size_t n = 1; n <= (std::size_t{1} << kBits); ++n) {
            const auto d = binary_decomposition(big(n));
            std::size_t start = 0;
            for (std::size_t i = 1; i <= d.r(); ++i) {
                const std::size_t ni = d.n(i);
                const std::size_t size = std::size_t{1} << ni;
                const std::uint64_t shift = delta_shift(m.matrix, d, i).delta.scaled_numerator(kScale).get_ui();
                std::vector<char> seen(size, 0);
                bool ok = true;
                for (std::size_t k = start; k < start + size; ++k) {
                    if (scaled[k] < shift) {
                        ok = false;
                        break;
                    }
                    const std::uint64_t diff = scaled[k] - shift;
                    const std::uint64_t unit = std::uint64_t{1} << (kScale - ni);
                    if (diff % unit != 0 || diff / unit >= size) {
                        ok = false;
                        break;
                    }
                    seen[diff / unit] = 1;
                }
                if (!ok || std::count(seen.begin(), seen.end(), 1) != static_cast<long>(size)) ++bad;
                ++blocks;
                start += size;
            }
        }
    }
    return {bad == 0, std::to_string(blocks) + " blocks checked, " + std::to_string(bad) + " failures"};
}

// 10: every driver twice, byte-identical files
Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path() / "nutdisc_acceptance";
    std::filesystem::create_directories(dir);
    const std::vector<std::vector<std::string>> drivers = {
        {"gen", "--matrix", "column:011", "--N", "300", "--decimal", "10"},
        {"disc", "--matrix", "band:2", "--N", "777", "--p", "2.5"},
        {"integral", "--matrix", "rows:01", "--N", "4000", "--method", "both"},
        {"verify", "thm1", "--alpha", "2", "--r-max", "15"},
        {"verify", "thm2", "--a", "01", "--m-max", "14", "--p", "3"},
        {"verify", "lemma1", "--matrix", "upper1", "--n-max", "1000"},
        {"scan", "max", "--matrix", "rows:0", "--m", "10"},
        {"scan", "ratio", "--matrix", "identity", "--family", "thm1:1", "--r-max", "25", "--p", "2"},
        {"scan", "figure1", "--n-max", "127"},
        {"scan", "bounds", "--matrix", "column:01", "--n-max", "500", "--p", "2"},
    };
    std::size_t bad = 0, runs = 0;
    for (const char* format : {"csv", "json"}) {
        for (std::size_t k = 0; k < drivers.size(); ++k) {
            std::string contents[2];
            for (int rep = 0; rep < 2; ++rep) {
                const auto path = dir / ("run" + std::to_string(k) + "_" + std::to_string(rep) + "." + format);
                std::vector<std::string> args{"--format", format, "--output", path.string()};
                args.insert(args.end(), drivers[k].begin(), drivers[k].end());
                std::ostringstream out, err;
                const int rc = cli::run(args, out, err);
                std::ifstream in(path, std::ios::binary);
                std::ostringstream file;
                file << in.rdbuf();
                // commands that print to the data stream rather than a report
                contents[rep] = file.str() + out.str() + "#" + std::to_string(rc);
            }
            if (contents[0] != contents[1] || contents[0].size() < 3) ++bad;
            ++runs;
        }
    }
    std::filesystem::remove_all(dir);
    return {bad == 0, std::to_string(runs) + " driver/format pairs run twice, " + std::to_string(bad) + " differences"};
}

// --expect-fail 3,5 makes the exit status 0 exactly when the listed criteria
// (and no others) fail; the FAIL lines are printed either way.
std::set<std::size_t> parse_expected(int argc, char** argv) {
    std::set<std::size_t> out;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) != "--expect-fail") continue;
        std::stringstream list(argv[i + 1]);
        std::string item;
        while (std::getline(list, item, ',')) out.insert(std::stoul(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const auto expected = parse_expected(argc, argv);
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"fast integral equals direct oracle", lemma_oracle},
        {"L_p engine vs grid and hand values", lp_engine},
        {"band matrices: bounded deviation", band_family},
        {"van der Corput ratio limit", vdc_ratio},
        {"column matrices: sign and residual", column_family},
        {"van der Corput L_inf profile and bounds", vdc_profile},
        {"L_2 / L_4 bounds in terms of s_2", lp_bound},
        {"S(N) identity gap", s_identity},
        {"net and shifted-lattice structure", net_structure},
        {"byte-identical driver output", determinism},
    };
    std::set<std::size_t> failed;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) failed.insert(k + 1);
    }
    if (failed.empty()) return 0;
    std::string list;
    for (auto k : failed) list += (list.empty() ? "" : ",") + std::to_string(k);
    std::printf("%zu of %zu criteria failed: %s\n", failed.size(), criteria.size(), list.c_str());
    if (failed == expected) {
        std::printf("all failures are in the --expect-fail list\n");
        return 0;
    }
    return 1;
}
