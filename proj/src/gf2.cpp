#include "nutdisc/gf2.hpp"

#include "nutdisc/error.hpp"

#include <algorithm>
#include <bit>

namespace nutdisc {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace

// -- BitVector ---------------------------------------------------------------

BitVector::BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

BitVector::BitVector(std::initializer_list<int> bits) : BitVector(bits.size()) {
    std::size_t i = 0;
    for (int b : bits) set(i++, b != 0);
}

void BitVector::resize(std::size_t size) {
    if (size < size_) {
        for (std::size_t i = size; i < std::min(size_, word_count(size) * 64); ++i) set(i, false);
    }
    words_.resize(word_count(size), 0);
    size_ = size;
}

std::size_t BitVector::popcount() const noexcept {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::vector<int> BitVector::to_vector() const {
    std::vector<int> out(size_);
    for (std::size_t i = 0; i < size_; ++i) out[i] = get(i) ? 1 : 0;
    return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.size_ > size_) resize(other.size_);
    for (std::size_t w = 0; w < other.words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

bool operator==(const BitVector& a, const BitVector& b) noexcept {
    const auto& longer = a.words_.size() >= b.words_.size() ? a.words_ : b.words_;
    const auto& shorter = a.words_.size() >= b.words_.size() ? b.words_ : a.words_;
    for (std::size_t w = 0; w < longer.size(); ++w) {
        std::uint64_t other = w < shorter.size() ? shorter[w] : 0;
        if (longer[w] != other) return false;
    }
    return true;
}

BitVector bits_lsb(const BigInt& n) {
    if (sgn(n) < 0) throw Error(ErrorKind::domain, "bits_lsb: negative integer");
    std::size_t len = bit_length(n);
    BitVector out(len);
    for (std::size_t i = 0; i < len; ++i) {
        if (mpz_tstbit(n.get_mpz_t(), i)) out.set(i, true);
    }
    return out;
}

BitVector bits_lsb(std::uint64_t n) {
    BitVector out(static_cast<std::size_t>(std::bit_width(n)));
    for (std::size_t i = 0; n != 0; ++i, n >>= 1) out.set(i, n & 1u);
    return out;
}

BigInt to_integer(const BitVector& bits) {
    BigInt n;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits.get(i)) mpz_setbit(n.get_mpz_t(), i);
    }
    return n;
}

// -- Gf2Matrix ---------------------------------------------------------------

Gf2Matrix::Gf2Matrix(std::vector<BitVector> rows) : rows_(std::move(rows)) {
    nut_ = true;
    for (std::size_t i = 0; i < rows_.size() && nut_; ++i) {
        if (!rows_[i].get(i)) nut_ = false;
        for (std::size_t j = 0; j < i && nut_; ++j) {
            if (rows_[i].get(j)) nut_ = false;
        }
    }
}

Gf2Matrix Gf2Matrix::from_entries(std::size_t dimension,
                                  const std::function<bool(std::size_t, std::size_t)>& entry) {
    std::vector<BitVector> rows(dimension, BitVector(dimension));
    for (std::size_t i = 1; i <= dimension; ++i) {
        for (std::size_t j = 1; j <= dimension; ++j) {
            if (entry(i, j)) rows[i - 1].set(j - 1, true);
        }
    }
    return Gf2Matrix(std::move(rows));
}

Gf2Matrix Gf2Matrix::identity(std::size_t dimension) {
    return from_entries(dimension, [](std::size_t i, std::size_t j) { return i == j; });
}

bool row_dot(const Gf2Matrix& c, std::size_t i, const BitVector& v) {
    auto row = c.row(i).words();
    auto vec = v.words();
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < std::min(row.size(), vec.size()); ++w) acc ^= row[w] & vec[w];
    return std::popcount(acc) & 1;
}

BitVector matvec(const Gf2Matrix& c, const BitVector& v) {
    const std::size_t m = c.dimension();
    if (v.size() > m) {
        // trailing zeros beyond M are harmless; anything else is a dimension error
        for (std::size_t i = m; i < v.size(); ++i) {
            if (v.get(i)) {
                throw Error(ErrorKind::dimension,
                            "matvec: vector of length " + std::to_string(v.size()) +
                                " exceeds matrix dimension " + std::to_string(m));
            }
        }
    }
    BitVector y(m);
    for (std::size_t i = 1; i <= m; ++i) {
        if (row_dot(c, i, v)) y.set(i - 1, true);
    }
    return y;
}

bool full_rank_prefix_check(const Gf2Matrix& c) {
    // Elimination without row exchanges: the k-th leading minor is the product
    // of the first k pivots, so every prefix is nonsingular iff no pivot vanishes.
    const std::size_t m = c.dimension();
    std::vector<BitVector> rows;
    rows.reserve(m);
    for (std::size_t i = 1; i <= m; ++i) rows.push_back(c.row(i));
    for (std::size_t k = 0; k < m; ++k) {
        if (!rows[k].get(k)) return false;
        for (std::size_t i = k + 1; i < m; ++i) {
            if (rows[i].get(k)) rows[i] ^= rows[k];
        }
    }
    return true;
}

// -- MatrixSpec --------------------------------------------------------------

MatrixSpec MatrixSpec::identity(std::size_t dimension) {
    MatrixSpec s;
    s.kind = Kind::identity;
    s.dimension = dimension;
    return s;
}

MatrixSpec MatrixSpec::upper1(std::size_t dimension) {
    MatrixSpec s;
    s.kind = Kind::upper1;
    s.dimension = dimension;
    return s;
}

MatrixSpec MatrixSpec::band(std::size_t alpha, std::size_t dimension) {
    MatrixSpec s;
    s.kind = Kind::band;
    s.alpha = alpha;
    s.dimension = dimension;
    return s;
}

MatrixSpec MatrixSpec::column(std::string bits, std::size_t dimension) {
    MatrixSpec s;
    s.kind = Kind::column;
    s.bits = std::move(bits);
    s.dimension = dimension;
    return s;
}

MatrixSpec MatrixSpec::rowpattern(std::string bits, std::size_t dimension) {
    MatrixSpec s;
    s.kind = Kind::rowpattern;
    s.bits = std::move(bits);
    s.dimension = dimension;
    return s;
}

MatrixSpec MatrixSpec::explicit_matrix(std::vector<std::vector<std::uint8_t>> entries,
                                       std::string source) {
    MatrixSpec s;
    s.kind = Kind::explicit_entries;
    s.dimension = entries.size();
    s.entries = std::move(entries);
    s.source = std::move(source);
    return s;
}

MatrixSpec MatrixSpec::at_least(std::size_t min_dimension) const {
    MatrixSpec s = *this;
    if (s.dimension >= min_dimension) return s;
    if (!resizable()) {
        throw Error(ErrorKind::dimension,
                    "explicit matrix has dimension " + std::to_string(dimension) + " but " +
                        std::to_string(min_dimension) + " is required");
    }
    s.dimension = min_dimension;
    return s;
}

bool MatrixSpec::periodic_bit(std::size_t i) const {
    return bits[(i - 1) % bits.size()] == '1';
}

void validate(const MatrixSpec& spec) {
    using Kind = MatrixSpec::Kind;
    if (spec.dimension == 0) throw Error(ErrorKind::domain, "matrix dimension must be positive");
    switch (spec.kind) {
        case Kind::band:
            if (spec.alpha < 1) throw Error(ErrorKind::domain, "band width must be >= 1");
            break;
        case Kind::column:
        case Kind::rowpattern:
            if (spec.bits.empty()) throw Error(ErrorKind::domain, "bit string must be non-empty");
            if (spec.bits.find_first_not_of("01") != std::string::npos) {
                throw Error(ErrorKind::domain, "bit string may only contain 0 and 1");
            }
            break;
        case Kind::explicit_entries:
            for (const auto& row : spec.entries) {
                if (row.size() != spec.entries.size()) {
                    throw Error(ErrorKind::domain, "explicit matrix must be square");
                }
                for (auto e : row) {
                    if (e > 1) throw Error(ErrorKind::domain, "explicit entries must be 0 or 1");
                }
            }
            if (spec.dimension != spec.entries.size()) {
                throw Error(ErrorKind::domain, "explicit matrix dimension mismatch");
            }
            break;
        default:
            break;
    }
}

Gf2Matrix build_matrix(const MatrixSpec& spec) {
    using Kind = MatrixSpec::Kind;
    validate(spec);
    const std::size_t m = spec.dimension;
    switch (spec.kind) {
        case Kind::identity:
            return Gf2Matrix::identity(m);
        case Kind::upper1:
            return Gf2Matrix::from_entries(m, [](std::size_t i, std::size_t j) { return j >= i; });
        case Kind::band:
            return Gf2Matrix::from_entries(m, [&](std::size_t i, std::size_t j) {
                return i <= j && j < i + spec.alpha;
            });
        case Kind::column:
            // column j > 1 carries a_{j-1} above the diagonal
            return Gf2Matrix::from_entries(m, [&](std::size_t i, std::size_t j) {
                return j == i || (j > i && spec.periodic_bit(j - 1));
            });
        case Kind::rowpattern:
            // '0' -> row (1,0,0,...), '1' -> row (1,1,1,...), both starting on the diagonal
            return Gf2Matrix::from_entries(m, [&](std::size_t i, std::size_t j) {
                return j == i || (j > i && spec.periodic_bit(i));
            });
        case Kind::explicit_entries: {
            auto c = Gf2Matrix::from_entries(m, [&](std::size_t i, std::size_t j) {
                return spec.entries[i - 1][j - 1] != 0;
            });
            if (!full_rank_prefix_check(c)) {
                throw Error(ErrorKind::singular,
                            "explicit matrix fails the full-rank prefix condition");
            }
            return c;
        }
    }
    throw Error(ErrorKind::unsupported, "unknown matrix kind");
}

std::size_t h_count(const MatrixSpec& spec, std::size_t m) {
    if (spec.kind != MatrixSpec::Kind::rowpattern) {
        throw Error(ErrorKind::unsupported, "h_count is defined for rowpattern matrices only");
    }
    validate(spec);
    if (m > spec.dimension) {
        throw Error(ErrorKind::dimension, "h_count: m exceeds matrix dimension");
    }
    std::size_t zeros = 0;
    for (std::size_t i = 1; i <= m; ++i) zeros += spec.periodic_bit(i) ? 0 : 1;
    return zeros;
}

}  // namespace nutdisc
