#pragma once

// Bit-exact linear algebra over Z_2 and the generator-matrix families of
// digital NUT sequences.
//
// Indexing follows the usual matrix convention: entries c(i, j) are 1-based,
// row i produces output digit y_i, column j multiplies input digit n_{j-1}.

#include "nutdisc/numbers.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace nutdisc {

/// Packed bit sequence, least-significant digit first (bit 0 is n_0).
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size);
    BitVector(std::initializer_list<int> bits);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    /// 0-based access.
    bool get(std::size_t i) const noexcept {
        return (words_[i / 64] >> (i % 64)) & 1u;
    }
    void set(std::size_t i, bool value) noexcept {
        std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (value) {
            words_[i / 64] |= mask;
        } else {
            words_[i / 64] &= ~mask;
        }
    }
    void flip(std::size_t i) noexcept { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

    /// Grows or shrinks; new bits are zero.
    void resize(std::size_t size);

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    std::size_t popcount() const noexcept;
    std::vector<int> to_vector() const;

    /// Entrywise XOR; the shorter operand is zero-extended.
    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

    /// Equality ignores trailing zeros.
    friend bool operator==(const BitVector& a, const BitVector& b) noexcept;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Base-2 digits of n, LSB first, no trailing zeros (empty for 0).
BitVector bits_lsb(const BigInt& n);
BitVector bits_lsb(std::uint64_t n);

/// Sum of b_i 2^i.
BigInt to_integer(const BitVector& bits);

/// Finite M x M truncation of a binary generator matrix, rows bit-packed.
class Gf2Matrix {
public:
    Gf2Matrix() = default;

    /// Builds from an entry predicate over 1-based (i, j), i, j in 1..M.
    static Gf2Matrix from_entries(std::size_t dimension,
                                  const std::function<bool(std::size_t, std::size_t)>& entry);
    static Gf2Matrix identity(std::size_t dimension);

    std::size_t dimension() const noexcept { return rows_.size(); }

    /// 1-based entry c(i, j).
    bool at(std::size_t i, std::size_t j) const noexcept { return rows_[i - 1].get(j - 1); }

    /// 1-based row; bit j-1 of the returned vector is c(i, j).
    const BitVector& row(std::size_t i) const noexcept { return rows_[i - 1]; }

    /// Non-singular upper triangular: unit diagonal, zeros below it.
    bool is_nut() const noexcept { return nut_; }

    friend bool operator==(const Gf2Matrix& a, const Gf2Matrix& b) noexcept {
        return a.rows_ == b.rows_;
    }

private:
    explicit Gf2Matrix(std::vector<BitVector> rows);

    std::vector<BitVector> rows_;
    bool nut_ = false;
};

/// y_i = XOR_j c(i, j) v_j for i = 1..M; v is 0-based (v_j is bit j-1).
BitVector matvec(const Gf2Matrix& c, const BitVector& v);

/// Output digit y_i alone (1-based i); v may be longer than M, extra bits are ignored.
bool row_dot(const Gf2Matrix& c, std::size_t i, const BitVector& v);

/// True iff every leading n x n submatrix (n = 1..M) is nonsingular over Z_2.
bool full_rank_prefix_check(const Gf2Matrix& c);

// -- generator-matrix families ---------------------------------------------

inline constexpr std::size_t kDefaultDimension = 64;

/// Description of a generator matrix family plus its truncation dimension.
struct MatrixSpec {
    enum class Kind { identity, upper1, band, column, rowpattern, explicit_entries };

    Kind kind = Kind::identity;
    std::size_t dimension = kDefaultDimension;
    std::size_t alpha = 1;       // band width
    std::string bits;            // column / rowpattern string, extended periodically
    std::vector<std::vector<std::uint8_t>> entries;  // explicit matrices
    std::string source;          // explicit: path the entries were read from

    static MatrixSpec identity(std::size_t dimension = kDefaultDimension);
    static MatrixSpec upper1(std::size_t dimension = kDefaultDimension);
    static MatrixSpec band(std::size_t alpha, std::size_t dimension = kDefaultDimension);
    static MatrixSpec column(std::string bits, std::size_t dimension = kDefaultDimension);
    static MatrixSpec rowpattern(std::string bits, std::size_t dimension = kDefaultDimension);
    static MatrixSpec explicit_matrix(std::vector<std::vector<std::uint8_t>> entries,
                                      std::string source = {});

    /// Families can be re-truncated freely; explicit matrices only to their own size.
    bool resizable() const noexcept { return kind != Kind::explicit_entries; }

    /// Copy with dimension at least `min_dimension` (families only grow).
    MatrixSpec at_least(std::size_t min_dimension) const;

    /// Periodic bit a_i, 1-based.
    bool periodic_bit(std::size_t i) const;

    friend bool operator==(const MatrixSpec&, const MatrixSpec&) = default;
};

/// Throws Error(domain) for invalid specs and Error(singular) for explicit
/// matrices failing full_rank_prefix_check.
void validate(const MatrixSpec& spec);

Gf2Matrix build_matrix(const MatrixSpec& spec);

/// Number of (1,0,0,...) rows among the first m rows of a rowpattern matrix.
std::size_t h_count(const MatrixSpec& spec, std::size_t m);

}  // namespace nutdisc
