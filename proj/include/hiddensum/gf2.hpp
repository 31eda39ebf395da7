#pragma once

// Bit-packed vectors and matrices over GF(2), 64 coordinates per word,
// row-major, coordinate 0 in the lowest bit of word 0. Textual I/O puts
// coordinate 1 leftmost, so string position k maps to internal index k.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hiddensum/errors.hpp"

namespace hsum::gf2 {

using word_t = std::uint64_t;
inline constexpr std::size_t WORD_BITS = 64;

inline constexpr std::size_t words_for(std::size_t bits) {
    return (bits + WORD_BITS - 1) / WORD_BITS;
}

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), w_(words_for(len), 0) {}

    static BitVector from_string(std::string_view bits);
    static BitVector unit(std::size_t len, std::size_t i);

    std::size_t size() const { return len_; }

    bool get(std::size_t i) const {
        return (w_[i / WORD_BITS] >> (i % WORD_BITS)) & 1u;
    }
    void set(std::size_t i, bool v) {
        word_t mask = word_t(1) << (i % WORD_BITS);
        if (v)
            w_[i / WORD_BITS] |= mask;
        else
            w_[i / WORD_BITS] &= ~mask;
    }

    BitVector& operator^=(const BitVector& o);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    bool operator==(const BitVector&) const = default;

    bool is_zero() const;
    std::size_t popcount() const;
    std::string to_string() const;

    const std::vector<word_t>& words() const { return w_; }
    std::vector<word_t>& words() { return w_; }

private:
    std::size_t len_ = 0;
    std::vector<word_t> w_;
};

BitVector random_vector(std::size_t len, std::mt19937_64& rng);

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_(words_for(cols)), w_(rows * stride_, 0) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_strings(const std::vector<std::string>& rows);
    static BitMatrix from_rows(const std::vector<BitVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }

    bool get(std::size_t r, std::size_t c) const {
        return (w_[r * stride_ + c / WORD_BITS] >> (c % WORD_BITS)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        word_t mask = word_t(1) << (c % WORD_BITS);
        if (v)
            w_[r * stride_ + c / WORD_BITS] |= mask;
        else
            w_[r * stride_ + c / WORD_BITS] &= ~mask;
    }

    word_t* row_ptr(std::size_t r) { return w_.data() + r * stride_; }
    const word_t* row_ptr(std::size_t r) const { return w_.data() + r * stride_; }

    BitVector row(std::size_t r) const;
    void set_row(std::size_t r, const BitVector& v);

    // dst ^= src, starting at word index from_word (leading words known equal/zero)
    void row_xor(std::size_t dst, std::size_t src, std::size_t from_word = 0) {
        word_t* d = row_ptr(dst);
        const word_t* s = row_ptr(src);
        for (std::size_t k = from_word; k < stride_; ++k)
            d[k] ^= s[k];
    }
    void swap_rows(std::size_t a, std::size_t b);
    bool row_is_zero(std::size_t r) const;

    bool operator==(const BitMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<word_t> w_;
};

// v is a row vector: result = v * a, length a.cols()
BitVector mat_vec_mul(const BitVector& v, const BitMatrix& a);
BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);
BitMatrix transpose(const BitMatrix& a);

// image[i] = image of coordinate i+1, 1-indexed; P has e_i * P = e_image[i]
BitMatrix permutation_to_matrix(const std::vector<std::size_t>& image);
// p * a * p^{-1}
BitMatrix conjugate(const BitMatrix& a, const BitMatrix& p);

enum class Elim { table, plain };

struct RrefResult {
    std::size_t rank = 0;
    std::vector<std::size_t> pivots; // pivot column per pivot row, ascending
};

RrefResult rref_in_place(BitMatrix& m, Elim method = Elim::table);
std::size_t rank(const BitMatrix& m, Elim method = Elim::table);

// Canonical kernel basis: rows of the reduced row echelon form of the
// standard free-column basis. Empty when the kernel is {0}.
std::vector<BitVector> solve_homogeneous(const BitMatrix& m, Elim method = Elim::table);
BitMatrix invert(const BitMatrix& m, Elim method = Elim::table);

namespace ref {
// Plain full-width Gauss-Jordan, kept as the reference the fast path is tested against.
RrefResult rref_in_place(BitMatrix& m);
} // namespace ref

// "gf2matrix <rows> <cols>" header then one 0/1 line per row
BitMatrix read_matrix(std::istream& in);
BitMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const BitMatrix& m);
void write_matrix_file(const std::string& path, const BitMatrix& m);

} // namespace hsum::gf2
