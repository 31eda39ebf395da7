#include "hiddensum/gf2.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace hsum::gf2 {

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(i, true);
        else if (bits[i] != '0')
            throw ParseError("bit vector: expected 0/1, got '" + std::string(1, bits[i]) + "'");
    }
    return v;
}

BitVector BitVector::unit(std::size_t len, std::size_t i) {
    if (i >= len)
        throw DimensionError("unit vector index out of range");
    BitVector v(len);
    v.set(i, true);
    return v;
}

BitVector& BitVector::operator^=(const BitVector& o) {
    if (len_ != o.len_)
        throw DimensionError("vector xor: length mismatch");
    for (std::size_t k = 0; k < w_.size(); ++k)
        w_[k] ^= o.w_[k];
    return *this;
}

bool BitVector::is_zero() const {
    for (word_t w : w_)
        if (w)
            return false;
    return true;
}

std::size_t BitVector::popcount() const {
    std::size_t n = 0;
    for (word_t w : w_)
        n += std::popcount(w);
    return n;
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i))
            s[i] = '1';
    return s;
}

BitVector random_vector(std::size_t len, std::mt19937_64& rng) {
    BitVector v(len);
    for (std::size_t k = 0; k < v.words().size(); ++k)
        v.words()[k] = rng();
    if (len % WORD_BITS)
        v.words().back() &= (word_t(1) << (len % WORD_BITS)) - 1;
    return v;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
    if (rows.empty())
        return {};
    BitMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_)
            throw DimensionError("matrix rows differ in length");
        for (std::size_t j = 0; j < m.cols_; ++j) {
            if (rows[i][j] == '1')
                m.set(i, j, true);
            else if (rows[i][j] != '0')
                throw ParseError("matrix row: expected 0/1");
        }
    }
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows) {
    if (rows.empty())
        return {};
    BitMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        m.set_row(i, rows[i]);
    return m;
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    const word_t* p = row_ptr(r);
    for (std::size_t k = 0; k < stride_; ++k)
        v.words()[k] = p[k];
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_)
        throw DimensionError("set_row: length mismatch");
    word_t* p = row_ptr(r);
    for (std::size_t k = 0; k < stride_; ++k)
        p[k] = v.words()[k];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
        return;
    word_t* pa = row_ptr(a);
    word_t* pb = row_ptr(b);
    for (std::size_t k = 0; k < stride_; ++k)
        std::swap(pa[k], pb[k]);
}

bool BitMatrix::row_is_zero(std::size_t r) const {
    const word_t* p = row_ptr(r);
    for (std::size_t k = 0; k < stride_; ++k)
        if (p[k])
            return false;
    return true;
}

BitVector mat_vec_mul(const BitVector& v, const BitMatrix& a) {
    if (v.size() != a.rows())
        throw DimensionError("mat_vec_mul: vector length != matrix rows");
    BitVector out(a.cols());
    for (std::size_t k = 0; k < v.words().size(); ++k) {
        word_t w = v.words()[k];
        while (w) {
            std::size_t i = k * WORD_BITS + std::size_t(std::countr_zero(w));
            w &= w - 1;
            const word_t* p = a.row_ptr(i);
            for (std::size_t t = 0; t < a.stride(); ++t)
                out.words()[t] ^= p[t];
        }
    }
    return out;
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("mat_mul: inner dimensions differ");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const word_t* arow = a.row_ptr(i);
        word_t* orow = out.row_ptr(i);
        for (std::size_t k = 0; k < a.stride(); ++k) {
            word_t w = arow[k];
            while (w) {
                std::size_t j = k * WORD_BITS + std::size_t(std::countr_zero(w));
                w &= w - 1;
                const word_t* brow = b.row_ptr(j);
                for (std::size_t t = 0; t < b.stride(); ++t)
                    orow[t] ^= brow[t];
            }
        }
    }
    return out;
}

BitMatrix transpose(const BitMatrix& a) {
    BitMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const word_t* p = a.row_ptr(i);
        for (std::size_t k = 0; k < a.stride(); ++k) {
            word_t w = p[k];
            while (w) {
                std::size_t j = k * WORD_BITS + std::size_t(std::countr_zero(w));
                w &= w - 1;
                out.set(j, i, true);
            }
        }
    }
    return out;
}

BitMatrix permutation_to_matrix(const std::vector<std::size_t>& image) {
    std::size_t n = image.size();
    std::vector<bool> seen(n, false);
    BitMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t img = image[i];
        if (img < 1 || img > n)
            throw DimensionError("permutation image out of range");
        if (seen[img - 1])
            throw DimensionError("permutation image repeated");
        seen[img - 1] = true;
        p.set(i, img - 1, true);
    }
    return p;
}

BitMatrix conjugate(const BitMatrix& a, const BitMatrix& p) {
    return mat_mul(mat_mul(p, a), invert(p));
}

BitMatrix read_matrix(std::istream& in) {
    std::string header;
    if (!std::getline(in, header))
        throw ParseError("matrix file: missing header");
    std::istringstream hs(header);
    std::string tag;
    long long rows = -1, cols = -1;
    hs >> tag >> rows >> cols;
    if (tag != "gf2matrix" || hs.fail() || rows <= 0 || cols <= 0)
        throw ParseError("matrix file: header must be 'gf2matrix <rows> <cols>'");
    BitMatrix m{std::size_t(rows), std::size_t(cols)};
    std::string line;
    for (long long i = 0; i < rows; ++i) {
        if (!std::getline(in, line))
            throw ParseError("matrix file: fewer rows than declared");
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        if (line.size() != std::size_t(cols))
            throw ParseError("matrix file: row " + std::to_string(i + 1) + " has wrong length");
        for (long long j = 0; j < cols; ++j) {
            if (line[std::size_t(j)] == '1')
                m.set(std::size_t(i), std::size_t(j), true);
            else if (line[std::size_t(j)] != '0')
                throw ParseError("matrix file: row " + std::to_string(i + 1) + " has non-binary character");
        }
    }
    return m;
}

BitMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const BitMatrix& m) {
    out << "gf2matrix " << m.rows() << ' ' << m.cols() << '\n';
    std::string line;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        line.assign(m.cols(), '0');
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.get(i, j))
                line[j] = '1';
        out << line << '\n';
    }
}

void write_matrix_file(const std::string& path, const BitMatrix& m) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    write_matrix(out, m);
}

} // namespace hsum::gf2
