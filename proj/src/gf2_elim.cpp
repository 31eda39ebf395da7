#include "hiddensum/gf2.hpp"

#include <algorithm>
#include <bit>

namespace hsum::gf2 {

namespace ref {

RrefResult rref_in_place(BitMatrix& m) {
    RrefResult res;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = m.rows();
        for (std::size_t i = r; i < m.rows(); ++i) {
            if (m.get(i, c)) {
                piv = i;
                break;
            }
        }
        if (piv == m.rows())
            continue;
        m.swap_rows(piv, r);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c))
                m.row_xor(i, r);
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

} // namespace ref

// Table-driven reduction: pivots are collected in stripes of up to 8 columns,
// the stripe block is made an identity among its pivot rows, then every other
// row is cleared with a single lookup of the 2^k precomputed combinations.
// Row updates only touch words at and after the stripe's first word.
static RrefResult rref_table(BitMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    const std::size_t stride = m.stride();
    constexpr std::size_t K = 8;

    RrefResult res;
    if (rows == 0 || cols == 0)
        return res;

    std::vector<word_t> table((std::size_t(1) << K) * stride);
    std::vector<std::size_t> pcol, prow;
    std::size_t r = 0;

    for (std::size_t c0 = 0; c0 < cols && r < rows; c0 += K) {
        const std::size_t kmax = std::min(K, cols - c0);
        const std::size_t w0 = c0 / WORD_BITS;
        pcol.clear();
        prow.clear();
        std::size_t rr = r;

        for (std::size_t j = 0; j < kmax; ++j) {
            const std::size_t c = c0 + j;
            std::size_t found = rows;
            for (std::size_t i = rr; i < rows; ++i) {
                for (std::size_t t = 0; t < pcol.size(); ++t)
                    if (m.get(i, pcol[t]))
                        m.row_xor(i, prow[t], w0);
                if (m.get(i, c)) {
                    found = i;
                    break;
                }
            }
            if (found == rows)
                continue;
            m.swap_rows(found, rr);
            pcol.push_back(c);
            prow.push_back(rr);
            ++rr;
        }
        if (pcol.empty())
            continue;

        const std::size_t np = pcol.size();
        for (std::size_t a = 0; a < np; ++a)
            for (std::size_t b = 0; b < np; ++b)
                if (b != a && m.get(prow[b], pcol[a]))
                    m.row_xor(prow[b], prow[a], w0);

        std::fill(table.begin() + w0, table.begin() + stride, word_t(0));
        for (std::size_t idx = 1; idx < (std::size_t(1) << np); ++idx) {
            const std::size_t low = std::size_t(std::countr_zero(idx));
            const word_t* base = table.data() + (idx & (idx - 1)) * stride;
            const word_t* piv = m.row_ptr(prow[low]);
            word_t* dst = table.data() + idx * stride;
            for (std::size_t k = w0; k < stride; ++k)
                dst[k] = base[k] ^ piv[k];
        }

        std::size_t gw[K], gs[K];
        for (std::size_t t = 0; t < np; ++t) {
            gw[t] = pcol[t] / WORD_BITS;
            gs[t] = pcol[t] % WORD_BITS;
        }

#pragma omp parallel for schedule(static)
        for (long long ii = 0; ii < (long long)rows; ++ii) {
            const std::size_t i = std::size_t(ii);
            if (i >= r && i < rr)
                continue;
            word_t* wrow = m.row_ptr(i);
            std::size_t idx = 0;
            for (std::size_t t = 0; t < np; ++t)
                idx |= std::size_t((wrow[gw[t]] >> gs[t]) & 1u) << t;
            if (!idx)
                continue;
            const word_t* src = table.data() + idx * stride;
            for (std::size_t k = w0; k < stride; ++k)
                wrow[k] ^= src[k];
        }

        res.pivots.insert(res.pivots.end(), pcol.begin(), pcol.end());
        r = rr;
    }
    res.rank = r;
    return res;
}

RrefResult rref_in_place(BitMatrix& m, Elim method) {
    if (method == Elim::plain)
        return ref::rref_in_place(m);
    return rref_table(m);
}

std::size_t rank(const BitMatrix& m, Elim method) {
    BitMatrix c = m;
    return rref_in_place(c, method).rank;
}

std::vector<BitVector> solve_homogeneous(const BitMatrix& m, Elim method) {
    BitMatrix r = m;
    RrefResult info = rref_in_place(r, method);
    const std::size_t n = m.cols();

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : info.pivots)
        is_pivot[c] = true;

    std::size_t dim = n - info.rank;
    if (dim == 0)
        return {};

    // one generator per free column f: 1 at f, R[i][f] at pivot column i
    BitMatrix basis(dim, n);
    std::size_t b = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        basis.set(b, f, true);
        for (std::size_t i = 0; i < info.rank; ++i)
            if (r.get(i, f))
                basis.set(b, info.pivots[i], true);
        ++b;
    }

    // reduce the generators themselves so the basis is canonical
    rref_in_place(basis, method);
    std::vector<BitVector> out;
    out.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i)
        out.push_back(basis.row(i));
    return out;
}

BitMatrix invert(const BitMatrix& m, Elim method) {
    if (m.rows() != m.cols())
        throw DimensionError("invert: matrix not square");
    const std::size_t n = m.rows();
    BitMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (m.get(i, j))
                aug.set(i, j, true);
        aug.set(i, n + i, true);
    }
    RrefResult info = rref_in_place(aug, method);
    // [m | I] always has row rank n; m is invertible iff every pivot lands
    // in the left half, i.e. pivot columns are exactly 0..n-1
    std::size_t left_rank = 0;
    for (std::size_t c : info.pivots)
        if (c < n)
            ++left_rank;
    if (left_rank != n)
        throw SingularError("invert: matrix is singular (rank " + std::to_string(left_rank) +
                            " of " + std::to_string(n) + ")");
    BitMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (aug.get(i, n + j))
                inv.set(i, j, true);
    return inv;
}

} // namespace hsum::gf2
