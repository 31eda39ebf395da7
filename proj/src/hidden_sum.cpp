#include "hiddensum/hidden_sum.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hsum {

using gf2::BitMatrix;
using gf2::BitVector;
using gf2::word_t;
using gf2::WORD_BITS;

HiddenSum::HiddenSum(unsigned n_, unsigned d_, std::vector<BitMatrix> blocks_)
    : n(n_), d(d_), blocks(std::move(blocks_)) {
    if (n < 2 || d < 1)
        throw DimensionError("hidden sum: need n >= 2 and d >= 1");
    if (d > 512)
        throw DimensionError("hidden sum: d > 512 not supported");
    if (blocks.size() != n)
        throw DimensionError("hidden sum: expected " + std::to_string(n) + " blocks");
    for (const BitMatrix& b : blocks)
        if (b.rows() != n || b.cols() != d)
            throw DimensionError("hidden sum: every block must be n x d");
}

gf2::BitMatrix kappa(const HiddenSum& hs, const BitVector& y) {
    const unsigned N = hs.dim();
    if (y.size() != N)
        throw DimensionError("kappa: vector length != n + d");
    BitMatrix by(hs.n, hs.d);
    for (unsigned i = 0; i < hs.n; ++i) {
        if (!y.get(i))
            continue;
        for (unsigned r = 0; r < hs.n; ++r) {
            word_t* dst = by.row_ptr(r);
            const word_t* src = hs.blocks[i].row_ptr(r);
            for (std::size_t k = 0; k < by.stride(); ++k)
                dst[k] ^= src[k];
        }
    }
    BitMatrix m = BitMatrix::identity(N);
    for (unsigned r = 0; r < hs.n; ++r)
        for (unsigned c = 0; c < hs.d; ++c)
            if (by.get(r, c))
                m.set(r, hs.n + c, true);
    return m;
}

gf2::BitVector circ_add(const HiddenSum& hs, const BitVector& x, const BitVector& a) {
    const unsigned N = hs.dim();
    if (x.size() != N || a.size() != N)
        throw DimensionError("circ_add: vector length != n + d");
    BitVector out = x;
    out ^= a;

    // tail correction x_head * B_{a_head}: for every i with a_i = 1 and every
    // r with x_r = 1, accumulate row r of B_{e_i}
    const std::size_t stride = hs.blocks[0].stride();
    std::array<word_t, 8> acc{};
    const std::size_t head_words = hs.n / WORD_BITS;
    const word_t head_tail_mask =
        (hs.n % WORD_BITS) ? ((word_t(1) << (hs.n % WORD_BITS)) - 1) : 0;

    for (std::size_t ka = 0; ka <= head_words && ka < a.words().size(); ++ka) {
        word_t wa = a.words()[ka];
        if (ka == head_words)
            wa &= head_tail_mask;
        while (wa) {
            const unsigned i = unsigned(ka * WORD_BITS) + unsigned(std::countr_zero(wa));
            wa &= wa - 1;
            const BitMatrix& blk = hs.blocks[i];
            for (std::size_t kx = 0; kx <= head_words && kx < x.words().size(); ++kx) {
                word_t wx = x.words()[kx];
                if (kx == head_words)
                    wx &= head_tail_mask;
                while (wx) {
                    const unsigned r = unsigned(kx * WORD_BITS) + unsigned(std::countr_zero(wx));
                    wx &= wx - 1;
                    const word_t* src = blk.row_ptr(r);
                    for (std::size_t k = 0; k < stride; ++k)
                        acc[k] ^= src[k];
                }
            }
        }
    }

    // xor acc, shifted left by n bits, into out
    const std::size_t q = hs.n / WORD_BITS;
    const unsigned r = hs.n % WORD_BITS;
    for (std::size_t k = 0; k < stride; ++k) {
        if (!acc[k])
            continue;
        out.words()[q + k] ^= acc[k] << r;
        if (r && q + k + 1 < out.words().size())
            out.words()[q + k + 1] ^= acc[k] >> (WORD_BITS - r);
    }
    return out;
}

ValidationReport validate(const HiddenSum& hs) {
    ValidationReport rep;
    rep.symmetric = true;
    rep.zero_diagonal = true;
    rep.nontrivial = false;

    for (unsigned i = 0; i < hs.n; ++i) {
        for (unsigned j = 0; j < hs.n; ++j) {
            if (hs.blocks[j].row(i) != hs.blocks[i].row(j)) {
                rep.symmetric = false;
                break;
            }
        }
        if (!hs.blocks[i].row_is_zero(i))
            rep.zero_diagonal = false;
        if (!rep.nontrivial)
            for (unsigned r = 0; r < hs.n; ++r)
                if (!hs.blocks[i].row_is_zero(r)) {
                    rep.nontrivial = true;
                    break;
                }
    }

    rep.bfrak_rank = unsigned(gf2::rank(bfrak_expansion(hs)));
    rep.dim_u = hs.d + (hs.n - rep.bfrak_rank);
    rep.is_practical_hidden_sum = rep.symmetric && rep.zero_diagonal && rep.nontrivial;
    rep.exact_dim_u = rep.bfrak_rank == hs.n;
    return rep;
}

unsigned dim_u(const HiddenSum& hs) {
    return hs.d + (hs.n - unsigned(gf2::rank(bfrak_expansion(hs))));
}

BFrak bfrak(const HiddenSum& hs) {
    if (hs.d > 64)
        throw DimensionError("bfrak: grid words need d <= 64");
    BFrak b;
    b.n = hs.n;
    b.d = hs.d;
    b.grid.assign(std::size_t(hs.n) * hs.n, 0);
    for (unsigned i = 0; i < hs.n; ++i)
        for (unsigned j = 0; j < hs.n; ++j)
            b.grid[std::size_t(i) * hs.n + j] = hs.blocks[i].row_ptr(j)[0];
    return b;
}

HiddenSum from_bfrak(const BFrak& b) {
    std::vector<BitMatrix> blocks(b.n, BitMatrix(b.n, b.d));
    for (unsigned i = 0; i < b.n; ++i)
        for (unsigned j = 0; j < b.n; ++j) {
            const std::uint64_t w = b.grid[std::size_t(i) * b.n + j];
            for (unsigned c = 0; c < b.d; ++c)
                if ((w >> c) & 1)
                    blocks[i].set(j, c, true);
        }
    return HiddenSum(b.n, b.d, std::move(blocks));
}

gf2::BitMatrix bfrak_expansion(const HiddenSum& hs) {
    BitMatrix m(hs.n, std::size_t(hs.n) * hs.d);
    for (unsigned i = 0; i < hs.n; ++i)
        for (unsigned j = 0; j < hs.n; ++j)
            for (unsigned c = 0; c < hs.d; ++c)
                if (hs.blocks[i].get(j, c))
                    m.set(i, std::size_t(j) * hs.d + c, true);
    return m;
}

CoeffVector decompose(const HiddenSum& hs, const BitVector& v) {
    const unsigned N = hs.dim();
    if (v.size() != N)
        throw DimensionError("decompose: vector length != n + d");
    BitVector vp = v;
    for (unsigned i = 0; i < hs.n; ++i)
        if (v.get(i))
            vp = circ_add(hs, vp, BitVector::unit(N, i));
    CoeffVector c(N);
    for (unsigned i = 0; i < hs.n; ++i)
        c.set(i, v.get(i));
    for (unsigned i = hs.n; i < N; ++i)
        c.set(i, vp.get(i));
    return c;
}

gf2::BitVector recompose(const HiddenSum& hs, const CoeffVector& c) {
    const unsigned N = hs.dim();
    if (c.size() != N)
        throw DimensionError("recompose: vector length != n + d");
    BitVector acc(N);
    for (unsigned i = 0; i < N; ++i)
        if (c.get(i))
            acc = circ_add(hs, acc, BitVector::unit(N, i));
    return acc;
}

gf2::BitMatrix canonicalizing_map(const std::vector<BitVector>& u_basis, unsigned N) {
    const std::size_t k = u_basis.size();
    if (k == 0 || k > N - 1)
        throw DimensionError("canonicalizing_map: basis size must be in 1..N-1");
    for (const BitVector& v : u_basis)
        if (v.size() != N)
            throw DimensionError("canonicalizing_map: vector length != N");
    {
        BitMatrix chk = BitMatrix::from_rows(u_basis);
        if (gf2::rank(chk) != k)
            throw DimensionError("canonicalizing_map: input vectors are dependent");
    }

    // complete greedily with standard vectors e_1, e_2, ... keeping independence
    std::vector<BitVector> rows;
    rows.reserve(N);
    for (unsigned j = 0; j < N && rows.size() < N - k; ++j) {
        rows.push_back(BitVector::unit(N, j));
        std::vector<BitVector> all = rows;
        all.insert(all.end(), u_basis.begin(), u_basis.end());
        if (gf2::rank(BitMatrix::from_rows(all)) != all.size())
            rows.pop_back();
    }
    rows.insert(rows.end(), u_basis.begin(), u_basis.end());
    return gf2::invert(BitMatrix::from_rows(rows));
}

HiddenSum random_hidden_sum(unsigned n, unsigned d, std::uint64_t seed) {
    if (n < 2 || d < 1)
        throw DimensionError("random_hidden_sum: need n >= 2 and d >= 1");
    if (d == 1 && n % 2 == 1)
        throw EmptyFamilyError("no such operation: the family is empty for d = 1 with n odd");
    if (d > 64)
        throw DimensionError("random_hidden_sum: d <= 64 required");

    std::mt19937_64 rng(seed);
    const std::uint64_t mask = (d == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << d) - 1);
    BFrak b;
    b.n = n;
    b.d = d;
    b.grid.assign(std::size_t(n) * n, 0);

    for (int tries = 0; tries < 1000000; ++tries) {
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i + 1; j < n; ++j) {
                const std::uint64_t w = rng() & mask;
                b.grid[std::size_t(i) * n + j] = w;
                b.grid[std::size_t(j) * n + i] = w;
            }
        HiddenSum hs = from_bfrak(b);
        if (gf2::rank(bfrak_expansion(hs)) == n)
            return hs;
    }
    throw Error("random_hidden_sum: rejection sampling failed to find a full-rank grid");
}

HiddenSum read_hidden_sum(std::istream& in) {
    std::string header;
    if (!std::getline(in, header))
        throw ParseError("hidden sum file: missing header");
    std::istringstream hsline(header);
    std::string tag;
    long long n = -1, d = -1;
    hsline >> tag >> n >> d;
    if (tag != "hiddensum" || hsline.fail() || n < 2 || d < 1)
        throw ParseError("hidden sum file: header must be 'hiddensum <n> <d>' with n >= 2, d >= 1");

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        if (line.empty())
            continue;
        lines.push_back(line);
    }
    if (lines.size() != std::size_t(n) * std::size_t(n))
        throw ParseError("hidden sum file: expected " + std::to_string(n * n) +
                         " block rows, got " + std::to_string(lines.size()));

    std::vector<BitMatrix> blocks;
    blocks.reserve(std::size_t(n));
    for (long long i = 0; i < n; ++i) {
        std::vector<std::string> rows(lines.begin() + i * n, lines.begin() + (i + 1) * n);
        for (const std::string& rstr : rows)
            if (rstr.size() != std::size_t(d))
                throw ParseError("hidden sum file: block row has wrong length");
        blocks.push_back(BitMatrix::from_strings(rows));
    }
    return HiddenSum(unsigned(n), unsigned(d), std::move(blocks));
}

HiddenSum read_hidden_sum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    return read_hidden_sum(in);
}

void write_hidden_sum(std::ostream& out, const HiddenSum& hs) {
    out << "hiddensum " << hs.n << ' ' << hs.d << '\n';
    for (unsigned i = 0; i < hs.n; ++i) {
        if (i)
            out << '\n';
        for (unsigned r = 0; r < hs.n; ++r)
            out << hs.blocks[i].row(r).to_string() << '\n';
    }
}

void write_hidden_sum_file(const std::string& path, const HiddenSum& hs) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    write_hidden_sum(out, hs);
}

std::string format_bfrak_compact(const HiddenSum& hs) {
    BFrak b = bfrak(hs);
    std::ostringstream out;
    for (unsigned i = 0; i < b.n; ++i) {
        for (unsigned j = 0; j < b.n; ++j) {
            if (j)
                out << ' ';
            out << b.grid[std::size_t(i) * b.n + j];
        }
        out << '\n';
    }
    return out.str();
}

} // namespace hsum
