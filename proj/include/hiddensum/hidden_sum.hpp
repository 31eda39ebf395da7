#pragma once

// Alternative vector-space sums on (F_2)^N stored in canonical triangular
// form: the linear part of translation-by-y is kappa_y = [[I_n, B_y],[0, I_d]]
// with B_y = sum of y_i * B_{e_i}, and x (*) a = x * kappa_a + a. The n
// generator blocks B_{e_i} (each n x d) determine everything.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hiddensum/gf2.hpp"

namespace hsum {

struct HiddenSum {
    unsigned n = 0, d = 0;
    std::vector<gf2::BitMatrix> blocks; // blocks[i] = B_{e_{i+1}}, n rows, d cols

    HiddenSum() = default;
    HiddenSum(unsigned n_, unsigned d_, std::vector<gf2::BitMatrix> blocks_);

    unsigned dim() const { return n + d; } // ambient dimension N
};

// n x n grid over F_{2^d}: entry (i,j) = row j of B_{e_i} as a d-bit word,
// bit k-1 = coefficient of alpha^{k-1}
struct BFrak {
    unsigned n = 0, d = 0;
    std::vector<std::uint64_t> grid; // row-major, n*n entries
};

// coefficients alpha_1..alpha_N with alpha_1 e_1 (*) ... (*) alpha_N e_N = v
using CoeffVector = gf2::BitVector;

struct ValidationReport {
    bool symmetric = false;       // row i of B_{e_j} = row j of B_{e_i}
    bool zero_diagonal = false;   // row i of B_{e_i} = 0
    bool nontrivial = false;      // some block nonzero, i.e. (*) differs from +
    unsigned bfrak_rank = 0;      // rank over F_2 of the n x (n*d) expansion
    unsigned dim_u = 0;           // d + (n - bfrak_rank)
    bool is_practical_hidden_sum = false; // symmetric && zero_diagonal && nontrivial
    bool exact_dim_u = false;     // bfrak_rank == n, i.e. dim U = d exactly
};

gf2::BitMatrix kappa(const HiddenSum& hs, const gf2::BitVector& y);
gf2::BitVector circ_add(const HiddenSum& hs, const gf2::BitVector& x, const gf2::BitVector& a);

ValidationReport validate(const HiddenSum& hs);
unsigned dim_u(const HiddenSum& hs);

BFrak bfrak(const HiddenSum& hs);
HiddenSum from_bfrak(const BFrak& b);
// the n x (n*d) matrix over F_2 whose row i concatenates the cells of grid row i
gf2::BitMatrix bfrak_expansion(const HiddenSum& hs);

CoeffVector decompose(const HiddenSum& hs, const gf2::BitVector& v);
gf2::BitVector recompose(const HiddenSum& hs, const CoeffVector& c);

// invertible g with u_basis[i] * g = e_{N-k+i} (k = basis size); completion
// greedy over standard vectors in ascending index so canonical input gives I
gf2::BitMatrix canonicalizing_map(const std::vector<gf2::BitVector>& u_basis, unsigned N);

// rejection-sampled operation with full-rank grid; deterministic per seed
HiddenSum random_hidden_sum(unsigned n, unsigned d, std::uint64_t seed);

// "hiddensum <n> <d>" then n blocks of n lines x d chars, blank line between blocks
HiddenSum read_hidden_sum(std::istream& in);
HiddenSum read_hidden_sum_file(const std::string& path);
void write_hidden_sum(std::ostream& out, const HiddenSum& hs);
void write_hidden_sum_file(const std::string& path, const HiddenSum& hs);

// grid as n lines of n integers in [0, 2^d - 1]
std::string format_bfrak_compact(const HiddenSum& hs);

} // namespace hsum
