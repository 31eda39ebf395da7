#pragma once

// Finds every practical hidden sum linearized by a block upper triangular
// map lambda = [[L1, L2],[0, L3]]: the generator blocks B_{e_i} must satisfy
// B_{e_i} L3 = L1 (sum_j c_j B_{e_j}) with c = row i of L1, plus symmetry and
// zero diagonal. These are homogeneous F_2 constraints on the n^2*d block
// entries, so the solution set is the kernel of one binary matrix.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hiddensum/gf2.hpp"
#include "hiddensum/hidden_sum.hpp"

namespace hsum {

struct BlockLinearMap {
    unsigned n = 0, d = 0;
    gf2::BitMatrix lambda1; // n x n, invertible
    gf2::BitMatrix lambda2; // n x d, unconstrained
    gf2::BitMatrix lambda3; // d x d, invertible

    BlockLinearMap() = default;
    BlockLinearMap(unsigned n_, unsigned d_, gf2::BitMatrix lambda1_,
                   gf2::BitMatrix lambda2_, gf2::BitMatrix lambda3_);

    static BlockLinearMap identity(unsigned n, unsigned d);

    // the full (n+d) x (n+d) matrix [[L1, L2],[0, L3]]
    gf2::BitMatrix assemble() const;
};

struct LinearSystem {
    unsigned n = 0, d = 0;
    gf2::BitMatrix constraints; // (n^2*d + C(n+1,2)*d) rows, n^2*d columns
};

// column of block entry (r,c) of B_{e_i}; i, r in 1..n, c in 1..d
std::size_t var_index(unsigned n, unsigned d, unsigned i, unsigned r, unsigned c);

struct SolutionBasis {
    unsigned n = 0, d = 0;
    std::vector<gf2::BitVector> basis; // reduced echelon rows, length n^2*d each

    std::size_t dimension() const { return basis.size(); }
    std::size_t point_length() const { return std::size_t(n) * n * d; }
};

LinearSystem build_system(const BlockLinearMap& lam);
SolutionBasis solve(const LinearSystem& sys);

bool in_kernel(const SolutionBasis& sol, const gf2::BitVector& point);

// point -> generator blocks; rejects points outside the kernel
HiddenSum decode(const SolutionBasis& sol, const gf2::BitVector& point);
// vectorization of the blocks, inverse of decode
gf2::BitVector encode(const HiddenSum& hs);

// uniform over kernel points; with full_rank_only, rejection-sample on
// rank(bfrak) = n with a retry cap of 1000*count
std::vector<HiddenSum> sample_solutions(const SolutionBasis& sol, std::size_t count,
                                        std::uint64_t seed, bool full_rank_only);

struct FullRankEstimate {
    std::size_t trials = 0, hits = 0;
    double fraction = 0.0;
    double lo = 0.0, hi = 0.0; // Wilson 95% interval
};

FullRankEstimate estimate_full_rank_fraction(const SolutionBasis& sol,
                                             std::size_t trials, std::uint64_t seed);

// all i with image[i-1] = i, ascending, 1-indexed
std::vector<std::size_t> fixed_coordinates(const std::vector<std::size_t>& image);

// conjugate lam by pi and split into blocks; errors when the lower-left
// d x n block is nonzero or a diagonal block is singular
BlockLinearMap block_form(const gf2::BitMatrix& lam, const gf2::BitMatrix& pi,
                          unsigned n, unsigned d);

struct LinearizeResult {
    BlockLinearMap blocks;
    SolutionBasis sol;
    gf2::BitMatrix pi; // conjugator, kept so callers can transport back
    double seconds = 0.0;
};

// block_form -> build_system -> solve, wall clock recorded
LinearizeResult linearize(const gf2::BitMatrix& lam, const gf2::BitMatrix& pi,
                          unsigned n, unsigned d);

// all 2^l kernel points; refuses l > 24
std::vector<gf2::BitVector> enumerate_kernel(const SolutionBasis& sol);
// exact number of kernel points with full-rank grid; refuses l > 24
std::size_t count_full_rank_solutions(const SolutionBasis& sol);

// "kernel <l> <n> <d>" then l lines of n^2*d characters in {0,1}
SolutionBasis read_basis(std::istream& in);
SolutionBasis read_basis_file(const std::string& path);
void write_basis(std::ostream& out, const SolutionBasis& sol);
void write_basis_file(const std::string& path, const SolutionBasis& sol);

} // namespace hsum
