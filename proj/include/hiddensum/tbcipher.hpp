#pragma once

// Translation-based cipher building blocks: round function = bricklayer of
// parallel S-boxes, then an invertible mixing layer, then round-key XOR.
// Includes the 64-bit bit-permutation mixing layer studied in the kernel
// search, the wall-invariance checker, and a black-box oracle that is affine
// with respect to a hidden sum.

#include <cstdint>
#include <vector>

#include "hiddensum/gf2.hpp"
#include "hiddensum/hidden_sum.hpp"

namespace hsum {

using SboxTable = std::vector<std::uint32_t>; // 2^m entries, a bijection

struct TbRound {
    std::vector<SboxTable> sboxes; // one per brick
    gf2::BitMatrix lambda;         // N x N, invertible
    gf2::BitVector key;            // length N
};

struct TbCipherSpec {
    unsigned b = 0; // brick count
    unsigned m = 0; // brick width
    std::vector<TbRound> rounds;

    unsigned dim() const { return m * b; }
};

void validate_spec(const TbCipherSpec& spec);

// bit k of a brick's S-box index is the brick's k-th coordinate
gf2::BitVector encrypt(const TbCipherSpec& spec, const gf2::BitVector& x);

// 1-indexed images of the 64-bit permutation, row-major from the
// straight-through wiring of the 16 4-bit bricks
std::vector<std::size_t> present_mixing_images();
gf2::BitMatrix present_mixing_layer();
// the involution (1 61)(22 62)(43 63) moving the fixed coordinates last
gf2::BitMatrix present_pi();

struct WallReport {
    bool proper = false;
    std::size_t walls_checked = 0;
    std::vector<unsigned> witness; // 1-indexed bricks of an invariant wall
};

// scans all 2^b - 2 walls in ascending mask order, stopping at the first
// invariant one; refuses b > 24
WallReport is_proper_mixing_layer(const gf2::BitMatrix& lam, unsigned b, unsigned m);

// phi(x) = L(x) (*) c with L invertible and (*)-linear; evaluation is the
// black box, the matrix and translation stay inside as ground truth
struct CircAffineOracle {
    HiddenSum hs;
    gf2::BitMatrix coeff_matrix;  // action on (*)-coordinates, invertible
    gf2::BitVector translation;   // c = phi(0)
    mutable std::size_t query_count = 0;

    gf2::BitVector operator()(const gf2::BitVector& x) const;
    // L(e_i) spelled out, for comparing a reconstruction against the truth
    std::vector<gf2::BitVector> truth_basis_images() const;
};

CircAffineOracle random_circ_affine_map(const HiddenSum& hs, std::uint64_t seed);

} // namespace hsum
