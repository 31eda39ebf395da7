#pragma once

// Reconstruction of a black-box map that is affine with respect to a known
// alternative sum: N+1 queries pin down the translation phi(0) and the
// images of the basis, after which every value follows from coordinate
// decomposition. The box is never opened, only evaluated.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hiddensum/gf2.hpp"
#include "hiddensum/hidden_sum.hpp"

namespace hsum {

using Oracle = std::function<gf2::BitVector(const gf2::BitVector&)>;

struct CircAffineMap {
    HiddenSum hs;
    std::vector<gf2::BitVector> basis_images; // L(e_i) for i = 1..N
    gf2::BitVector translation;               // c = phi(0)
};

// exactly N+1 queries: phi(0), then phi(e_i); L(e_i) = phi(e_i) (*) c
// because every element is its own (*)-inverse
CircAffineMap reconstruct(const Oracle& oracle, const HiddenSum& hs);

// fold of L(e_i) over the set coordinates of decompose(x), then (*) c
gf2::BitVector predict(const CircAffineMap& m, const gf2::BitVector& x);

enum class VerifyMode { exhaustive, sampled };

struct VerifyReport {
    std::size_t checked = 0;
    std::size_t mismatches = 0;
    double agreement = 0.0;
    std::optional<gf2::BitVector> counterexample; // first disagreeing input
};

// exhaustive mode walks all 2^N inputs (refused above N = 20); sampled mode
// draws the requested number of inputs from the seed
VerifyReport verify_reconstruction(const Oracle& oracle, const CircAffineMap& m,
                                   VerifyMode mode, std::uint64_t seed = 0,
                                   std::size_t samples = 10000);

} // namespace hsum
