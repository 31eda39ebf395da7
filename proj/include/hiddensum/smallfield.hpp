#pragma once

// Arithmetic in F_{2^d} for small d, elements as d-bit words in the
// polynomial basis: bit j-1 is the coefficient of alpha^{j-1}, so the
// element b_1 + b_2*alpha + ... prints compactly as an integer.

#include <cstdint>
#include <vector>

#include "hiddensum/errors.hpp"

namespace hsum::f2e {

struct Field {
    unsigned d;
    std::uint32_t poly; // reduction polynomial including the x^d term
};

// fixed irreducible polynomials, d in 1..8
Field field_for(unsigned d);

std::uint32_t mul(const Field& f, std::uint32_t a, std::uint32_t b);
std::uint32_t inv(const Field& f, std::uint32_t a);

// rank over F_{2^d} of an n x n grid, row-major
unsigned grid_rank(const Field& f, std::vector<std::uint32_t> grid, unsigned n);

} // namespace hsum::f2e
