#include "hiddensum/smallfield.hpp"

namespace hsum::f2e {

Field field_for(unsigned d) {
    // x+1, x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1, x^6+x+1, x^7+x+1, x^8+x^4+x^3+x+1
    static const std::uint32_t polys[] = {0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b};
    if (d < 1 || d > 8)
        throw DimensionError("field_for: only d in 1..8 supported");
    return Field{d, polys[d - 1]};
}

std::uint32_t mul(const Field& f, std::uint32_t a, std::uint32_t b) {
    std::uint32_t r = 0;
    while (b) {
        if (b & 1)
            r ^= a;
        b >>= 1;
        a <<= 1;
        if (a >> f.d)
            a ^= f.poly;
    }
    return r;
}

std::uint32_t inv(const Field& f, std::uint32_t a) {
    if (a == 0)
        throw SingularError("inv: zero has no inverse");
    // a^(2^d - 2) by square and multiply
    std::uint32_t r = 1, base = a;
    std::uint32_t e = (std::uint32_t(1) << f.d) - 2;
    while (e) {
        if (e & 1)
            r = mul(f, r, base);
        base = mul(f, base, base);
        e >>= 1;
    }
    return r;
}

unsigned grid_rank(const Field& f, std::vector<std::uint32_t> g, unsigned n) {
    unsigned rank = 0;
    for (unsigned c = 0; c < n && rank < n; ++c) {
        unsigned piv = n;
        for (unsigned i = rank; i < n; ++i) {
            if (g[i * n + c]) {
                piv = i;
                break;
            }
        }
        if (piv == n)
            continue;
        for (unsigned j = 0; j < n; ++j)
            std::swap(g[rank * n + j], g[piv * n + j]);
        std::uint32_t ia = inv(f, g[rank * n + c]);
        for (unsigned j = 0; j < n; ++j)
            g[rank * n + j] = mul(f, g[rank * n + j], ia);
        for (unsigned i = 0; i < n; ++i) {
            if (i != rank && g[i * n + c]) {
                std::uint32_t fac = g[i * n + c];
                for (unsigned j = 0; j < n; ++j)
                    g[i * n + j] ^= mul(f, fac, g[rank * n + j]);
            }
        }
        ++rank;
    }
    return rank;
}

} // namespace hsum::f2e
