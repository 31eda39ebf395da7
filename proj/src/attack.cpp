#include "hiddensum/attack.hpp"

#include <random>

namespace hsum {

CircAffineMap reconstruct(const Oracle& oracle, const HiddenSum& hs) {
    std::size_t N = hs.dim();
    CircAffineMap m;
    m.hs = hs;
    m.translation = oracle(gf2::BitVector(N));
    for (std::size_t i = 0; i < N; ++i)
        m.basis_images.push_back(
            circ_add(hs, oracle(gf2::BitVector::unit(N, i)), m.translation));
    return m;
}

gf2::BitVector predict(const CircAffineMap& m, const gf2::BitVector& x) {
    std::size_t N = m.hs.dim();
    if (x.size() != N)
        throw DimensionError("predict: input must have length N");
    CoeffVector alpha = decompose(m.hs, x);
    gf2::BitVector acc(N);
    for (std::size_t i = 0; i < N; ++i)
        if (alpha.get(i))
            acc = circ_add(m.hs, acc, m.basis_images[i]);
    return circ_add(m.hs, acc, m.translation);
}

VerifyReport verify_reconstruction(const Oracle& oracle, const CircAffineMap& m,
                                   VerifyMode mode, std::uint64_t seed,
                                   std::size_t samples) {
    std::size_t N = m.hs.dim();
    VerifyReport report;
    auto check = [&](const gf2::BitVector& x) {
        ++report.checked;
        if (predict(m, x) != oracle(x)) {
            ++report.mismatches;
            if (!report.counterexample)
                report.counterexample = x;
        }
    };
    if (mode == VerifyMode::exhaustive) {
        if (N > 20)
            throw BudgetError("exhaustive verification would walk 2^" +
                              std::to_string(N) + " inputs; refusing above 2^20");
        for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << N); ++bits) {
            gf2::BitVector x(N);
            if (bits)
                x.words()[0] = bits;
            check(x);
        }
    } else {
        std::mt19937_64 rng(seed);
        for (std::size_t k = 0; k < samples; ++k)
            check(gf2::random_vector(N, rng));
    }
    report.agreement =
        1.0 - double(report.mismatches) / double(report.checked ? report.checked : 1);
    return report;
}

} // namespace hsum
