#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "hiddensum/attack.hpp"
#include "hiddensum/tbcipher.hpp"

using namespace hsum;

namespace {

gf2::BitVector vec(std::size_t len, std::uint64_t bits) {
    gf2::BitVector v(len);
    for (std::size_t i = 0; i < len; ++i)
        if ((bits >> i) & 1u)
            v.set(i, true);
    return v;
}

Oracle counted(const CircAffineOracle& oracle) {
    return [&oracle](const gf2::BitVector& x) { return oracle(x); };
}

} // namespace

TEST_CASE("reconstruction reads the box N+1 times and recovers the truth") {
    auto hs = random_hidden_sum(4, 2, 101);
    auto oracle = random_circ_affine_map(hs, 102);
    auto m = reconstruct(counted(oracle), hs);
    CHECK(oracle.query_count == 7);
    CHECK(m.translation == oracle.translation);
    CHECK(m.basis_images == oracle.truth_basis_images());
}

TEST_CASE("identity and translation boxes reconstruct trivially") {
    auto hs = random_hidden_sum(3, 2, 111);
    Oracle identity = [](const gf2::BitVector& x) { return x; };
    auto mid = reconstruct(identity, hs);
    CHECK(mid.translation == gf2::BitVector(5));
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(mid.basis_images[i] == gf2::BitVector::unit(5, i));
    for (std::uint64_t xb = 0; xb < 32; ++xb)
        CHECK(predict(mid, vec(5, xb)) == vec(5, xb));

    auto a = vec(5, 0b10110);
    Oracle shift = [&](const gf2::BitVector& x) { return circ_add(hs, x, a); };
    auto mshift = reconstruct(shift, hs);
    CHECK(mshift.translation == a);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(mshift.basis_images[i] == gf2::BitVector::unit(5, i));
    for (std::uint64_t xb = 0; xb < 32; ++xb)
        CHECK(predict(mshift, vec(5, xb)) == circ_add(hs, vec(5, xb), a));
}

TEST_CASE("prediction on a basis vector is its queried image") {
    auto hs = random_hidden_sum(5, 3, 121);
    auto oracle = random_circ_affine_map(hs, 122);
    auto m = reconstruct(counted(oracle), hs);
    for (std::size_t j = 0; j < 8; ++j) {
        auto e = gf2::BitVector::unit(8, j);
        CHECK(predict(m, e) == oracle(e));
    }
    CHECK_THROWS_AS(predict(m, gf2::BitVector(7)), DimensionError);
}

TEST_CASE("fifty seeded boxes are predicted exactly") {
    struct Shape {
        unsigned n, d;
    };
    const std::vector<Shape> shapes = {{2, 1}, {3, 2}, {4, 2}, {5, 3}, {6, 4},
                                       {4, 4}, {8, 3}, {8, 4}, {6, 2}, {2, 6}};
    for (std::uint64_t k = 0; k < 50; ++k) {
        auto [n, d] = shapes[k % shapes.size()];
        auto hs = random_hidden_sum(n, d, 1000 + k);
        auto oracle = random_circ_affine_map(hs, 2000 + k);
        auto m = reconstruct(counted(oracle), hs);
        CHECK(oracle.query_count == hs.dim() + 1);
        auto report = verify_reconstruction(counted(oracle), m, VerifyMode::exhaustive);
        CHECK(report.checked == (std::size_t(1) << hs.dim()));
        CHECK(report.mismatches == 0);
        CHECK(report.agreement == 1.0);
        CHECK_FALSE(report.counterexample.has_value());
    }
}

TEST_CASE("a wide box is predicted on sampled inputs") {
    auto hs = random_hidden_sum(60, 4, 131);
    auto oracle = random_circ_affine_map(hs, 132);
    auto m = reconstruct(counted(oracle), hs);
    CHECK(oracle.query_count == 65);
    auto report = verify_reconstruction(counted(oracle), m, VerifyMode::sampled, 133, 2000);
    CHECK(report.checked == 2000);
    CHECK(report.agreement == 1.0);
}

TEST_CASE("reconstruction is query-order independent") {
    auto hs = random_hidden_sum(4, 3, 141);
    auto oracle = random_circ_affine_map(hs, 142);
    auto direct = reconstruct(counted(oracle), hs);

    // same N+1 queries issued in a scrambled order
    std::vector<std::size_t> order = {5, 2, 6, 0, 4, 1, 3};
    std::vector<gf2::BitVector> images(7);
    std::vector<gf2::BitVector> raw(7);
    for (std::size_t i : order)
        raw[i] = oracle(gf2::BitVector::unit(7, i));
    auto c = oracle(gf2::BitVector(7));
    for (std::size_t i = 0; i < 7; ++i)
        images[i] = circ_add(hs, raw[i], c);

    CHECK(direct.translation == c);
    CHECK(direct.basis_images == images);
}

TEST_CASE("verification reports planted defects") {
    auto hs = random_hidden_sum(3, 2, 151);
    auto oracle = random_circ_affine_map(hs, 152);
    auto m = reconstruct(counted(oracle), hs);

    auto planted = vec(5, 0b01101);
    Oracle defective = [&](const gf2::BitVector& x) {
        auto y = oracle(x);
        if (x == planted)
            y.set(0, !y.get(0));
        return y;
    };
    auto report = verify_reconstruction(defective, m, VerifyMode::exhaustive);
    CHECK(report.mismatches == 1);
    CHECK(report.agreement == doctest::Approx(31.0 / 32.0));
    REQUIRE(report.counterexample.has_value());
    CHECK(*report.counterexample == planted);

    // a random permutation is nowhere near affine for this sum
    std::vector<std::uint64_t> table(32);
    for (std::uint64_t v = 0; v < 32; ++v)
        table[v] = v;
    std::mt19937_64 rng(153);
    std::shuffle(table.begin(), table.end(), rng);
    Oracle scrambled = [&](const gf2::BitVector& x) {
        return vec(5, table[x.words()[0]]);
    };
    auto mState = reconstruct(scrambled, hs);
    auto sreport = verify_reconstruction(scrambled, mState, VerifyMode::exhaustive);
    CHECK(sreport.agreement < 0.5);
    CHECK(sreport.counterexample.has_value());

    auto sampled = verify_reconstruction(counted(oracle), m, VerifyMode::sampled, 154, 500);
    CHECK(sampled.checked == 500);
    CHECK(sampled.mismatches == 0);
    auto sampled2 = verify_reconstruction(counted(oracle), m, VerifyMode::sampled, 154, 500);
    CHECK(sampled2.agreement == sampled.agreement);
}

TEST_CASE("exhaustive verification refuses wide inputs") {
    auto hs = random_hidden_sum(20, 4, 161);
    auto oracle = random_circ_affine_map(hs, 162);
    auto m = reconstruct(counted(oracle), hs);
    CHECK_THROWS_AS(verify_reconstruction(counted(oracle), m, VerifyMode::exhaustive),
                    BudgetError);
}
