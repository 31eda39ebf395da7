#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hiddensum/census.hpp"
#include "hiddensum/linearize.hpp"

using namespace hsum;

namespace {

gf2::BitVector vec(std::size_t len, std::uint64_t bits) {
    gf2::BitVector v(len);
    for (std::size_t i = 0; i < len; ++i)
        if ((bits >> i) & 1u)
            v.set(i, true);
    return v;
}

gf2::BitMatrix random_invertible(std::size_t n, std::mt19937_64& rng) {
    for (;;) {
        std::vector<gf2::BitVector> rows;
        for (std::size_t r = 0; r < n; ++r)
            rows.push_back(gf2::random_vector(n, rng));
        auto m = gf2::BitMatrix::from_rows(rows);
        if (gf2::rank(m) == n)
            return m;
    }
}

BlockLinearMap random_block_map(unsigned n, unsigned d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto l1 = random_invertible(n, rng);
    std::vector<gf2::BitVector> l2rows;
    for (unsigned r = 0; r < n; ++r)
        l2rows.push_back(gf2::random_vector(d, rng));
    auto l3 = random_invertible(d, rng);
    return {n, d, std::move(l1), gf2::BitMatrix::from_rows(l2rows), std::move(l3)};
}

// the 3x3 matrix swapping the two head coordinates (n = 2, d = 1)
gf2::BitMatrix swap_map() {
    return gf2::BitMatrix::from_strings({"010", "100", "001"});
}

BlockLinearMap swap_blocks() {
    return {2, 1, gf2::BitMatrix::from_strings({"01", "10"}), gf2::BitMatrix(2, 1),
            gf2::BitMatrix::identity(1)};
}

bool linearizes_exhaustive(const HiddenSum& hs, const gf2::BitMatrix& lam) {
    std::size_t N = hs.dim();
    std::vector<gf2::BitVector> vecs, imgs;
    for (std::uint64_t b = 0; b < (std::uint64_t(1) << N); ++b) {
        vecs.push_back(vec(N, b));
        imgs.push_back(gf2::mat_vec_mul(vecs.back(), lam));
    }
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << N); ++x)
        for (std::uint64_t y = x; y < (std::uint64_t(1) << N); ++y)
            if (gf2::mat_vec_mul(circ_add(hs, vecs[x], vecs[y]), lam) !=
                circ_add(hs, imgs[x], imgs[y]))
                return false;
    return true;
}

bool linearizes_sampled(const HiddenSum& hs, const gf2::BitMatrix& lam,
                        std::size_t pairs, std::mt19937_64& rng) {
    std::size_t N = hs.dim();
    for (std::size_t k = 0; k < pairs; ++k) {
        auto x = gf2::random_vector(N, rng);
        auto y = gf2::random_vector(N, rng);
        if (gf2::mat_vec_mul(circ_add(hs, x, y), lam) !=
            circ_add(hs, gf2::mat_vec_mul(x, lam), gf2::mat_vec_mul(y, lam)))
            return false;
    }
    return true;
}

// brute-force the symmetric zero-diagonal block tuples that commute with lam
// and insist they are exactly the kernel points
void converse_matches_kernel(unsigned n, unsigned d, const BlockLinearMap& bm) {
    auto lam = bm.assemble();
    std::size_t N = std::size_t(n) + d;
    std::vector<gf2::BitVector> vecs, imgs;
    for (std::uint64_t b = 0; b < (std::uint64_t(1) << N); ++b) {
        vecs.push_back(vec(N, b));
        imgs.push_back(gf2::mat_vec_mul(vecs.back(), lam));
    }
    auto sol = solve(build_system(bm));
    std::set<std::string> kernel;
    for (const auto& p : enumerate_kernel(sol))
        kernel.insert(p.to_string());

    unsigned cells = n * (n - 1) / 2;
    std::size_t found = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (cells * d)); ++mask) {
        BFrak b;
        b.n = n;
        b.d = d;
        b.grid.assign(std::size_t(n) * n, 0);
        unsigned cell = 0;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i + 1; j < n; ++j, ++cell) {
                std::uint64_t v = (mask >> (cell * d)) & ((std::uint64_t(1) << d) - 1);
                b.grid[std::size_t(i) * n + j] = v;
                b.grid[std::size_t(j) * n + i] = v;
            }
        auto hs = from_bfrak(b);
        bool lin = true;
        for (std::uint64_t x = 0; lin && x < (std::uint64_t(1) << N); ++x)
            for (std::uint64_t y = x; lin && y < (std::uint64_t(1) << N); ++y)
                if (gf2::mat_vec_mul(circ_add(hs, vecs[x], vecs[y]), lam) !=
                    circ_add(hs, imgs[x], imgs[y]))
                    lin = false;
        if (lin) {
            ++found;
            CHECK(kernel.count(encode(hs).to_string()) == 1);
        }
    }
    CHECK(found == kernel.size());
}

} // namespace

TEST_CASE("variable indexing is the row-major vectorization") {
    CHECK(var_index(3, 2, 1, 1, 1) == 0);
    CHECK(var_index(3, 2, 1, 1, 2) == 1);
    CHECK(var_index(3, 2, 1, 2, 1) == 2);
    CHECK(var_index(3, 2, 2, 1, 1) == 6);
    CHECK(var_index(3, 2, 3, 3, 2) == 17);
    for (auto [n, d] : {std::pair<unsigned, unsigned>{3, 2}, {2, 4}, {4, 3}}) {
        std::set<std::size_t> seen;
        for (unsigned i = 1; i <= n; ++i)
            for (unsigned r = 1; r <= n; ++r)
                for (unsigned c = 1; c <= d; ++c)
                    seen.insert(var_index(n, d, i, r, c));
        CHECK(seen.size() == std::size_t(n) * n * d);
        CHECK(*seen.rbegin() == std::size_t(n) * n * d - 1);
    }
}

TEST_CASE("block map constructor rejects bad blocks") {
    auto i2 = gf2::BitMatrix::identity(2);
    auto i1 = gf2::BitMatrix::identity(1);
    CHECK_NOTHROW(BlockLinearMap(2, 1, i2, gf2::BitMatrix(2, 1), i1));
    CHECK_THROWS_AS(BlockLinearMap(1, 1, i1, gf2::BitMatrix(1, 1), i1), DimensionError);
    CHECK_THROWS_AS(BlockLinearMap(2, 1, i2, gf2::BitMatrix(1, 1), i1), DimensionError);
    CHECK_THROWS_AS(BlockLinearMap(2, 1, i1, gf2::BitMatrix(2, 1), i1), DimensionError);
    auto sing2 = gf2::BitMatrix::from_strings({"11", "11"});
    CHECK_THROWS_AS(BlockLinearMap(2, 1, sing2, gf2::BitMatrix(2, 1), i1), SingularError);
    CHECK_THROWS_AS(BlockLinearMap(2, 2, i2, gf2::BitMatrix(2, 2), sing2), SingularError);
    auto bm = BlockLinearMap::identity(3, 2);
    CHECK(bm.assemble() == gf2::BitMatrix::identity(5));
}

TEST_CASE("system shape follows the block sizes") {
    auto sys = build_system(BlockLinearMap::identity(3, 2));
    CHECK(sys.constraints.rows() == 30); // 18 + 12
    CHECK(sys.constraints.cols() == 18);
    auto big = build_system(BlockLinearMap::identity(60, 4));
    CHECK(big.constraints.rows() == 21720);
    CHECK(big.constraints.cols() == 14400);
}

TEST_CASE("the identity map leaves exactly the above-diagonal cells free") {
    for (unsigned n = 2; n <= 8; ++n)
        for (unsigned d = 1; d <= 3; ++d) {
            auto sol = solve(build_system(BlockLinearMap::identity(n, d)));
            CHECK(sol.dimension() == std::size_t(d) * n * (n - 1) / 2);
        }
}

TEST_CASE("kernel of the identity system matches the enumeration census") {
    struct Case {
        unsigned n, d;
    };
    for (auto [n, d] : {Case{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {4, 1}}) {
        auto sol = solve(build_system(BlockLinearMap::identity(n, d)));
        auto expect = census::brute_force_count(n, d);
        REQUIRE(expect.exact.has_value());
        CHECK(census::bigint(count_full_rank_solutions(sol)) == *expect.exact);
    }
    auto sol32 = solve(build_system(BlockLinearMap::identity(3, 2)));
    CHECK(enumerate_kernel(sol32).size() == 64);
    CHECK(count_full_rank_solutions(sol32) == 42);
}

TEST_CASE("the swap example has a one-dimensional kernel") {
    auto sol = solve(build_system(swap_blocks()));
    REQUIRE(sol.dimension() == 1);
    CHECK(sol.basis[0].to_string() == "0110");
    auto hs = decode(sol, sol.basis[0]);
    CHECK(hs.blocks[0].get(0, 0) == false);
    CHECK(hs.blocks[0].get(1, 0) == true);
    CHECK(hs.blocks[1].get(0, 0) == true);
    CHECK(hs.blocks[1].get(1, 0) == false);
    auto rep = validate(hs);
    CHECK(rep.is_practical_hidden_sum);
    CHECK(rep.dim_u == 1);
    CHECK(linearizes_exhaustive(hs, swap_map()));
}

TEST_CASE("encode and decode are mutually inverse on kernel points") {
    auto sol = solve(build_system(BlockLinearMap::identity(3, 2)));
    for (const auto& p : enumerate_kernel(sol)) {
        auto hs = decode(sol, p);
        CHECK(encode(hs) == p);
        // block slices of the point are the rows of the rank grid expansion
        auto exp = bfrak_expansion(hs);
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned k = 0; k < 6; ++k)
                CHECK(exp.get(i, k) == p.get(std::size_t(i) * 6 + k));
    }
    auto zero = decode(sol, gf2::BitVector(18));
    CHECK_FALSE(validate(zero).nontrivial);
}

TEST_CASE("membership testing separates kernel from non-kernel points") {
    auto sol = solve(build_system(BlockLinearMap::identity(3, 2)));
    for (const auto& p : enumerate_kernel(sol))
        CHECK(in_kernel(sol, p));
    auto diag = gf2::BitVector::unit(18, 0); // a diagonal cell, forced to zero
    CHECK_FALSE(in_kernel(sol, diag));
    CHECK_THROWS_AS(decode(sol, diag), Error);
    CHECK_THROWS_AS(in_kernel(sol, gf2::BitVector(17)), DimensionError);
}

TEST_CASE("decoded solutions linearize the block map") {
    struct Case {
        unsigned n, d;
        std::uint64_t seed;
    };
    for (auto [n, d, seed] : {Case{3, 2, 11}, {4, 3, 12}, {2, 5, 13}, {5, 3, 14}}) {
        auto bm = random_block_map(n, d, seed);
        auto lam = bm.assemble();
        auto sol = solve(build_system(bm));
        auto samples = sample_solutions(sol, 6, seed * 977, false);
        for (const auto& hs : samples) {
            auto rep = validate(hs);
            CHECK(rep.symmetric);
            CHECK(rep.zero_diagonal);
            CHECK(linearizes_exhaustive(hs, lam));
        }
    }
    // too wide to enumerate pairs: spot-check random ones
    auto bm = random_block_map(10, 2, 15);
    auto lam = bm.assemble();
    auto sol = solve(build_system(bm));
    std::mt19937_64 rng(1551);
    for (const auto& hs : sample_solutions(sol, 3, 16, false))
        CHECK(linearizes_sampled(hs, lam, 10000, rng));
}

TEST_CASE("every linearizing block tuple lies in the kernel") {
    converse_matches_kernel(2, 1, swap_blocks());
    converse_matches_kernel(3, 2, BlockLinearMap::identity(3, 2));
    converse_matches_kernel(3, 2, random_block_map(3, 2, 21));
    converse_matches_kernel(4, 1, random_block_map(4, 1, 22));
    converse_matches_kernel(3, 3, random_block_map(3, 3, 23));
    converse_matches_kernel(2, 4, random_block_map(2, 4, 24));
    converse_matches_kernel(4, 2, random_block_map(4, 2, 25));
}

TEST_CASE("the constraint system ignores the mixing block") {
    std::mt19937_64 rng(31);
    auto l1 = random_invertible(4, rng);
    auto l3 = random_invertible(3, rng);
    std::vector<gf2::BitVector> r1, r2;
    for (unsigned r = 0; r < 4; ++r)
        r1.push_back(gf2::random_vector(3, rng));
    for (unsigned r = 0; r < 4; ++r)
        r2.push_back(gf2::random_vector(3, rng));
    BlockLinearMap a{4, 3, l1, gf2::BitMatrix::from_rows(r1), l3};
    BlockLinearMap b{4, 3, l1, gf2::BitMatrix::from_rows(r2), l3};
    CHECK(build_system(a).constraints == build_system(b).constraints);
    CHECK(a.assemble() != b.assemble());
}

TEST_CASE("translation parts map the linear space into itself") {
    for (std::uint64_t seed : {41u, 42u, 43u}) {
        auto bm = random_block_map(4, 2, seed);
        auto lam = bm.assemble();
        auto sol = solve(build_system(bm));
        for (const auto& hs : sample_solutions(sol, 4, seed + 7, false)) {
            std::size_t N = hs.dim();
            // u = (y, z) is linear exactly when y combines the blocks to zero
            auto ybasis = gf2::solve_homogeneous(gf2::transpose(bfrak_expansion(hs)));
            std::vector<gf2::BitVector> ubasis;
            for (const auto& y : ybasis) {
                gf2::BitVector u(N);
                for (unsigned i = 0; i < hs.n; ++i)
                    u.set(i, y.get(i));
                ubasis.push_back(u);
            }
            for (unsigned c = 0; c < hs.d; ++c)
                ubasis.push_back(gf2::BitVector::unit(N, hs.n + c));
            CHECK(ubasis.size() == dim_u(hs));
            REQUIRE(gf2::rank(gf2::BitMatrix::from_rows(ubasis)) == ubasis.size());
            for (const auto& u : ubasis) {
                auto extended = ubasis;
                extended.push_back(gf2::mat_vec_mul(u, lam));
                CHECK(gf2::rank(gf2::BitMatrix::from_rows(extended)) == ubasis.size());
            }
        }
    }
}

TEST_CASE("translation matrices twist through the map") {
    auto bm = random_block_map(3, 2, 51);
    auto lam = bm.assemble();
    auto sol = solve(build_system(bm));
    auto pts = enumerate_kernel(sol);
    for (const auto& p : pts) {
        auto hs = decode(sol, p);
        for (std::uint64_t xb = 0; xb < 32; ++xb) {
            auto x = vec(5, xb);
            CHECK(gf2::mat_mul(kappa(hs, x), lam) ==
                  gf2::mat_mul(lam, kappa(hs, gf2::mat_vec_mul(x, lam))));
        }
    }
}

TEST_CASE("sampling is deterministic and covers the kernel") {
    auto sol = solve(build_system(BlockLinearMap::identity(3, 2)));
    auto a = sample_solutions(sol, 2000, 61, false);
    auto b = sample_solutions(sol, 2000, 61, false);
    REQUIRE(a.size() == 2000);
    std::map<std::string, int> freq;
    for (std::size_t k = 0; k < a.size(); ++k) {
        auto pa = encode(a[k]);
        CHECK(pa == encode(b[k]));
        CHECK(in_kernel(sol, pa));
        ++freq[pa.to_string()];
    }
    CHECK(freq.size() == 64);
    int least = 2000;
    for (const auto& [s, c] : freq)
        least = std::min(least, c);
    CHECK(least >= 8);
}

TEST_CASE("full-rank filtering rejects low-rank grids") {
    auto sol = solve(build_system(BlockLinearMap::identity(3, 2)));
    auto samples = sample_solutions(sol, 50, 71, true);
    for (const auto& hs : samples) {
        auto rep = validate(hs);
        CHECK(rep.bfrak_rank == 3);
        CHECK(rep.exact_dim_u);
    }
    // no full-rank grid exists with one column and an odd head
    auto odd = solve(build_system(BlockLinearMap::identity(3, 1)));
    CHECK_THROWS_WITH_AS(sample_solutions(odd, 1, 72, true),
                         doctest::Contains("retry cap of 1000"), SampleError);
    CHECK_THROWS_AS(sample_solutions(sol, 0, 73, false), DimensionError);
}

TEST_CASE("the full-rank fraction estimate brackets the exact ratio") {
    auto sol = solve(build_system(BlockLinearMap::identity(3, 2)));
    auto est = estimate_full_rank_fraction(sol, 4096, 81);
    CHECK(est.trials == 4096);
    CHECK(est.fraction == doctest::Approx(double(est.hits) / 4096.0));
    double exact = 42.0 / 64.0;
    CHECK(est.lo <= exact);
    CHECK(est.hi >= exact);
    CHECK(est.hi - est.lo < 0.04);
    auto rerun = estimate_full_rank_fraction(sol, 4096, 81);
    CHECK(rerun.hits == est.hits);
    CHECK_THROWS_AS(estimate_full_rank_fraction(sol, 0, 82), DimensionError);
}

TEST_CASE("fixed coordinates of a permutation") {
    CHECK(fixed_coordinates({1, 2, 3, 4, 5}) == std::vector<std::size_t>{1, 2, 3, 4, 5});
    CHECK(fixed_coordinates({2, 1}) == std::vector<std::size_t>{});
    CHECK(fixed_coordinates({2, 1, 3}) == std::vector<std::size_t>{3});
    CHECK_THROWS_AS(fixed_coordinates({1, 1, 3}), DimensionError);
    CHECK_THROWS_AS(fixed_coordinates({0, 1}), DimensionError);
}

TEST_CASE("block form splits a conjugated map") {
    auto id = block_form(gf2::BitMatrix::identity(5), gf2::BitMatrix::identity(5), 3, 2);
    CHECK(id.lambda1 == gf2::BitMatrix::identity(3));
    CHECK(id.lambda2 == gf2::BitMatrix(3, 2));
    CHECK(id.lambda3 == gf2::BitMatrix::identity(2));

    auto bm = random_block_map(4, 2, 91);
    auto lamhat = bm.assemble();
    auto pi = gf2::permutation_to_matrix({3, 1, 4, 2, 6, 5});
    auto lam = gf2::conjugate(lamhat, gf2::invert(pi));
    auto back = block_form(lam, pi, 4, 2);
    CHECK(back.lambda1 == bm.lambda1);
    CHECK(back.lambda2 == bm.lambda2);
    CHECK(back.lambda3 == bm.lambda3);

    // a bit in the lower-left block breaks triangularity
    auto bad = gf2::BitMatrix::identity(5);
    bad.set(4, 0, true);
    CHECK_THROWS_WITH_AS(block_form(bad, gf2::BitMatrix::identity(5), 3, 2),
                         doctest::Contains("row 5"), BlockFormError);
    CHECK_THROWS_AS(block_form(gf2::BitMatrix::identity(4), gf2::BitMatrix::identity(5), 3, 2),
                    DimensionError);
    auto sing = gf2::BitMatrix(5, 5);
    CHECK_THROWS_AS(block_form(gf2::BitMatrix::identity(5), sing, 3, 2), SingularError);
}

TEST_CASE("the full pipeline records its pieces") {
    auto res = linearize(gf2::BitMatrix::identity(5), gf2::BitMatrix::identity(5), 3, 2);
    CHECK(res.sol.dimension() == 6);
    CHECK(res.pi == gf2::BitMatrix::identity(5));
    CHECK(res.seconds >= 0.0);
    CHECK(res.seconds < 60.0);

    auto swp = linearize(swap_map(), gf2::BitMatrix::identity(3), 2, 1);
    CHECK(swp.sol.dimension() == 1);
    CHECK(swp.sol.basis[0].to_string() == "0110");

    // conjugating away a permutation finds the same canonical basis
    auto bm = random_block_map(3, 2, 92);
    auto pi = gf2::permutation_to_matrix({2, 3, 1, 5, 4});
    auto lam = gf2::conjugate(bm.assemble(), gf2::invert(pi));
    auto via_pi = linearize(lam, pi, 3, 2);
    auto direct = solve(build_system(bm));
    CHECK(via_pi.sol.basis == direct.basis);
}

TEST_CASE("enumeration refuses oversized kernels") {
    auto sol = solve(build_system(BlockLinearMap::identity(8, 3)));
    REQUIRE(sol.dimension() == 84);
    CHECK_THROWS_WITH_AS(enumerate_kernel(sol), doctest::Contains("2^24"), BudgetError);
    CHECK_THROWS_WITH_AS(count_full_rank_solutions(sol), doctest::Contains("2^24"),
                         BudgetError);
}

TEST_CASE("kernel basis files round-trip") {
    auto sol = solve(build_system(BlockLinearMap::identity(3, 2)));
    std::ostringstream out;
    write_basis(out, sol);
    std::istringstream in(out.str());
    auto back = read_basis(in);
    CHECK(back.n == 3);
    CHECK(back.d == 2);
    CHECK(back.basis == sol.basis);

    auto swp = solve(build_system(swap_blocks()));
    std::ostringstream sout;
    write_basis(sout, swp);
    CHECK(sout.str() == "kernel 1 2 1\n0110\n");

    SolutionBasis empty;
    empty.n = 2;
    empty.d = 1;
    std::ostringstream eout;
    write_basis(eout, empty);
    CHECK(eout.str() == "kernel 0 2 1\n");
    std::istringstream ein(eout.str());
    CHECK(read_basis(ein).dimension() == 0);

    for (const char* bad : {
             "grid 1 2 1\n0110\n",      // wrong tag
             "kernel 2 2 1\n0110\n",    // fewer rows than declared
             "kernel 1 2 1\n011\n",     // wrong width
             "kernel 1 2 1\n01x0\n",    // non-binary
             "kernel 1 1 1\n0\n",       // head too small
             "kernel 2 2 1\n0110\n0110\n", // dependent rows
         }) {
        std::istringstream s(bad);
        CHECK_THROWS_AS(read_basis(s), ParseError);
    }
}
