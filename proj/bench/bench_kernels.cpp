// Benchmarks the fast elimination and enumeration kernels against their
// serial reference implementations. Prints timings, speedups, and an
// agreement check for each case; not part of the test suite.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>

#include "hiddensum/census.hpp"
#include "hiddensum/gf2.hpp"
#include "hiddensum/linearize.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace hsum;
using Clock = std::chrono::steady_clock;

template <typename F>
double timed(F&& f) {
    auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

gf2::BitMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    gf2::BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m.set(r, c, rng() & 1);
    return m;
}

gf2::BitMatrix random_invertible(unsigned size, std::mt19937_64& rng) {
    for (;;) {
        gf2::BitMatrix m(size, size);
        for (unsigned r = 0; r < size; ++r)
            for (unsigned c = 0; c < size; ++c)
                m.set(r, c, rng() & 1);
        if (gf2::rank(m) == size)
            return m;
    }
}

void line(const std::string& label, double fast, double slow, bool agree) {
    std::cout << std::left << std::setw(34) << label << std::right << std::fixed
              << std::setprecision(4) << "  fast " << std::setw(9) << fast
              << " s   reference " << std::setw(9) << slow << " s   speedup "
              << std::setprecision(1) << std::setw(6) << (slow / fast) << "x   "
              << (agree ? "agree" : "DISAGREE") << "\n";
}

void bench_rref(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    auto base = random_matrix(rows, cols, seed);
    auto a = base;
    auto b = base;
    std::size_t rank_fast = 0, rank_slow = 0;
    double fast = timed([&] { rank_fast = gf2::rref_in_place(a, gf2::Elim::table).rank; });
    double slow = timed([&] { rank_slow = gf2::ref::rref_in_place(b).rank; });
    line("rref " + std::to_string(rows) + "x" + std::to_string(cols), fast, slow,
         rank_fast == rank_slow && a == b);
}

void bench_solve(unsigned n, unsigned d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto l1 = random_invertible(n, rng);
    gf2::BitMatrix l2(n, d);
    for (unsigned r = 0; r < n; ++r)
        for (unsigned c = 0; c < d; ++c)
            l2.set(r, c, rng() & 1);
    auto l3 = random_invertible(d, rng);
    auto sys = build_system(BlockLinearMap(n, d, l1, l2, l3));
    std::vector<gf2::BitVector> fast_basis, slow_basis;
    double fast =
        timed([&] { fast_basis = gf2::solve_homogeneous(sys.constraints, gf2::Elim::table); });
    double slow =
        timed([&] { slow_basis = gf2::solve_homogeneous(sys.constraints, gf2::Elim::plain); });
    line("kernel solve n=" + std::to_string(n) + " d=" + std::to_string(d) + " (" +
             std::to_string(sys.constraints.rows()) + "x" +
             std::to_string(sys.constraints.cols()) + ")",
         fast, slow, fast_basis == slow_basis);
}

void bench_census(unsigned n, unsigned d) {
    std::uint64_t got_fast = 0, got_slow = 0;
    double fast = timed([&] {
        auto rep = census::brute_force_count(n, d);
        got_fast = rep.exact->get_ui();
    });
    double slow = timed([&] { got_slow = census::ref::count_full_rank(n, d); });
    line("census n=" + std::to_string(n) + " d=" + std::to_string(d), fast, slow,
         got_fast == got_slow);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "openmp: disabled\n";
#endif

    bench_rref(512, 512, 101);
    bench_rref(1024, 1024, 102);
    bench_rref(2048, 2048, 103);
    bench_rref(4096, 4096, 104);
    bench_rref(3000, 2000, 105);

    bench_solve(20, 3, 201);
    bench_solve(30, 2, 202);
    bench_solve(30, 4, 203);

    bench_census(3, 3);
    bench_census(4, 2);
    bench_census(3, 4);
    bench_census(4, 3);
    return 0;
}
