#include "hiddensum/linearize.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace hsum {

BlockLinearMap::BlockLinearMap(unsigned n_, unsigned d_, gf2::BitMatrix lambda1_,
                               gf2::BitMatrix lambda2_, gf2::BitMatrix lambda3_)
    : n(n_), d(d_), lambda1(std::move(lambda1_)), lambda2(std::move(lambda2_)),
      lambda3(std::move(lambda3_)) {
    if (n < 2)
        throw DimensionError("block map: n >= 2 required");
    if (d < 1)
        throw DimensionError("block map: d >= 1 required");
    if (lambda1.rows() != n || lambda1.cols() != n)
        throw DimensionError("block map: upper-left block must be n x n");
    if (lambda2.rows() != n || lambda2.cols() != d)
        throw DimensionError("block map: upper-right block must be n x d");
    if (lambda3.rows() != d || lambda3.cols() != d)
        throw DimensionError("block map: lower-right block must be d x d");
    if (gf2::rank(lambda1) != n)
        throw SingularError("block map: upper-left block is singular");
    if (gf2::rank(lambda3) != d)
        throw SingularError("block map: lower-right block is singular");
}

BlockLinearMap BlockLinearMap::identity(unsigned n, unsigned d) {
    return {n, d, gf2::BitMatrix::identity(n), gf2::BitMatrix(n, d),
            gf2::BitMatrix::identity(d)};
}

gf2::BitMatrix BlockLinearMap::assemble() const {
    std::size_t N = std::size_t(n) + d;
    gf2::BitMatrix m(N, N);
    for (unsigned r = 0; r < n; ++r) {
        for (unsigned c = 0; c < n; ++c)
            m.set(r, c, lambda1.get(r, c));
        for (unsigned c = 0; c < d; ++c)
            m.set(r, n + c, lambda2.get(r, c));
    }
    for (unsigned r = 0; r < d; ++r)
        for (unsigned c = 0; c < d; ++c)
            m.set(n + r, n + c, lambda3.get(r, c));
    return m;
}

std::size_t var_index(unsigned n, unsigned d, unsigned i, unsigned r, unsigned c) {
    return (std::size_t(i - 1) * n + (r - 1)) * d + (c - 1);
}

LinearSystem build_system(const BlockLinearMap& lam) {
    const unsigned n = lam.n, d = lam.d;
    const std::size_t vars = std::size_t(n) * n * d;
    const std::size_t rows = vars + std::size_t(n) * (n + 1) / 2 * d;
    gf2::BitMatrix m(rows, vars);

    std::vector<std::vector<unsigned>> l1row(n), l3col(d);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (lam.lambda1.get(i, j))
                l1row[i].push_back(j);
    for (unsigned c = 0; c < d; ++c)
        for (unsigned s = 0; s < d; ++s)
            if (lam.lambda3.get(s, c))
                l3col[c].push_back(s);

    // coefficients can coincide, so accumulate mod 2
    auto flip = [&m](std::size_t r, std::size_t c) { m.set(r, c, !m.get(r, c)); };

    // entry (r,c) of B_{e_i} L3 + L1 (sum_j c_j B_{e_j}) with c = row i of L1
    std::size_t row = 0;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned r = 0; r < n; ++r)
            for (unsigned c = 0; c < d; ++c, ++row) {
                for (unsigned s : l3col[c])
                    flip(row, var_index(n, d, i + 1, r + 1, s + 1));
                for (unsigned j : l1row[i])
                    for (unsigned t : l1row[r])
                        flip(row, var_index(n, d, j + 1, t + 1, c + 1));
            }
    // row i of B_{e_i} = 0
    for (unsigned i = 0; i < n; ++i)
        for (unsigned c = 0; c < d; ++c, ++row)
            m.set(row, var_index(n, d, i + 1, i + 1, c + 1), true);
    // row i of B_{e_j} = row j of B_{e_i} for i < j
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
            for (unsigned c = 0; c < d; ++c, ++row) {
                m.set(row, var_index(n, d, j + 1, i + 1, c + 1), true);
                m.set(row, var_index(n, d, i + 1, j + 1, c + 1), true);
            }
    return {n, d, std::move(m)};
}

SolutionBasis solve(const LinearSystem& sys) {
    return {sys.n, sys.d, gf2::solve_homogeneous(sys.constraints)};
}

bool in_kernel(const SolutionBasis& sol, const gf2::BitVector& point) {
    if (point.size() != sol.point_length())
        throw DimensionError("kernel membership: point length mismatch");
    if (point.is_zero())
        return true;
    if (sol.basis.empty())
        return false;
    std::vector<gf2::BitVector> rows = sol.basis;
    rows.push_back(point);
    return gf2::rank(gf2::BitMatrix::from_rows(rows)) == sol.basis.size();
}

namespace {

HiddenSum blocks_from_point(unsigned n, unsigned d, const gf2::BitVector& point) {
    std::vector<gf2::BitMatrix> blocks(n, gf2::BitMatrix(n, d));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned r = 0; r < n; ++r)
            for (unsigned c = 0; c < d; ++c)
                if (point.get(var_index(n, d, i + 1, r + 1, c + 1)))
                    blocks[i].set(r, c, true);
    return HiddenSum(n, d, std::move(blocks));
}

// rank over F_2 of the n x (n*d) matrix whose row i is the slice of the
// point holding B_{e_i}
unsigned expansion_rank(unsigned n, unsigned d, const gf2::BitVector& point) {
    std::size_t width = std::size_t(n) * d;
    gf2::BitMatrix m(n, width);
    for (unsigned i = 0; i < n; ++i)
        for (std::size_t k = 0; k < width; ++k)
            if (point.get(std::size_t(i) * width + k))
                m.set(i, k, true);
    return unsigned(gf2::rank(m));
}

gf2::BitVector random_point(const SolutionBasis& sol, std::mt19937_64& rng) {
    gf2::BitVector point(sol.point_length());
    std::size_t l = sol.basis.size();
    for (std::size_t base = 0; base < l; base += 64) {
        gf2::word_t w = rng();
        std::size_t take = std::min<std::size_t>(64, l - base);
        for (std::size_t t = 0; t < take; ++t)
            if ((w >> t) & 1u)
                point ^= sol.basis[base + t];
    }
    return point;
}

} // namespace

HiddenSum decode(const SolutionBasis& sol, const gf2::BitVector& point) {
    if (!in_kernel(sol, point))
        throw Error("decode: point is not in the kernel");
    return blocks_from_point(sol.n, sol.d, point);
}

gf2::BitVector encode(const HiddenSum& hs) {
    gf2::BitVector point(std::size_t(hs.n) * hs.n * hs.d);
    for (unsigned i = 0; i < hs.n; ++i)
        for (unsigned r = 0; r < hs.n; ++r)
            for (unsigned c = 0; c < hs.d; ++c)
                if (hs.blocks[i].get(r, c))
                    point.set(var_index(hs.n, hs.d, i + 1, r + 1, c + 1), true);
    return point;
}

std::vector<HiddenSum> sample_solutions(const SolutionBasis& sol, std::size_t count,
                                        std::uint64_t seed, bool full_rank_only) {
    if (count < 1)
        throw DimensionError("sample: count must be positive");
    std::mt19937_64 rng(seed);
    std::vector<HiddenSum> out;
    out.reserve(count);
    const std::size_t cap = 1000 * count;
    std::size_t draws = 0;
    while (out.size() < count) {
        if (full_rank_only && draws >= cap) {
            std::ostringstream msg;
            msg << "full-rank sampling: retry cap of " << cap << " draws exhausted, "
                << out.size() << " of " << draws << " accepted (acceptance rate "
                << double(out.size()) / double(draws) << ")";
            throw SampleError(msg.str());
        }
        ++draws;
        gf2::BitVector point = random_point(sol, rng);
        if (full_rank_only && expansion_rank(sol.n, sol.d, point) != sol.n)
            continue;
        out.push_back(blocks_from_point(sol.n, sol.d, point));
    }
    return out;
}

FullRankEstimate estimate_full_rank_fraction(const SolutionBasis& sol,
                                             std::size_t trials, std::uint64_t seed) {
    if (trials < 1)
        throw DimensionError("estimate: trials must be positive");
    std::mt19937_64 rng(seed);
    FullRankEstimate est;
    est.trials = trials;
    for (std::size_t k = 0; k < trials; ++k)
        if (expansion_rank(sol.n, sol.d, random_point(sol, rng)) == sol.n)
            ++est.hits;
    double nn = double(trials);
    double p = double(est.hits) / nn;
    est.fraction = p;
    const double z = 1.959963984540054; // 95% normal quantile
    double denom = 1.0 + z * z / nn;
    double center = (p + z * z / (2.0 * nn)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
    est.lo = std::max(0.0, center - half);
    est.hi = std::min(1.0, center + half);
    return est;
}

std::vector<std::size_t> fixed_coordinates(const std::vector<std::size_t>& image) {
    std::size_t N = image.size();
    std::vector<bool> seen(N, false);
    for (std::size_t i = 0; i < N; ++i) {
        if (image[i] < 1 || image[i] > N)
            throw DimensionError("permutation image out of range");
        if (seen[image[i] - 1])
            throw DimensionError("permutation image repeated");
        seen[image[i] - 1] = true;
    }
    std::vector<std::size_t> fixed;
    for (std::size_t i = 0; i < N; ++i)
        if (image[i] == i + 1)
            fixed.push_back(i + 1);
    return fixed;
}

BlockLinearMap block_form(const gf2::BitMatrix& lam, const gf2::BitMatrix& pi,
                          unsigned n, unsigned d) {
    std::size_t N = std::size_t(n) + d;
    if (lam.rows() != N || lam.cols() != N)
        throw DimensionError("block form: map must be (n+d) x (n+d)");
    if (pi.rows() != N || pi.cols() != N)
        throw DimensionError("block form: conjugator must be (n+d) x (n+d)");
    gf2::BitMatrix conj = gf2::conjugate(lam, pi);
    for (std::size_t r = n; r < N; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (conj.get(r, c))
                throw BlockFormError("not block-triangular under this conjugator: row " +
                                     std::to_string(r + 1) + " meets the first " +
                                     std::to_string(n) + " columns");
    gf2::BitMatrix l1(n, n), l2(n, d), l3(d, d);
    for (unsigned r = 0; r < n; ++r) {
        for (unsigned c = 0; c < n; ++c)
            l1.set(r, c, conj.get(r, c));
        for (unsigned c = 0; c < d; ++c)
            l2.set(r, c, conj.get(r, n + c));
    }
    for (unsigned r = 0; r < d; ++r)
        for (unsigned c = 0; c < d; ++c)
            l3.set(r, c, conj.get(n + r, n + c));
    return {n, d, std::move(l1), std::move(l2), std::move(l3)};
}

LinearizeResult linearize(const gf2::BitMatrix& lam, const gf2::BitMatrix& pi,
                          unsigned n, unsigned d) {
    auto t0 = std::chrono::steady_clock::now();
    LinearizeResult res;
    res.blocks = block_form(lam, pi, n, d);
    res.sol = solve(build_system(res.blocks));
    res.pi = pi;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<gf2::BitVector> enumerate_kernel(const SolutionBasis& sol) {
    std::size_t l = sol.dimension();
    if (l > 24)
        throw BudgetError("kernel has 2^" + std::to_string(l) +
                          " points; enumeration is limited to 2^24");
    std::vector<gf2::BitVector> points;
    points.reserve(std::size_t(1) << l);
    points.emplace_back(sol.point_length());
    for (std::uint64_t k = 1; k < (std::uint64_t(1) << l); ++k) {
        std::uint64_t low = k & (~k + 1);
        points.push_back(points[k ^ low] ^ sol.basis[std::size_t(std::countr_zero(k))]);
    }
    return points;
}

std::size_t count_full_rank_solutions(const SolutionBasis& sol) {
    std::size_t l = sol.dimension();
    if (l > 24)
        throw BudgetError("kernel has 2^" + std::to_string(l) +
                          " points; exact counting is limited to 2^24");
    // Gray code walk, one basis vector flipped per step
    gf2::BitVector cur(sol.point_length());
    std::size_t hits = 0;
    for (std::uint64_t k = 1; k < (std::uint64_t(1) << l); ++k) {
        cur ^= sol.basis[std::size_t(std::countr_zero(k))];
        if (expansion_rank(sol.n, sol.d, cur) == sol.n)
            ++hits;
    }
    return hits;
}

SolutionBasis read_basis(std::istream& in) {
    std::string header;
    if (!std::getline(in, header))
        throw ParseError("kernel basis file: missing header");
    std::istringstream hs(header);
    std::string tag;
    long long l = -1, n = -1, d = -1;
    hs >> tag >> l >> n >> d;
    if (tag != "kernel" || hs.fail() || l < 0 || n < 2 || d < 1)
        throw ParseError("kernel basis file: header must be 'kernel <l> <n> <d>'");
    std::size_t width = std::size_t(n) * std::size_t(n) * std::size_t(d);
    SolutionBasis sol;
    sol.n = unsigned(n);
    sol.d = unsigned(d);
    std::string line;
    for (long long k = 0; k < l; ++k) {
        if (!std::getline(in, line))
            throw ParseError("kernel basis file: fewer rows than declared");
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        if (line.size() != width)
            throw ParseError("kernel basis file: row " + std::to_string(k + 1) +
                             " has wrong length");
        for (char ch : line)
            if (ch != '0' && ch != '1')
                throw ParseError("kernel basis file: row " + std::to_string(k + 1) +
                                 " has non-binary character");
        sol.basis.push_back(gf2::BitVector::from_string(line));
    }
    if (l > 0 && gf2::rank(gf2::BitMatrix::from_rows(sol.basis)) != std::size_t(l))
        throw ParseError("kernel basis file: rows are not independent");
    return sol;
}

SolutionBasis read_basis_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    return read_basis(in);
}

void write_basis(std::ostream& out, const SolutionBasis& sol) {
    out << "kernel " << sol.dimension() << ' ' << sol.n << ' ' << sol.d << '\n';
    for (const auto& v : sol.basis)
        out << v.to_string() << '\n';
}

void write_basis_file(const std::string& path, const SolutionBasis& sol) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    write_basis(out, sol);
}

} // namespace hsum
