#include "hiddensum/census.hpp"

#include <array>
#include <bit>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hiddensum/hidden_sum.hpp"
#include "hiddensum/smallfield.hpp"

namespace hsum::census {

const char* to_string(CountMethod m) {
    switch (m) {
    case CountMethod::brute_force: return "brute-force";
    case CountMethod::closed_form: return "closed-form";
    default: return "bounds-only";
    }
}

static bigint pow2(unsigned long e) {
    bigint r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

static bigint ipow(const bigint& base, unsigned long e) {
    bigint r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

static unsigned long choose2(unsigned n) { return (unsigned long)n * (n - 1) / 2; }

bigint mu(unsigned n, unsigned d) {
    if (n < 2 || d < 1)
        throw DimensionError("mu: need n >= 2 and d >= 1");
    bigint total = pow2((unsigned long)d * choose2(n)) - 1;
    const bigint qm1 = pow2(d) - 1;
    for (unsigned r = 1; r + 2 <= n; ++r) {
        bigint binom;
        mpz_bin_uiui(binom.get_mpz_t(), n, r);
        total -= binom * ipow(qm1, choose2(n - r));
    }
    return total;
}

bigint nu(unsigned n, unsigned d) {
    if (n < 2 || d < 1)
        throw DimensionError("nu: need n >= 2 and d >= 1");
    const bigint q = pow2(d);
    // exact rational product, floored at the end (it is always integral)
    bigrat v;
    unsigned m;
    if (n % 2 == 0) {
        v = bigrat(ipow(q, choose2(n)));
        m = (n - 1 + 1) / 2;
    } else {
        v = bigrat((ipow(q, n - 1) - pow2(n - 1)) * ipow(q, choose2(n - 1)));
        m = (n - 2 + 1) / 2;
    }
    for (unsigned j = 1; j <= m; ++j)
        v *= bigrat(ipow(q, 2ul * j - 1) - 1, ipow(q, 2ul * j - 1));
    v.canonicalize();
    bigint out;
    mpz_fdiv_q(out.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
    return out;
}

bigint gaussian_binomial(unsigned N, unsigned d) {
    if (d > N)
        throw DimensionError("gaussian_binomial: need d <= N");
    bigint num = 1, den = 1;
    for (unsigned i = 0; i < d; ++i) {
        num *= pow2(N - i) - 1;
        den *= pow2(d - i) - 1;
    }
    bigint out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

static CountReport make_report(unsigned n, unsigned d, std::optional<bigint> exact,
                               CountMethod method) {
    CountReport rep;
    rep.n = n;
    rep.d = d;
    rep.q = pow2(d);
    rep.exact = std::move(exact);
    rep.mu = mu(n, d);
    rep.nu = nu(n, d);
    rep.method = method;
    if (rep.exact && (*rep.exact < rep.nu || *rep.exact > rep.mu)) {
        rep.flagged = true;
        rep.note = "exact count " + rep.exact->get_str() + " outside bound interval [" +
                   rep.nu.get_str() + ", " + rep.mu.get_str() + "]";
    }
    return rep;
}

namespace {

// odometer over the C(n,2) above-diagonal cells in row-major order, last
// cell fastest; rows hold the n x (n*d) expansion packed one word per row
struct Odometer {
    unsigned n, d, C;
    std::uint64_t q;
    std::vector<std::pair<unsigned, unsigned>> cells;
    std::vector<std::uint64_t> digit;
    std::array<std::uint64_t, 64> rows{};

    Odometer(unsigned n_, unsigned d_) : n(n_), d(d_), C(unsigned(choose2(n_))) {
        q = std::uint64_t(1) << d;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i + 1; j < n; ++j)
                cells.emplace_back(i, j);
        digit.assign(C, 0);
    }

    void load(std::uint64_t index) {
        rows.fill(0);
        for (unsigned k = C; k-- > 0;) {
            digit[k] = index & (q - 1);
            index >>= d;
            auto [i, j] = cells[k];
            rows[i] |= digit[k] << (j * d);
            rows[j] |= digit[k] << (i * d);
        }
    }

    void advance() {
        for (unsigned k = C; k-- > 0;) {
            const std::uint64_t old = digit[k];
            const std::uint64_t neu = (old + 1) & (q - 1);
            digit[k] = neu;
            const std::uint64_t delta = old ^ neu;
            auto [i, j] = cells[k];
            rows[i] ^= delta << (j * d);
            rows[j] ^= delta << (i * d);
            if (neu != 0)
                return;
        }
    }

    bool full_rank() const {
        std::uint64_t vals[64];
        unsigned leads[64];
        unsigned np = 0;
        for (unsigned i = 0; i < n; ++i) {
            std::uint64_t r = rows[i];
            while (r) {
                const unsigned b = 63 - unsigned(std::countl_zero(r));
                unsigned t = 0;
                for (; t < np; ++t)
                    if (leads[t] == b)
                        break;
                if (t == np)
                    break;
                r ^= vals[t];
            }
            if (!r)
                return false;
            vals[np] = r;
            leads[np] = 63 - unsigned(std::countl_zero(r));
            ++np;
        }
        return true;
    }
};

std::uint64_t checked_candidates(unsigned n, unsigned d, std::uint64_t budget) {
    if (n < 2 || d < 1)
        throw DimensionError("enumeration: need n >= 2 and d >= 1");
    const bigint cand = ipow(pow2(d), choose2(n));
    if (cand > bigint(budget))
        throw BudgetError("enumeration refused: " + cand.get_str() +
                          " candidate grids exceed the budget of " + std::to_string(budget));
    if ((unsigned long)n * d > 64)
        throw DimensionError("enumeration supports n*d <= 64");
    return cand.get_ui();
}

} // namespace

CountReport brute_force_count(unsigned n, unsigned d, std::uint64_t budget) {
    const std::uint64_t total = checked_candidates(n, d, budget);
    std::uint64_t count = 0;

    const std::uint64_t chunk_target = 1u << 16;
    const std::uint64_t nchunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(
        (total + chunk_target - 1) / chunk_target, 1024));

#pragma omp parallel for schedule(dynamic) reduction(+ : count)
    for (long long ci = 0; ci < (long long)nchunks; ++ci) {
        const std::uint64_t lo = total / nchunks * ci + std::min<std::uint64_t>(ci, total % nchunks);
        const std::uint64_t hi = total / nchunks * (ci + 1) + std::min<std::uint64_t>(ci + 1, total % nchunks);
        if (lo >= hi)
            continue;
        Odometer od(n, d);
        od.load(lo);
        for (std::uint64_t t = lo; t < hi; ++t) {
            if (t != lo)
                od.advance();
            if (od.full_rank())
                ++count;
        }
    }
    return make_report(n, d, bigint(count), CountMethod::brute_force);
}

std::uint64_t count_invertible_grids(unsigned n, unsigned d, std::uint64_t budget) {
    const std::uint64_t total = checked_candidates(n, d, budget);
    const f2e::Field field = f2e::field_for(d);
    Odometer od(n, d);
    od.load(0);
    std::uint64_t count = 0;
    std::vector<std::uint32_t> grid(std::size_t(n) * n, 0);
    for (std::uint64_t t = 0; t < total; ++t) {
        if (t)
            od.advance();
        for (unsigned k = 0; k < od.C; ++k) {
            auto [i, j] = od.cells[k];
            grid[std::size_t(i) * n + j] = std::uint32_t(od.digit[k]);
            grid[std::size_t(j) * n + i] = std::uint32_t(od.digit[k]);
        }
        if (f2e::grid_rank(field, grid, n) == n)
            ++count;
    }
    return count;
}

CountReport closed_form_count(unsigned n, unsigned d) {
    if (n < 2 || d < 1)
        throw DimensionError("closed_form_count: need n >= 2 and d >= 1");
    const bigint q = pow2(d);
    bigint exact;
    if (n == 2)
        exact = q - 1;
    else if (n == 3)
        exact = (q + 3) * (q - 1) * (q - 2);
    else if (d == 1)
        exact = (n % 2 == 1) ? bigint(0) : nu(n, 1);
    else
        throw NoClosedFormError("no closed form for (n=" + std::to_string(n) +
                                ", d=" + std::to_string(d) + ")");
    return make_report(n, d, exact, CountMethod::closed_form);
}

CountReport count_report(unsigned n, unsigned d, std::uint64_t budget) {
    try {
        return closed_form_count(n, d);
    } catch (const NoClosedFormError&) {
    }
    try {
        return brute_force_count(n, d, budget);
    } catch (const BudgetError&) {
    } catch (const DimensionError&) {
    }
    return make_report(n, d, std::nullopt, CountMethod::bounds_only);
}

TotalReport total_count(unsigned N, std::uint64_t budget) {
    if (N < 3)
        throw DimensionError("total_count: need N >= 3");
    TotalReport rep;
    rep.N = N;
    rep.total = 0;
    for (unsigned d = 1; d + 2 <= N; ++d) {
        const unsigned n = N - d;
        TotalTerm term;
        term.d = d;
        term.binom = gaussian_binomial(N, d);
        // closed forms are exact and free; enumeration covers the rest
        bigint cnt;
        try {
            cnt = *closed_form_count(n, d).exact;
        } catch (const NoClosedFormError&) {
            cnt = *brute_force_count(n, d, budget).exact;
        }
        term.count = cnt;
        term.term = term.binom * term.count;
        rep.total += term.term;
        rep.terms.push_back(std::move(term));
    }
    return rep;
}

RatioReport ratio_bound_check(unsigned n, unsigned d) {
    if (n < 2 || d < 2)
        throw DimensionError("ratio_bound_check: need n >= 2 and d >= 2");
    RatioReport rep;
    rep.n = n;
    rep.d = d;
    const bigint q = pow2(d);
    rep.ratio = bigrat(mu(n, d), nu(n, d));
    rep.ratio.canonicalize();

    const bigrat x(q + 1, q * (q - 1)); // exponent, < 1 for q >= 2
    const unsigned factor = (n % 2 == 1) ? 2 : 1;

    // partial sums of e^x with a geometric tail bound certify the comparison
    for (unsigned K = 8; K <= 256; K *= 2) {
        bigrat sum = 1, term = 1;
        for (unsigned k = 1; k <= K; ++k) {
            term *= x / k;
            sum += term;
        }
        bigrat tail = term * x / (K + 1);
        tail *= bigrat(K + 2) / (bigrat(K + 2) - x); // sum of the geometric majorant
        rep.bound_lower = factor * sum;
        rep.bound_upper = factor * (sum + tail);
        rep.bound_lower.canonicalize();
        rep.bound_upper.canonicalize();
        if (rep.ratio <= rep.bound_lower) {
            rep.pass = true;
            return rep;
        }
        if (rep.ratio > rep.bound_upper) {
            rep.pass = false;
            return rep;
        }
    }
    throw Error("ratio_bound_check: series bounds failed to separate ratio from the target");
}

namespace ref {

static std::uint64_t count_rec(BFrak& b, const std::vector<std::pair<unsigned, unsigned>>& cells,
                               std::size_t k) {
    if (k == cells.size()) {
        HiddenSum hs = from_bfrak(b);
        return gf2::rank(bfrak_expansion(hs), gf2::Elim::plain) == b.n ? 1 : 0;
    }
    auto [i, j] = cells[k];
    std::uint64_t total = 0;
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << b.d); ++v) {
        b.grid[std::size_t(i) * b.n + j] = v;
        b.grid[std::size_t(j) * b.n + i] = v;
        total += count_rec(b, cells, k + 1);
    }
    return total;
}

std::uint64_t count_full_rank(unsigned n, unsigned d) {
    BFrak b;
    b.n = n;
    b.d = d;
    b.grid.assign(std::size_t(n) * n, 0);
    std::vector<std::pair<unsigned, unsigned>> cells;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
            cells.emplace_back(i, j);
    return count_rec(b, cells, 0);
}

} // namespace ref

} // namespace hsum::census
