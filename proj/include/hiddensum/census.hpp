#pragma once

// Exact counting of the full-rank symmetric zero-diagonal grids that encode
// the alternative sums: brute-force enumeration at desk scale, the closed
// forms, the mu/nu bound pair, Gaussian-binomial totals over subspace
// choices, and the certified mu/nu ratio inequality.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hiddensum/errors.hpp"

namespace hsum::census {

using bigint = mpz_class;
using bigrat = mpq_class;

inline constexpr std::uint64_t DEFAULT_BUDGET = std::uint64_t(1) << 28;

enum class CountMethod { brute_force, closed_form, bounds_only };
const char* to_string(CountMethod m);

struct CountReport {
    unsigned n = 0, d = 0;
    bigint q;
    std::optional<bigint> exact;
    bigint mu, nu;
    CountMethod method = CountMethod::bounds_only;
    bool flagged = false; // exact known but outside [nu, mu]; formula suspect
    std::string note;
};

bigint mu(unsigned n, unsigned d);
bigint nu(unsigned n, unsigned d);
bigint gaussian_binomial(unsigned N, unsigned d);

// exact count by odometer enumeration of the q^C(n,2) free cell fillings
CountReport brute_force_count(unsigned n, unsigned d, std::uint64_t budget = DEFAULT_BUDGET);
// n=2, n=3 and d=1 have exact closed forms; anything else refuses
CountReport closed_form_count(unsigned n, unsigned d);
// closed form when covered, else enumeration within budget, else bounds only
CountReport count_report(unsigned n, unsigned d, std::uint64_t budget = DEFAULT_BUDGET);

// same enumeration restricted to grids invertible over F_{2^d} (d <= 8)
std::uint64_t count_invertible_grids(unsigned n, unsigned d,
                                     std::uint64_t budget = DEFAULT_BUDGET);

struct TotalTerm {
    unsigned d = 0;
    bigint binom; // subspace choices for the d-dimensional part
    bigint count; // |grids| at (N-d, d)
    bigint term;  // product
};

struct TotalReport {
    unsigned N = 0;
    bigint total;
    std::vector<TotalTerm> terms;
};

TotalReport total_count(unsigned N, std::uint64_t budget = DEFAULT_BUDGET);

struct RatioReport {
    unsigned n = 0, d = 0;
    bigrat ratio;       // mu/nu, exact
    bigrat bound_lower; // certified lower rational bound on the target
    bigrat bound_upper; // certified upper rational bound
    bool pass = false;  // ratio <= bound, certified either way
};

// target is e^{(q+1)/(q(q-1))}, doubled for odd n; requires d >= 2
RatioReport ratio_bound_check(unsigned n, unsigned d);

namespace ref {
// recursive cell-by-cell enumeration through the generic matrix code,
// kept as the independent reference for the fast odometer
std::uint64_t count_full_rank(unsigned n, unsigned d);
} // namespace ref

} // namespace hsum::census
