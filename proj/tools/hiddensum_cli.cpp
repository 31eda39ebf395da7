// Command-line front end: one binary with subcommands for counting
// operations, validating and evaluating them, solving the linearization
// system, wall checking, and the black-box reconstruction demo.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include "hiddensum/attack.hpp"
#include "hiddensum/census.hpp"
#include "hiddensum/hidden_sum.hpp"
#include "hiddensum/linearize.hpp"
#include "hiddensum/tbcipher.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

bool records = false;

std::string exact_str(const hsum::census::CountReport& r) {
    return r.exact ? r.exact->get_str() : "-";
}

void census_table_header() {
    if (!records)
        std::cout << std::setw(4) << "n" << std::setw(4) << "d" << std::setw(20)
                  << "exact" << std::setw(20) << "nu" << std::setw(20) << "mu"
                  << "  method\n";
}

void census_table_row(const hsum::census::CountReport& r) {
    if (records) {
        std::cout << "n=" << r.n << " d=" << r.d << " exact=" << exact_str(r)
                  << " nu=" << r.nu << " mu=" << r.mu
                  << " method=" << hsum::census::to_string(r.method)
                  << " flagged=" << (r.flagged ? 1 : 0) << "\n";
        return;
    }
    std::cout << std::setw(4) << r.n << std::setw(4) << r.d << std::setw(20)
              << exact_str(r) << std::setw(20) << r.nu << std::setw(20) << r.mu
              << "  " << hsum::census::to_string(r.method);
    if (r.flagged)
        std::cout << "  [flagged: exact outside bounds]";
    if (!r.note.empty() && !r.flagged)
        std::cout << "  (" << r.note << ")";
    std::cout << "\n";
}

void run_census(unsigned n, unsigned d, unsigned n_to, unsigned d_to, bool exact,
                bool ratio, unsigned total, std::uint64_t budget) {
    if (total) {
        auto rep = hsum::census::total_count(total, budget);
        double log2total = 0.0;
        if (rep.total > 0)
            log2total = std::log2(rep.total.get_d());
        for (const auto& term : rep.terms) {
            if (records)
                std::cout << "N=" << rep.N << " d=" << term.d
                          << " subspaces=" << term.binom << " count=" << term.count
                          << " term=" << term.term << "\n";
            else
                std::cout << "  d=" << term.d << ": " << term.binom << " * "
                          << term.count << " = " << term.term << "\n";
        }
        if (records)
            std::cout << "N=" << rep.N << " total=" << rep.total << "\n";
        else
            std::cout << "total for N=" << rep.N << ": " << rep.total
                      << "  (log2 ~ " << std::fixed << std::setprecision(2)
                      << log2total << ")\n";
        return;
    }
    if (n < 2 || d < 1)
        throw hsum::ParseError("census: --n and --d required (or --total N)");
    if (n_to < n)
        n_to = n;
    if (d_to < d)
        d_to = d;
    if (ratio) {
        for (unsigned nn = n; nn <= n_to; ++nn)
            for (unsigned dd = d; dd <= d_to; ++dd) {
                auto rep = hsum::census::ratio_bound_check(nn, dd);
                if (records)
                    std::cout << "n=" << rep.n << " d=" << rep.d
                              << " ratio=" << rep.ratio
                              << " bound_lower=" << rep.bound_lower
                              << " bound_upper=" << rep.bound_upper
                              << " pass=" << (rep.pass ? 1 : 0) << "\n";
                else
                    std::cout << "ratio (" << rep.n << "," << rep.d
                              << "): mu/nu = " << rep.ratio << ", bound in ["
                              << rep.bound_lower << ", " << rep.bound_upper
                              << "], " << (rep.pass ? "pass" : "FAIL") << "\n";
            }
        return;
    }
    census_table_header();
    for (unsigned nn = n; nn <= n_to; ++nn)
        for (unsigned dd = d; dd <= d_to; ++dd)
            census_table_row(exact ? hsum::census::brute_force_count(nn, dd, budget)
                                   : hsum::census::count_report(nn, dd, budget));
}

void run_validate(const std::string& file, bool echo) {
    auto hs = hsum::read_hidden_sum_file(file);
    if (echo) {
        hsum::write_hidden_sum(std::cout, hs);
        return;
    }
    auto rep = hsum::validate(hs);
    if (records) {
        std::cout << "n=" << hs.n << " d=" << hs.d << " N=" << hs.dim()
                  << " symmetric=" << rep.symmetric
                  << " zero_diagonal=" << rep.zero_diagonal
                  << " nontrivial=" << rep.nontrivial << " rank=" << rep.bfrak_rank
                  << " dim_u=" << rep.dim_u << " exact_dim_u=" << rep.exact_dim_u
                  << " practical=" << rep.is_practical_hidden_sum << "\n";
        return;
    }
    auto yesno = [](bool v) { return v ? "yes" : "no"; };
    std::cout << "n=" << hs.n << " d=" << hs.d << " N=" << hs.dim() << "\n"
              << "symmetric: " << yesno(rep.symmetric) << "\n"
              << "zero diagonal: " << yesno(rep.zero_diagonal) << "\n"
              << "nontrivial: " << yesno(rep.nontrivial) << "\n"
              << "rank of the grid: " << rep.bfrak_rank << "\n"
              << "dim U: " << rep.dim_u << "\n"
              << "dim U exactly d: " << yesno(rep.exact_dim_u) << "\n"
              << "practical hidden sum: " << yesno(rep.is_practical_hidden_sum)
              << "\n";
}

hsum::gf2::BitVector parse_vector(const std::string& bits, std::size_t want,
                                  const char* what) {
    auto v = hsum::gf2::BitVector::from_string(bits);
    if (v.size() != want)
        throw hsum::ParseError(std::string(what) + " must have length " +
                               std::to_string(want));
    return v;
}

void run_add(const std::string& file, const std::string& xs, const std::string& ys) {
    auto hs = hsum::read_hidden_sum_file(file);
    auto x = parse_vector(xs, hs.dim(), "x");
    auto y = parse_vector(ys, hs.dim(), "y");
    auto sum = hsum::circ_add(hs, x, y);
    if (records)
        std::cout << "sum=" << sum.to_string() << "\n";
    else
        std::cout << sum.to_string() << "\n";
}

void run_decompose(const std::string& file, const std::string& vs) {
    auto hs = hsum::read_hidden_sum_file(file);
    auto v = parse_vector(vs, hs.dim(), "v");
    auto coeff = hsum::decompose(hs, v);
    if (records)
        std::cout << "coefficients=" << coeff.to_string() << "\n";
    else
        std::cout << coeff.to_string() << "\n";
}

std::string grid_record(const hsum::HiddenSum& hs) {
    std::string grid = hsum::format_bfrak_compact(hs);
    for (char& ch : grid) {
        if (ch == ' ')
            ch = ',';
        else if (ch == '\n')
            ch = ';';
    }
    if (!grid.empty() && grid.back() == ';')
        grid.pop_back();
    return grid;
}

void emit_samples(const hsum::SolutionBasis& sol, std::size_t count,
                  std::uint64_t seed, bool full_rank_only) {
    if (!count)
        return;
    if (records)
        std::cout << "sample_count=" << count << " seed=" << seed
                  << " full_rank_only=" << (full_rank_only ? 1 : 0) << "\n";
    else
        std::cout << "sampling " << count << " operation(s), seed " << seed
                  << (full_rank_only ? ", full rank only" : "") << "\n";
    auto samples = hsum::sample_solutions(sol, count, seed, full_rank_only);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        bool full = hsum::validate(samples[k]).exact_dim_u;
        if (records)
            std::cout << "sample=" << (k + 1) << " full_rank=" << (full ? 1 : 0)
                      << " grid=" << grid_record(samples[k]) << "\n";
        else
            std::cout << "sample " << (k + 1) << (full ? " (full rank)" : "")
                      << ":\n"
                      << hsum::format_bfrak_compact(samples[k]);
    }
}

void run_linearize(const std::string& lambda_file, const std::string& pi_file,
                   unsigned n, unsigned d, std::size_t sample, std::uint64_t seed,
                   bool full_rank_only, const std::string& emit_basis) {
    auto lam = hsum::gf2::read_matrix_file(lambda_file);
    hsum::gf2::BitMatrix pi = pi_file.empty()
                                  ? hsum::gf2::BitMatrix::identity(std::size_t(n) + d)
                                  : hsum::gf2::read_matrix_file(pi_file);
    auto res = hsum::linearize(lam, pi, n, d);
    std::size_t vars = std::size_t(n) * n * d;
    std::size_t rows = vars + std::size_t(n) * (n + 1) / 2 * d;
    if (records)
        std::cout << "n=" << n << " d=" << d << " rows=" << rows << " cols=" << vars
                  << " l=" << res.sol.dimension() << "\n";
    else
        std::cout << "system: " << rows << " x " << vars << "\n"
                  << "kernel dimension: " << res.sol.dimension() << "\n"
                  << "elapsed seconds: " << std::fixed << std::setprecision(3)
                  << res.seconds << "\n";
    if (!emit_basis.empty()) {
        hsum::write_basis_file(emit_basis, res.sol);
        if (records)
            std::cout << "basis_file=" << emit_basis << "\n";
        else
            std::cout << "basis written to " << emit_basis << "\n";
    }
    emit_samples(res.sol, sample, seed, full_rank_only);
}

void run_proper(const std::string& lambda_file, unsigned bricks, unsigned width) {
    auto lam = hsum::gf2::read_matrix_file(lambda_file);
    auto rep = hsum::is_proper_mixing_layer(lam, bricks, width);
    if (records) {
        std::cout << "proper=" << (rep.proper ? 1 : 0)
                  << " walls_checked=" << rep.walls_checked << " witness=";
        for (std::size_t k = 0; k < rep.witness.size(); ++k)
            std::cout << (k ? "," : "") << rep.witness[k];
        std::cout << "\n";
        return;
    }
    std::cout << "proper mixing layer: " << (rep.proper ? "yes" : "no") << "\n"
              << "walls checked: " << rep.walls_checked << "\n";
    if (!rep.proper) {
        std::cout << "invariant wall:";
        for (unsigned b : rep.witness)
            std::cout << ' ' << b;
        std::cout << "\n";
    }
}

void run_present(const std::string& emit_lambda, const std::string& emit_pi,
                 bool repro) {
    if (emit_lambda.empty() && emit_pi.empty() && !repro)
        throw hsum::ParseError(
            "present: nothing to do; pass --repro or --emit-lambda/--emit-pi");
    if (!emit_lambda.empty()) {
        hsum::gf2::write_matrix_file(emit_lambda, hsum::present_mixing_layer());
        if (records)
            std::cout << "lambda_file=" << emit_lambda << "\n";
        else
            std::cout << "mixing layer written to " << emit_lambda << "\n";
    }
    if (!emit_pi.empty()) {
        hsum::gf2::write_matrix_file(emit_pi, hsum::present_pi());
        if (records)
            std::cout << "pi_file=" << emit_pi << "\n";
        else
            std::cout << "conjugator written to " << emit_pi << "\n";
    }
    if (!repro)
        return;
    auto res = hsum::linearize(hsum::present_mixing_layer(), hsum::present_pi(), 60, 4);
    bool tail_identity = res.blocks.lambda3 == hsum::gf2::BitMatrix::identity(4);
    bool mix_zero = res.blocks.lambda2 == hsum::gf2::BitMatrix(60, 4);
    if (records) {
        std::cout << "l=" << res.sol.dimension() << " tail_identity=" << tail_identity
                  << " upper_right_zero=" << mix_zero << "\n";
        return;
    }
    std::cout << "kernel dimension: " << res.sol.dimension() << "\n"
              << "tail block is the identity: " << (tail_identity ? "yes" : "no")
              << "\n"
              << "upper-right block is zero: " << (mix_zero ? "yes" : "no") << "\n"
              << "elapsed seconds: " << std::fixed << std::setprecision(3)
              << res.seconds << "\n";
}

void run_attack_demo(unsigned n, unsigned d, std::uint64_t seed, bool exhaustive,
                     std::size_t samples) {
    auto hs = hsum::random_hidden_sum(n, d, seed);
    auto oracle = hsum::random_circ_affine_map(hs, seed ^ 0x9e3779b97f4a7c15ull);
    auto boxed = [&oracle](const hsum::gf2::BitVector& x) { return oracle(x); };
    auto m = hsum::reconstruct(boxed, hs);
    std::size_t queries = oracle.query_count;
    auto rep = hsum::verify_reconstruction(
        boxed, m, exhaustive ? hsum::VerifyMode::exhaustive : hsum::VerifyMode::sampled,
        seed + 1, samples);
    if (records) {
        std::cout << "seed=" << seed << " n=" << n << " d=" << d << " N=" << hs.dim()
                  << " queries=" << queries
                  << " mode=" << (exhaustive ? "exhaustive" : "sampled")
                  << " checked=" << rep.checked << " mismatches=" << rep.mismatches
                  << " agreement=" << rep.agreement << "\n";
        return;
    }
    std::cout << "seed: " << seed << "\n"
              << "dimensions: n=" << n << " d=" << d << " N=" << hs.dim() << "\n"
              << "queries: " << queries << "\n"
              << "mode: " << (exhaustive ? "exhaustive" : "sampled") << "\n"
              << "checked: " << rep.checked << "\n"
              << "agreement: " << rep.agreement << "\n";
    if (rep.counterexample)
        std::cout << "counterexample: " << rep.counterexample->to_string() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"practical hidden sums: counting, linearization, and reconstruction"};
    app.require_subcommand(1);

    std::string output = "human";
    app.add_option("--output", output, "human or records")
        ->check(CLI::IsMember({"human", "records"}));
    int threads = 0;
    app.add_option("--threads", threads, "cap the OpenMP worker count");

    std::uint64_t budget = hsum::census::DEFAULT_BUDGET;
    if (const char* env = std::getenv("HIDDENSUM_BUDGET")) {
        std::string text(env);
        std::uint64_t value = 0;
        bool ok = !text.empty() && text.size() <= 19;
        for (char ch : text) {
            if (ch < '0' || ch > '9') {
                ok = false;
                break;
            }
            value = value * 10 + std::uint64_t(ch - '0');
        }
        if (!ok || value == 0) {
            std::cerr << "error: HIDDENSUM_BUDGET must be a positive integer\n";
            return 2;
        }
        budget = value;
    }

    auto* census_cmd =
        app.add_subcommand("census", "count operations: bounds, closed forms, enumeration");
    unsigned c_n = 0, c_d = 0, c_n_to = 0, c_d_to = 0, c_total = 0;
    bool c_exact = false, c_ratio = false;
    census_cmd->add_option("--n", c_n, "head dimension");
    census_cmd->add_option("--d", c_d, "tail dimension");
    census_cmd->add_option("--n-to", c_n_to, "sweep n up to this value");
    census_cmd->add_option("--d-to", c_d_to, "sweep d up to this value");
    census_cmd->add_flag("--exact", c_exact, "force exact enumeration");
    census_cmd->add_flag("--ratio", c_ratio, "check the bound ratio instead");
    census_cmd->add_option("--total", c_total,
                           "total over all splittings of this ambient dimension");
    census_cmd->add_option("--budget", budget, "candidate cap for enumeration");

    auto* validate_cmd =
        app.add_subcommand("validate", "check the defining conditions of an operation file");
    std::string v_file;
    bool v_echo = false;
    validate_cmd->add_option("file", v_file, "operation file")->required();
    validate_cmd->add_flag("--echo", v_echo, "re-serialize the file to stdout instead");

    auto* add_cmd = app.add_subcommand("add", "apply the operation to two vectors");
    std::string a_file, a_x, a_y;
    add_cmd->add_option("--file", a_file, "operation file")->required();
    add_cmd->add_option("x", a_x, "first vector, as bits")->required();
    add_cmd->add_option("y", a_y, "second vector, as bits")->required();

    auto* dec_cmd =
        app.add_subcommand("decompose", "coordinates of a vector in the operation basis");
    std::string dc_file, dc_v;
    dec_cmd->add_option("--file", dc_file, "operation file")->required();
    dec_cmd->add_option("v", dc_v, "vector, as bits")->required();

    auto* lin_cmd =
        app.add_subcommand("linearize", "solve for all operations a block map respects");
    std::string l_lambda, l_pi, l_emit_basis;
    unsigned l_n = 0, l_d = 0;
    std::size_t l_sample = 0;
    std::uint64_t l_seed = 1;
    bool l_full_rank = false;
    lin_cmd->add_option("--lambda", l_lambda, "matrix file")->required();
    lin_cmd->add_option("--pi", l_pi, "conjugator matrix file (default identity)");
    lin_cmd->add_option("--n", l_n, "head dimension")->required();
    lin_cmd->add_option("--d", l_d, "tail dimension")->required();
    lin_cmd->add_option("--sample", l_sample, "print this many sampled solutions");
    lin_cmd->add_option("--seed", l_seed, "sampling seed (default 1)");
    lin_cmd->add_flag("--full-rank-only", l_full_rank, "reject rank-deficient samples");
    lin_cmd->add_option("--emit-basis", l_emit_basis, "write the kernel basis here");

    auto* proper_cmd =
        app.add_subcommand("proper", "scan a mixing layer for invariant walls");
    std::string p_lambda;
    unsigned p_bricks = 0, p_width = 0;
    proper_cmd->add_option("--lambda", p_lambda, "matrix file")->required();
    proper_cmd->add_option("--bricks", p_bricks, "brick count")->required();
    proper_cmd->add_option("--brick-size", p_width, "brick width")->required();

    auto* present_cmd =
        app.add_subcommand("present", "the studied 64-bit mixing layer and its kernel");
    std::string pr_lambda, pr_pi;
    bool pr_repro = false;
    present_cmd->add_option("--emit-lambda", pr_lambda, "write the mixing layer here");
    present_cmd->add_option("--emit-pi", pr_pi, "write the conjugator here");
    present_cmd->add_flag("--repro", pr_repro, "run the full kernel computation");

    auto* demo_cmd =
        app.add_subcommand("attack-demo", "reconstruct a random black box and verify");
    unsigned ad_n = 0, ad_d = 0;
    std::uint64_t ad_seed = 1;
    bool ad_exhaustive = false;
    std::size_t ad_samples = 10000;
    demo_cmd->add_option("--n", ad_n, "head dimension")->required();
    demo_cmd->add_option("--d", ad_d, "tail dimension")->required();
    demo_cmd->add_option("--seed", ad_seed, "seed (default 1)");
    demo_cmd->add_flag("--exhaustive", ad_exhaustive, "verify on every input");
    demo_cmd->add_option("--samples", ad_samples,
                         "sampled-mode verification size (default 10000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    records = output == "records";
#ifdef _OPENMP
    if (threads > 0)
        omp_set_num_threads(threads);
#endif

    try {
        if (census_cmd->parsed())
            run_census(c_n, c_d, c_n_to, c_d_to, c_exact, c_ratio, c_total, budget);
        else if (validate_cmd->parsed())
            run_validate(v_file, v_echo);
        else if (add_cmd->parsed())
            run_add(a_file, a_x, a_y);
        else if (dec_cmd->parsed())
            run_decompose(dc_file, dc_v);
        else if (lin_cmd->parsed())
            run_linearize(l_lambda, l_pi, l_n, l_d, l_sample, l_seed, l_full_rank,
                          l_emit_basis);
        else if (proper_cmd->parsed())
            run_proper(p_lambda, p_bricks, p_width);
        else if (present_cmd->parsed())
            run_present(pr_lambda, pr_pi, pr_repro);
        else if (demo_cmd->parsed())
            run_attack_demo(ad_n, ad_d, ad_seed, ad_exhaustive, ad_samples);
    } catch (const hsum::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hsum::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
