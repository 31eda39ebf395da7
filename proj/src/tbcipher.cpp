#include "hiddensum/tbcipher.hpp"

#include <bit>
#include <string>

namespace hsum {

void validate_spec(const TbCipherSpec& spec) {
    if (spec.m < 1 || spec.b < 1)
        throw DimensionError("cipher spec: brick width and count must be positive");
    if (spec.m > 20)
        throw DimensionError("cipher spec: brick width above 20 is not supported");
    if (spec.rounds.empty())
        throw DimensionError("cipher spec: at least one round required");
    std::size_t N = spec.dim();
    std::size_t table = std::size_t(1) << spec.m;
    for (std::size_t r = 0; r < spec.rounds.size(); ++r) {
        const TbRound& round = spec.rounds[r];
        std::string where = "cipher spec: round " + std::to_string(r + 1);
        if (round.sboxes.size() != spec.b)
            throw DimensionError(where + " needs one S-box per brick");
        for (const SboxTable& box : round.sboxes) {
            if (box.size() != table)
                throw DimensionError(where + " has an S-box of wrong size");
            std::vector<bool> seen(table, false);
            for (std::uint32_t v : box) {
                if (v >= table || seen[v])
                    throw DimensionError(where + " has a non-bijective S-box");
                seen[v] = true;
            }
        }
        if (round.lambda.rows() != N || round.lambda.cols() != N)
            throw DimensionError(where + " mixing layer must be N x N");
        if (gf2::rank(round.lambda) != N)
            throw SingularError(where + " mixing layer is singular");
        if (round.key.size() != N)
            throw DimensionError(where + " key must have length N");
    }
}

gf2::BitVector encrypt(const TbCipherSpec& spec, const gf2::BitVector& x) {
    validate_spec(spec);
    std::size_t N = spec.dim();
    if (x.size() != N)
        throw DimensionError("encrypt: input must have length N");
    gf2::BitVector state = x;
    for (const TbRound& round : spec.rounds) {
        gf2::BitVector mixed(N);
        for (unsigned i = 0; i < spec.b; ++i) {
            std::uint32_t in = 0;
            for (unsigned k = 0; k < spec.m; ++k)
                if (state.get(std::size_t(i) * spec.m + k))
                    in |= std::uint32_t(1) << k;
            std::uint32_t out = round.sboxes[i][in];
            for (unsigned k = 0; k < spec.m; ++k)
                if ((out >> k) & 1u)
                    mixed.set(std::size_t(i) * spec.m + k, true);
        }
        state = gf2::mat_vec_mul(mixed, round.lambda);
        state ^= round.key;
    }
    return state;
}

std::vector<std::size_t> present_mixing_images() {
    return {1,  17, 33, 49, 2,  18, 34, 50, 3,  19, 35, 51, 4,  20, 36, 52,
            5,  21, 37, 53, 6,  22, 38, 54, 7,  23, 39, 55, 8,  24, 40, 56,
            9,  25, 41, 57, 10, 26, 42, 58, 11, 27, 43, 59, 12, 28, 44, 60,
            13, 29, 45, 61, 14, 30, 46, 62, 15, 31, 47, 63, 16, 32, 48, 64};
}

gf2::BitMatrix present_mixing_layer() {
    return gf2::permutation_to_matrix(present_mixing_images());
}

gf2::BitMatrix present_pi() {
    std::vector<std::size_t> image(64);
    for (std::size_t i = 0; i < 64; ++i)
        image[i] = i + 1;
    image[0] = 61;
    image[60] = 1;
    image[21] = 62;
    image[61] = 22;
    image[42] = 63;
    image[62] = 43;
    return gf2::permutation_to_matrix(image);
}

WallReport is_proper_mixing_layer(const gf2::BitMatrix& lam, unsigned b, unsigned m) {
    if (b < 1 || m < 1)
        throw DimensionError("wall check: brick width and count must be positive");
    if (b > 24)
        throw BudgetError("wall check would scan 2^" + std::to_string(b) +
                          " subsets; refusing above 2^24");
    std::size_t N = std::size_t(b) * m;
    if (lam.rows() != N || lam.cols() != N)
        throw DimensionError("wall check: matrix must be (b*m) x (b*m)");
    if (gf2::rank(lam) != N)
        throw SingularError("wall check: mixing layer is singular");

    // bricks reached by each brick's basis vectors under the map
    std::vector<std::uint32_t> out(b, 0);
    for (unsigned i = 0; i < b; ++i)
        for (unsigned k = 0; k < m; ++k) {
            gf2::BitVector img =
                gf2::mat_vec_mul(gf2::BitVector::unit(N, std::size_t(i) * m + k), lam);
            for (std::size_t c = 0; c < N; ++c)
                if (img.get(c))
                    out[i] |= std::uint32_t(1) << (c / m);
        }

    WallReport report;
    std::uint32_t all = (b == 32) ? ~std::uint32_t(0) : (std::uint32_t(1) << b) - 1;
    for (std::uint32_t wall = 1; wall < all; ++wall) {
        ++report.walls_checked;
        bool invariant = true;
        for (std::uint32_t rest = wall; rest && invariant;) {
            unsigned i = unsigned(std::countr_zero(rest));
            rest &= rest - 1;
            if (out[i] & ~wall)
                invariant = false;
        }
        if (invariant) {
            for (unsigned i = 0; i < b; ++i)
                if ((wall >> i) & 1u)
                    report.witness.push_back(i + 1);
            return report;
        }
    }
    report.proper = true;
    return report;
}

gf2::BitVector CircAffineOracle::operator()(const gf2::BitVector& x) const {
    ++query_count;
    CoeffVector alpha = decompose(hs, x);
    gf2::BitVector image = recompose(hs, gf2::mat_vec_mul(alpha, coeff_matrix));
    return circ_add(hs, image, translation);
}

std::vector<gf2::BitVector> CircAffineOracle::truth_basis_images() const {
    std::vector<gf2::BitVector> images;
    for (std::size_t i = 0; i < coeff_matrix.rows(); ++i)
        images.push_back(recompose(hs, coeff_matrix.row(i)));
    return images;
}

CircAffineOracle random_circ_affine_map(const HiddenSum& hs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::size_t N = hs.dim();
    CircAffineOracle oracle;
    oracle.hs = hs;
    for (;;) {
        std::vector<gf2::BitVector> rows;
        for (std::size_t r = 0; r < N; ++r)
            rows.push_back(gf2::random_vector(N, rng));
        auto m = gf2::BitMatrix::from_rows(rows);
        if (gf2::rank(m) == N) {
            oracle.coeff_matrix = std::move(m);
            break;
        }
    }
    oracle.translation = gf2::random_vector(N, rng);
    return oracle;
}

} // namespace hsum
