#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nxmds/error.hpp"
#include "nxmds/hashing.hpp"
#include "nxmds/rng.hpp"
#include "oracles.hpp"

using namespace nxmds;

TEST_CASE("extension degree") {
    CHECK(minimal_extension_degree(2, 9) == 3);
    CHECK(minimal_extension_degree(2, 8) == 3);
    CHECK(minimal_extension_degree(2, 10) == 4);
    CHECK(minimal_extension_degree(2, 1) == 1);
    CHECK(minimal_extension_degree(2, 3) == 1);
    CHECK(minimal_extension_degree(17, 2) == 1);
    CHECK(minimal_extension_degree(17, 8) == 2);
    CHECK(minimal_extension_degree(17, 18) == 2);
    CHECK(minimal_extension_degree(3, 2) == 1);
    CHECK(minimal_extension_degree(3, 3) == 2);
    CHECK(minimal_extension_degree(3, 4) == 2);
}

TEST_CASE("seed bit counts") {
    const CodeParams a{4, 2, 3, Field::make(5, 1)};
    CHECK(seed_bit_count(RandomnessKind::TrueRandom, a) == 9);
    const CodeParams b{4, 2, 9, Field::make(2, 1)};
    CHECK(seed_bit_count(RandomnessKind::Pseudorandom, b) == 6);
    Rng rng(1);
    CHECK(draw_prg_seed(Field::make(2, 1), 9, rng).bit_count() == 6);
}

TEST_CASE("true random vectors") {
    const Field F = Field::make(5, 1);
    Rng a(42), b(42);
    const RandomVector r1 = draw_random_vector(3, F, a);
    const RandomVector r2 = draw_random_vector(3, F, b);
    CHECK(r1.values == r2.values);
    CHECK(r1.values.size() == 3);
    CHECK(r1.kind == RandomnessKind::TrueRandom);
    CHECK(r1.bits_consumed == 9);
    CHECK(r2.stamp > r1.stamp);
    CHECK_THROWS_AS(draw_random_vector(0, F, a), Error);

    // entries are independent and uniform: chi-square over pairs
    const Field f7 = Field::make(7, 1);
    Rng rng(5);
    std::vector<double> counts(49, 0.0);
    const int draws = 49000;
    for (int i = 0; i < draws; ++i) {
        const auto r = draw_random_vector(2, f7, rng);
        counts[r.values[0].value * 7 + r.values[1].value] += 1.0;
    }
    double chi = 0.0;
    for (double c : counts) chi += (c - 1000.0) * (c - 1000.0) / 1000.0;
    CHECK(chi < oracle::chi_square_critical(48));
}

TEST_CASE("generator output matches a table-built oracle for q=2, m=3, N=4") {
    const Field F = Field::make(2, 1);
    const ExtField E(F, 3);
    const oracle::IntPoly mod = oracle::lowest_irreducible(2, 3);
    CHECK(mod == oracle::IntPoly{1, 1, 0, 1});
    const oracle::TableField T(2, 3, mod);
    for (std::uint64_t x = 0; x < 8; ++x) {
        for (std::uint64_t y = 0; y < 8; ++y) {
            const PrgSeed seed{E, E.element_at(x), E.element_at(y)};
            REQUIRE(E.index_of(seed.x) == x);
            const RandomVector r = prg_expand(seed, 4);
            CHECK(r.kind == RandomnessKind::Pseudorandom);
            CHECK(r.bits_consumed == 6);
            std::uint64_t power = 1;
            for (std::size_t i = 0; i < 4; ++i) {
                // inner product of the bit vectors of x^i and y
                const std::uint64_t dot = static_cast<std::uint64_t>(__builtin_popcountll(power & y) & 1);
                CHECK(r.values[i].value == dot);
                power = T.mul(power, x);
            }
        }
    }
}

TEST_CASE("generator over a non-binary base") {
    const Field F = Field::make(3, 1);
    const ExtField E(F, 2);
    const oracle::TableField T(3, 2, oracle::lowest_irreducible(3, 2));
    for (std::uint64_t x = 0; x < 9; ++x) {
        for (std::uint64_t y = 0; y < 9; ++y) {
            const RandomVector r = prg_expand(PrgSeed{E, E.element_at(x), E.element_at(y)}, 4);
            std::uint64_t power = 1;
            const auto cy = oracle::unpack(y, 3, 2);
            for (std::size_t i = 0; i < 4; ++i) {
                const auto cp = oracle::unpack(power, 3, 2);
                CHECK(r.values[i].value == static_cast<std::uint64_t>((cp[0] * cy[0] + cp[1] * cy[1]) % 3));
                power = T.mul(power, x);
            }
        }
    }
}

TEST_CASE("generator rejects a short extension") {
    const Field F = Field::make(2, 1);
    Rng rng(3);
    const PrgSeed seed = draw_prg_seed(F, 9, rng);
    CHECK(seed.ext.degree() == 3);
    CHECK_NOTHROW(prg_expand(seed, 9));
    try {
        prg_expand(seed, 10);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ExtensionTooSmall);
    }
}

TEST_CASE("generator linear tests have small bias") {
    // direct enumeration of every seed and every nonzero test for small cases
    for (auto [q, N] : std::vector<std::pair<std::uint64_t, std::size_t>>{{2, 3}, {2, 5}, {2, 6}, {3, 3}, {3, 4}}) {
        CAPTURE(q);
        CAPTURE(N);
        const Field F = Field::from_order(q);
        const unsigned m = minimal_extension_degree(q, N);
        const ExtField E(F, m);
        const std::uint64_t order = E.order();
        std::vector<std::vector<Elem>> outputs;
        for (std::uint64_t x = 0; x < order; ++x)
            for (std::uint64_t y = 0; y < order; ++y)
                outputs.push_back(prg_expand(PrgSeed{E, E.element_at(x), E.element_at(y)}, N).values);
        const double bound = static_cast<double>((q - 1) * (N - 1)) / static_cast<double>(order);
        std::uint64_t betas = 1;
        for (std::size_t i = 0; i < N; ++i) betas *= q;
        for (std::uint64_t bi = 1; bi < betas; ++bi) {
            std::vector<std::uint64_t> beta(N);
            std::uint64_t v = bi;
            for (auto& b : beta) {
                b = v % q;
                v /= q;
            }
            std::vector<std::uint64_t> hist(q, 0);
            for (const auto& out : outputs) {
                std::uint64_t s = 0;
                for (std::size_t i = 0; i < N; ++i) s = (s + beta[i] * out[i].value) % q;
                ++hist[s];
            }
            for (std::uint64_t c = 0; c < q; ++c) {
                // test value beta.r + c is zero when beta.r = -c
                const std::uint64_t zeros = hist[(q - c) % q];
                const double p0 = static_cast<double>(zeros) / static_cast<double>(outputs.size());
                const double bias = static_cast<double>(q - 1) * p0 - (1.0 - p0);
                REQUIRE(std::abs(bias) <= bound + 1e-12);
                REQUIRE(p0 <= 2.0 / static_cast<double>(q) + 1e-12);
            }
        }
    }
}

TEST_CASE("node hashes") {
    const Field F = Field::make(5, 1);
    Matrix content(2, 3);
    const std::uint64_t e[2][3] = {{1, 2, 3}, {4, 4, 4}};
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 3; ++c) content.at(r, c) = Elem{e[r][c]};
    const RandomVector ones = RandomVector::fixed(F, {Elem{1}, Elem{1}, Elem{1}});
    CHECK(node_hash(F, content, ones) == std::vector<Elem>{Elem{1}, Elem{2}});
    CHECK(node_hash(F, Matrix(2, 3), ones) == std::vector<Elem>{Elem{0}, Elem{0}});
    CHECK_THROWS_AS(node_hash(F, Matrix(2, 4), ones), Error);
    CHECK_THROWS_AS(RandomVector::fixed(F, {Elem{5}}), Error);
}

TEST_CASE("hashing commutes with encoding") {
    for (std::uint64_t q : {5ULL, 8ULL, 257ULL}) {
        const Field F = Field::from_order(q);
        const MdsCode code = MdsCode::make(4, 2, F, 6);
        const MdsCode single = MdsCode::make(4, 2, F, 1);
        Rng rng(q);
        for (int trial = 0; trial < 20; ++trial) {
            const Matrix x = Matrix::random(F, 4, 6, rng);
            const RandomVector r = draw_random_vector(6, F, rng);
            const Matrix gx = code.encode(x);
            const auto lhs = node_hash(F, gx, r);
            const auto xr = linalg::multiply(F, x, r.values);
            Matrix xr_m(4, 1);
            for (std::size_t i = 0; i < 4; ++i) xr_m.at(i, 0) = xr[i];
            const Matrix rhs = single.encode(xr_m);
            CHECK(std::vector<Elem>(rhs.data().begin(), rhs.data().end()) == lhs);
        }
    }
}
