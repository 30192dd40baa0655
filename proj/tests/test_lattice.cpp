#include <doctest.h>

#include <gmpxx.h>

#include <algorithm>

#include "sumcover/errors.hpp"
#include "sumcover/lattice.hpp"
#include "sumcover/sampling.hpp"
#include "sumcover/sumsets.hpp"

using namespace sumcover;

TEST_CASE("column-sum lattice covering closed form") {
    for (uint32_t p : {2u, 3u, 5u}) {
        for (size_t k = 1; k <= 4; ++k) {
            for (size_t r = 1; r <= 2; ++r) {
                BlockLattice L = column_sum_lattice(p, k, r);
                CHECK(L.subspace_dim() == (k - 1) * r);
                uint64_t a = 1, b = 1;
                for (size_t i = 0; i < r; ++i) {
                    a *= k + 1;
                    b *= p;
                }
                CHECK(covering_number(L) == std::min(a, b));
                CHECK(is_p_oblique(L).oblique);
            }
        }
    }
}

TEST_CASE("covering number equals brute force on random subspaces") {
    Rng rng(67);
    for (int t = 0; t < 40; ++t) {
        uint32_t p = t % 2 ? 3 : 2;
        size_t k = 1 + rng.below(3);
        size_t r = 1 + rng.below(3);
        while (k * r > 8) --r;
        FpMatrix w = random_fp_matrix(rng, p, rng.below(k * r + 1), k * r);
        BlockLattice L(p, k, r, w);
        CHECK(covering_number(L) == covering_number_bruteforce(L));
    }
}

TEST_CASE("covering survives the integer lift") {
    Rng rng(71);
    for (int t = 0; t < 15; ++t) {
        uint32_t p = t % 2 ? 2 : 5;
        size_t k = 1 + rng.below(3);
        size_t r = 1 + rng.below(2);
        FpMatrix w = random_fp_matrix(rng, p, rng.below(k * r + 1), k * r);
        BlockLattice L(p, k, r, w);
        IntLattice lifted = lift_to_int(L);
        CHECK(covering_number(L) == covering_number(lifted));
        // round trip through the mod-p image preserves the subspace
        BlockLattice back = mod_p_image(lifted, p, k, r);
        CHECK(lattice_leq(L, back));
        CHECK(lattice_leq(back, L));
    }
}

TEST_CASE("determinant and obliqueness witnesses") {
    // W spanned by (1,0,0,0) lives inside block 1: not oblique
    FpMatrix w(3, 1, 4);
    w.set(0, 0, 1);
    BlockLattice L(3, 2, 2, w);
    ObliqueResult ob = is_p_oblique(L);
    CHECK_FALSE(ob.oblique);
    REQUIRE(ob.witness.has_value());
    // the witness is a nonzero vector of W supported on the named block
    const auto& wit = *ob.witness;
    bool nonzero = false;
    for (size_t i = 0; i < 4; ++i) {
        size_t block = i / 2;
        if (wit[i] != 0) {
            nonzero = true;
            CHECK(block == ob.witness_block);
        }
    }
    CHECK(nonzero);

    mpz_class want;  // det = p^(kr - dim W) = 3^3
    mpz_ui_pow_ui(want.get_mpz_t(), 3, 3);
    CHECK(L.det() == want);
}

TEST_CASE("kernel lattice of a basis system") {
    Rng rng(73);
    for (int t = 0; t < 25; ++t) {
        uint32_t p = t % 2 ? 3 : 5;
        size_t k = 1 + rng.below(3);
        size_t r = 1 + rng.below(2);
        BasisSystem B = random_basis_system(rng, p, k, r);
        BlockLattice L = lattice_from_bases(B);
        CHECK(L.subspace_dim() == (k - 1) * r);
        CHECK(is_p_oblique(L).oblique);

        mpz_class want;
        mpz_ui_pow_ui(want.get_mpz_t(), p, r);
        CHECK(L.det() == want);

        // membership in W is exactly phi(x) = 0
        for (int s = 0; s < 30; ++s) {
            std::vector<uint32_t> x(k * r);
            for (auto& v : x) v = static_cast<uint32_t>(rng.below(p));
            auto img = basis_map_apply(B, x);
            bool in_ker = true;
            for (uint32_t v : img) in_ker = in_ker && v == 0;
            FpMatrix row(p, 1, k * r);
            for (size_t i = 0; i < x.size(); ++i) row.set(0, i, x[i]);
            CHECK(L.gens.row_space_contains(row) == in_ker);
        }

        CHECK(covering_number(L) == star_sumset_size(B));
    }
}

TEST_CASE("star sumset of standard bases matches the column-sum lattice") {
    // B_i = identity for all i: ker(phi) is the column-sum lattice
    for (uint32_t p : {3u, 5u}) {
        for (size_t k = 1; k <= 3; ++k) {
            size_t r = 2;
            std::vector<FpMatrix> bases(k, FpMatrix::identity(p, r));
            BasisSystem B(p, r, bases);
            BlockLattice L = lattice_from_bases(B);
            BlockLattice want = column_sum_lattice(p, k, r);
            CHECK(lattice_leq(L, want));
            CHECK(lattice_leq(want, L));
            uint64_t a = 1, b = 1;
            for (size_t i = 0; i < r; ++i) {
                a *= k + 1;
                b *= p;
            }
            CHECK(star_sumset_size(B) == std::min(a, b));
        }
    }
}

TEST_CASE("int lattice construction and covering") {
    // 2 Z^2: every vertex its own class
    IntLattice dbl = int_lattice_from_columns(2, {{2, 0}, {0, 2}});
    CHECK(dbl.hnf.det == 4);
    CHECK(covering_number(dbl) == 4);

    // Z^2 itself: one class
    IntLattice unit = int_lattice_from_columns(2, {{1, 0}, {0, 1}});
    CHECK(covering_number(unit) == 1);

    // redundant generators are fine
    IntLattice redundant =
        int_lattice_from_columns(2, {{2, 0}, {0, 2}, {2, 2}});
    CHECK(redundant.hnf.det == 4);

    CHECK_THROWS_AS(int_lattice_from_columns(2, {{1, 1}}), ValidationError);
}

TEST_CASE("scale caps reject oversized walks") {
    FpMatrix w(2, 0, 26);
    BlockLattice big(2, 13, 2, w);  // dim 26 > default cube cap 24
    CHECK_THROWS_AS(covering_number(big), ScaleError);
}
