#include <doctest.h>

#include <algorithm>

#include "sumcover/errors.hpp"
#include "sumcover/lattice.hpp"
#include "sumcover/sampling.hpp"
#include "sumcover/synthesis.hpp"

using namespace sumcover;

TEST_CASE("row relations annihilate the block columns") {
    Rng rng(79);
    for (int t = 0; t < 25; ++t) {
        uint32_t p = t % 2 ? 3 : 5;
        size_t k = 2 + rng.below(3);
        size_t r = 1 + rng.below(2);
        BlockLattice L = random_oblique_lattice(rng, p, k, r);
        auto Ls = lattice_block_columns(L);
        REQUIRE(Ls.size() == k);
        RowRelations rel = find_row_relations(Ls);
        REQUIRE(rel.ok);
        for (size_t i = 0; i < k; ++i) {
            // sum_j A_ij L_j = 0, with A_ii = -I
            FpMatrix acc(p, r, Ls[0].cols());
            for (size_t j = 0; j < k; ++j) acc = acc.add(rel.A[i][j].mul(Ls[j]));
            CHECK(acc.is_zero());
            CHECK(rel.A[i][i] == FpMatrix::identity(p, r).neg());
        }
    }
}

TEST_CASE("row relations fail on a non-oblique lattice") {
    // W = span{(1,0,0,0)}: block 1's column space exceeds block 2's
    FpMatrix w(3, 1, 4);
    w.set(0, 0, 1);
    BlockLattice L(3, 2, 2, w);
    RowRelations rel = find_row_relations(lattice_block_columns(L));
    CHECK_FALSE(rel.ok);
}

TEST_CASE("mixing matrices make every combination invertible") {
    Rng rng(83);
    for (int t = 0; t < 25; ++t) {
        uint32_t p = t % 2 ? 5 : 7;
        size_t k = 2 + rng.below(std::min<size_t>(p, 4) - 1);
        size_t r = 1 + rng.below(3);
        BlockLattice L = random_oblique_lattice(rng, p, k, r);
        RowRelations rel = find_row_relations(lattice_block_columns(L));
        REQUIRE(rel.ok);
        auto M = find_mixing_matrices(rel.A, p, r, rng.next());
        REQUIRE(M.size() == k);
        for (size_t j = 0; j < k; ++j) {
            FpMatrix bj(p, r, r);
            for (size_t i = 0; i < k; ++i) bj = bj.add(M[i].mul(rel.A[i][j]));
            CHECK(bj.det() != 0);
        }
    }
}

TEST_CASE("full synthesis pipeline certificate") {
    Rng rng(89);
    for (int t = 0; t < 20; ++t) {
        uint32_t p = t % 2 ? 3 : 5;
        size_t k = 2 + rng.below(p - 1);
        size_t r = 1 + rng.below(2);
        BlockLattice L = random_oblique_lattice(rng, p, k, r);
        SynthesisResult out = bases_from_lattice(L, rng.next());
        CHECK(out.contains_input);
        CHECK(out.kernel_oblique);
        CHECK(out.bases.k == k);
        CHECK(covering_number(out.kernel) <= covering_number(L));
        // synthesis is deterministic per seed
        SynthesisResult again = bases_from_lattice(L, 12345);
        SynthesisResult again2 = bases_from_lattice(L, 12345);
        for (size_t i = 0; i < k; ++i)
            CHECK(again.bases.bases[i] == again2.bases.bases[i]);
    }
}

TEST_CASE("synthesis on the column-sum lattice") {
    BlockLattice L = column_sum_lattice(3, 2, 1);
    SynthesisResult out = bases_from_lattice(L, 1);
    CHECK(out.contains_input);
    CHECK(out.kernel_oblique);
    CHECK(covering_number(out.kernel) <= covering_number(L));
}

TEST_CASE("synthesis rejects non-oblique and oversized k") {
    FpMatrix w(3, 1, 4);
    w.set(0, 0, 1);
    BlockLattice bad(3, 2, 2, w);
    CHECK_THROWS_AS(bases_from_lattice(bad, 1), ValidationError);

    Rng rng(97);
    BlockLattice big = random_oblique_lattice(rng, 3, 4, 1);  // k=4 > p=3
    CHECK_THROWS_AS(bases_from_lattice(big, 1), ValidationError);
}
