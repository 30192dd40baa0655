#include <doctest.h>

#include <gmpxx.h>

#include "sumcover/errors.hpp"
#include "sumcover/linalg.hpp"
#include "sumcover/sampling.hpp"

using namespace sumcover;

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(2147483647ull));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));        // Carmichael
    CHECK_FALSE(is_prime(1ull << 40));
    CHECK(fp_inv(3, 7) == 5);
    CHECK_THROWS_AS(FpMatrix(6, 2, 2), ValidationError);
}

TEST_CASE("rref, rank, det, inverse") {
    Rng rng(17);
    for (uint32_t p : {2u, 3u, 5u, 7u}) {
        for (int t = 0; t < 30; ++t) {
            size_t n = 1 + rng.below(5);
            FpMatrix m = random_fp_matrix(rng, p, n, n);
            auto rr = m.rref();
            // transform really is the row operation: transform * m == rref
            CHECK(rr.transform.mul(m) == rr.mat);
            CHECK(rr.pivots.size() == m.rank());

            uint32_t d = m.det();
            if (d == 0) {
                CHECK(m.rank() < n);
                CHECK_FALSE(m.inverse().has_value());
            } else {
                CHECK(m.rank() == n);
                auto inv = m.inverse();
                REQUIRE(inv.has_value());
                CHECK(inv->mul(m) == FpMatrix::identity(p, n));
                // det multiplicativity against the inverse
                uint32_t di = inv->det();
                CHECK(uint64_t(d) * di % p == 1);
            }
        }
    }
}

TEST_CASE("solve_left and nullspaces") {
    Rng rng(19);
    for (int t = 0; t < 40; ++t) {
        uint32_t p = t % 2 ? 3 : 5;
        size_t rows = 1 + rng.below(4), cols = 1 + rng.below(5);
        FpMatrix m = random_fp_matrix(rng, p, rows, cols);

        // anything of the form X*m is solvable, and the solution reproduces it
        FpMatrix x = random_fp_matrix(rng, p, 2, rows);
        auto sol = m.solve_left(x.mul(m));
        REQUIRE(sol.has_value());
        CHECK(sol->mul(m) == x.mul(m));

        FpMatrix ns = m.right_nullspace();
        CHECK(ns.rows() == cols - m.rank());
        if (ns.rows() > 0) CHECK(m.mul(ns.transpose()).is_zero());
        // nullspace rows are independent by construction
        CHECK(ns.rank() == ns.rows());
    }
}

TEST_CASE("rank over Q") {
    std::vector<std::vector<mpq_class>> vecs = {
        {1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
    RankResult r = rank_of_q_vectors(vecs);
    CHECK(r.rank == 2);
    std::vector<std::vector<mpq_class>> empty;
    CHECK(rank_of_q_vectors(empty).rank == 0);
}

TEST_CASE("strict upper triangularization") {
    Rng rng(23);
    for (uint32_t p : {3u, 5u, 7u}) {
        for (int t = 0; t < 30; ++t) {
            size_t n = 1 + rng.below(4);
            FpMatrix m = random_fp_matrix(rng, p, n, n);
            if (m.det() != 0) {
                CHECK_THROWS_AS(strict_upper_triangularize(m), ValidationError);
                continue;
            }
            auto [u, v] = strict_upper_triangularize(m);
            CHECK(u.det() != 0);
            CHECK(v.det() != 0);
            FpMatrix w = v.mul(m).mul(u);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j <= i; ++j) CHECK(w.at(i, j) == 0);
        }
    }
}

TEST_CASE("hnf membership and canonical residues") {
    Rng rng(29);
    for (int t = 0; t < 20; ++t) {
        size_t dim = 1 + rng.below(4);
        // random full-rank generators: diagonal-dominant plus noise columns
        std::vector<std::vector<mpz_class>> cols;
        for (size_t j = 0; j < dim; ++j) {
            std::vector<mpz_class> c(dim, 0);
            c[j] = 1 + static_cast<long>(rng.below(4));
            for (size_t i = 0; i < dim; ++i)
                c[i] += static_cast<long>(rng.below(7)) - 3;
            cols.push_back(std::move(c));
        }
        Hnf h;
        try {
            h = hnf_from_columns(dim, cols);
        } catch (const ValidationError&) {
            continue;  // the noise made it singular; not under test
        }

        // every generator reduces to zero
        for (const auto& c : cols) {
            auto red = h.reduce(c);
            for (const auto& x : red) CHECK(x == 0);
        }
        // reduction is idempotent and shift-invariant along lattice vectors
        for (int s = 0; s < 10; ++s) {
            std::vector<mpz_class> v(dim);
            for (auto& x : v) x = static_cast<long>(rng.below(21)) - 10;
            auto r1 = h.reduce(v);
            CHECK(h.reduce(r1) == r1);
            auto shifted = v;
            for (size_t i = 0; i < dim; ++i) shifted[i] += h.cols[0][i];
            CHECK(h.reduce(shifted) == r1);
        }
        // det equals the diagonal product and is positive
        mpz_class dd = 1;
        for (size_t j = 0; j < dim; ++j) dd *= h.cols[j][j];
        CHECK(h.det == dd);
        CHECK(h.det > 0);
    }

    std::vector<std::vector<mpz_class>> rank_deficient = {{1, 2}, {2, 4}};
    CHECK_THROWS_AS(hnf_from_columns(2, rank_deficient), ValidationError);
}

TEST_CASE("complete columns to invertible") {
    FpMatrix cols(5, 3, 1);
    cols.set(0, 0, 1);
    cols.set(1, 0, 2);
    cols.set(2, 0, 0);
    FpMatrix full = complete_columns_to_invertible(cols);
    CHECK(full.rows() == 3);
    CHECK(full.cols() == 3);
    CHECK(full.det() != 0);
    for (size_t i = 0; i < 3; ++i) CHECK(full.at(i, 0) == cols.at(i, 0));
}
