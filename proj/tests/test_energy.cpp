#include <doctest.h>

#include <gmpxx.h>

#include <cmath>

#include "sumcover/energy.hpp"
#include "sumcover/errors.hpp"
#include "sumcover/sampling.hpp"
#include "sumcover/sumsets.hpp"

using namespace sumcover;

namespace {

mpz_class energy_bruteforce(const GroupSpec& g, const ElementSet& A) {
    unsigned long count = 0;
    auto elems = A.elements();
    for (auto& a : elems)
        for (auto& b : elems)
            for (auto& c : elems)
                for (auto& d : elems)
                    if (g.add(a, b) == g.add(c, d)) ++count;
    return mpz_class(count);
}

}  // namespace

TEST_CASE("additive energy matches quadruple enumeration") {
    Rng rng(59);
    auto groups = abelian_groups_up_to(36);
    for (int t = 0; t < 40; ++t) {
        GroupSpec g(groups[rng.below(groups.size())]);
        ElementSet A = random_subset(rng, g, 1 + rng.below(9));
        CHECK(additive_energy(A) == energy_bruteforce(g, A));
    }
    // |A|^2 <= T(A) <= |A|^3 on a few instances
    GroupSpec g({7, 7});
    for (int t = 0; t < 10; ++t) {
        ElementSet A = random_subset(rng, g, 2 + rng.below(12));
        mpz_class e = additive_energy(A);
        mpz_class n(static_cast<unsigned long>(A.size()));
        CHECK(e >= n * n);
        CHECK(e <= n * n * n);
    }
}

TEST_CASE("independent star energy closed form") {
    Rng rng(61);
    for (uint32_t p : {3u, 5u}) {
        for (size_t n = 1; n <= 4; ++n) {
            GroupSpec g(std::vector<uint64_t>(n, p));
            FpMatrix m = random_invertible(rng, p, n);
            std::vector<GroupElement> cols;
            for (size_t c = 0; c < n; ++c) {
                GroupElement e(n);
                for (size_t i = 0; i < n; ++i) e[i] = m.at(i, c);
                cols.push_back(e);
            }
            ElementSet star = subset_sum_set(ElementMultiset(g, cols));
            CHECK(additive_energy(star) == independent_star_energy(unsigned(n)));
        }
    }
    CHECK(independent_star_energy(0) == 1);
    CHECK(independent_star_energy(1) == 6);
    CHECK(independent_star_energy(3) == 216);
}

TEST_CASE("star difference multiplicity closed form") {
    // nu(sum eps_j b_j) = 2^(n - |eps|) over independent b_j; checked against
    // a direct count in F_5^3
    GroupSpec g({5, 5, 5});
    std::vector<GroupElement> basis = {
        {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    ElementSet star = subset_sum_set(ElementMultiset(g, basis));
    auto elems = star.elements();
    for (int e0 : {-1, 0, 1})
        for (int e1 : {-1, 0, 1})
            for (int e2 : {-1, 0, 1}) {
                GroupElement target = g.zero();
                std::vector<int> eps = {e0, e1, e2};
                for (size_t j = 0; j < 3; ++j) {
                    if (eps[j] == 1) target = g.add(target, basis[j]);
                    if (eps[j] == -1) target = g.sub(target, basis[j]);
                }
                unsigned long direct = 0;
                for (auto& x : elems)
                    for (auto& y : elems)
                        if (g.sub(x, y) == target) ++direct;
                CHECK(independent_star_difference_count(eps) ==
                      mpz_class(direct));
            }
    CHECK_THROWS_AS(independent_star_difference_count({2}), ValidationError);
}

TEST_CASE("energy sumset bound is exact and tight on subgroups") {
    GroupSpec g({8});
    ElementSet sub(g);  // the subgroup {0, 2, 4, 6}
    for (uint32_t i = 0; i < 8; i += 2) sub.insert(GroupElement{i});
    SumsetEnergyBound b = sumset_energy_bound(sub, sub);
    // T = |H|^3 for a subgroup, bound = |H|^4 / |H|^3 = |H| = |H+H|
    CHECK(b.holds_for(mpz_class(4)));
    CHECK_FALSE(b.holds_for(mpz_class(3)));
}

TEST_CASE("char-0 product bound values") {
    mpq_class b1 = char0_star_bound({2});  // 2^2
    CHECK(b1 == mpq_class(4));
    mpq_class b2 = char0_star_bound({2, 2});  // 2^2 (3/2)^2 = 9
    CHECK(b2 == mpq_class(9));
    mpq_class b3 = char0_star_bound({2, 2, 2});  // 9 * (4/3)^2 = 16
    CHECK(b3 == mpq_class(16));
    // descending ranks dominate any other arrangement
    CHECK(char0_star_bound_best({1, 3}) == char0_star_bound({3, 1}));
    CHECK(char0_star_bound_best({1, 3}) >= char0_star_bound({1, 3}));
}

TEST_CASE("odd characteristic pair bound") {
    OddCharBound b = odd_char_star_bound(1, 1);
    CHECK(b.rank_sum == 2);
    // (8/3)^1 = 2.67: 3 passes, 2 fails
    CHECK(b.holds_for(mpz_class(3)));
    CHECK_FALSE(b.holds_for(mpz_class(2)));

    // the char-3 extremal pair attains 8^l
    for (unsigned l = 1; l <= 2; ++l) {
        Char3ExtremalPair pair = char3_extremal_pair(l);
        ElementSet s =
            sumset(subset_sum_set(pair.B1), subset_sum_set(pair.B2));
        uint64_t want = 1;
        for (unsigned i = 0; i < l; ++i) want *= 8;
        CHECK(s.size() == want);
        OddCharBound bl = odd_char_star_bound(2 * l, 2 * l);
        CHECK(bl.holds_for(mpz_class(static_cast<unsigned long>(s.size()))));
    }
}

TEST_CASE("sigma_p enclosures") {
    // 1 + sigma_p(2) = 3p/8 exactly
    for (uint32_t p : {3u, 5u, 7u, 11u}) {
        RealEnclosure s = sigma_p(p, 2);
        CHECK(s.lo <= s.hi);
        double target = 3.0 * p / 8.0 - 1.0;
        CHECK(s.lo <= target);
        CHECK(target <= s.hi);
        CHECK(s.hi - s.lo < 1e-15);
    }
    // sigma_p(k) decreases in k and stays positive
    RealEnclosure a = sigma_p(7, 1), b = sigma_p(7, 3);
    CHECK(a.lo > b.hi);
    CHECK(b.lo >= 0.0);

    RealEnclosure bound = character_sum_lower_bound(3, 2, 2);
    // p^r / (1 + sigma)^r = 9 / (9/8)^2 = 64/9 ~ 7.11
    CHECK(bound.lo <= 64.0 / 9.0);
    CHECK(64.0 / 9.0 <= bound.hi);
}
