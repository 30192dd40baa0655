#include "sumcover/verify.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "sumcover/energy.hpp"
#include "sumcover/errors.hpp"
#include "sumcover/group.hpp"
#include "sumcover/lattice.hpp"
#include "sumcover/linalg.hpp"
#include "sumcover/sampling.hpp"
#include "sumcover/sumsets.hpp"
#include "sumcover/synthesis.hpp"

namespace sumcover {

namespace {

// Tolerances and seeds are pinned here; every other comparison is exact.
constexpr double sigma_identity_tol = 1e-12;
constexpr uint64_t seed_base = 0x5eedc0de00000000ull;

struct Check {
    bool pass = true;
    std::string detail;

    // Records the first failure; later ones only bump the count.
    int failures = 0;
    void fail(const std::string& d) {
        if (failures == 0) detail = d;
        ++failures;
        pass = false;
    }
    void note(const std::string& d) {
        if (pass && detail.empty()) detail = d;
    }
    void finish(size_t cases) {
        if (pass)
            detail = std::to_string(cases) + " cases";
        else if (failures > 1)
            detail += " (+" + std::to_string(failures - 1) + " more)";
    }
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

std::vector<GroupElement> matrix_columns(const FpMatrix& m) {
    std::vector<GroupElement> cols;
    for (size_t c = 0; c < m.cols(); ++c) {
        GroupElement e(m.rows());
        for (size_t i = 0; i < m.rows(); ++i) e[i] = m.at(i, c);
        cols.push_back(std::move(e));
    }
    return cols;
}

GroupSpec vector_group(uint32_t p, size_t n) {
    return GroupSpec(std::vector<uint64_t>(n, p));
}

// 1: |B*| = 2^n for n independent vectors over F_p, p in {3,5}, n <= 12.
Check crit_independent_star_size() {
    Check c;
    size_t cases = 0;
    Rng rng(seed_base + 1);
    for (uint32_t p : {3u, 5u}) {
        for (size_t n : {4u, 8u, 12u}) {
            GroupSpec g = vector_group(p, n);
            // standard basis, then a random invertible image of it
            for (int variant = 0; variant < 2; ++variant) {
                FpMatrix m = variant == 0 ? FpMatrix::identity(p, n)
                                          : random_invertible(rng, p, n);
                uint64_t got = subset_sum_count(g, matrix_columns(m));
                if (got != (uint64_t(1) << n))
                    c.fail(fmt("p=%u n=%zu variant=%d: |B*|=%llu != 2^n", p, n,
                               variant, (unsigned long long)got));
                ++cases;
            }
        }
    }
    c.finish(cases);
    return c;
}

// 2: equal bases over the rationals attain exactly (k+1)^n, k <= 4, n <= 4.
Check crit_equal_bases_char0() {
    Check c;
    size_t cases = 0;
    Rng rng(seed_base + 2);
    for (size_t n = 1; n <= 4; ++n) {
        for (int variant = 0; variant < 2; ++variant) {
            // identity basis, then a random integer basis (det != 0 over Q)
            std::vector<IntVec> basis;
            if (variant == 0) {
                for (size_t i = 0; i < n; ++i) {
                    IntVec e(n, 0);
                    e[i] = 1;
                    basis.push_back(e);
                }
            } else {
                do {
                    basis = random_int_vectors(rng, n, n, -3, 3);
                    std::vector<std::vector<mpq_class>> q;
                    for (auto& v : basis) {
                        std::vector<mpq_class> row;
                        for (int64_t x : v) row.emplace_back(static_cast<long>(x));
                        q.push_back(std::move(row));
                    }
                    if (rank_of_q_vectors(q).rank == n) break;
                } while (true);
            }
            std::vector<IntVec> star = subset_sums_z(basis);
            std::vector<IntVec> acc = star;
            for (size_t k = 1; k <= 4; ++k) {
                if (k > 1) acc = sumset_z(acc, star);
                uint64_t want = 1;
                for (size_t i = 0; i < n; ++i) want *= (k + 1);
                if (acc.size() != want)
                    c.fail(fmt("n=%zu k=%zu variant=%d: measured %zu != (k+1)^n=%llu",
                               n, k, variant, acc.size(), (unsigned long long)want));
                ++cases;
            }
        }
    }
    c.finish(cases);
    return c;
}

// 3: char-0 product bound on 100 seeded random systems, k <= 3, dim <= 6.
Check crit_char0_bound_random() {
    Check c;
    Rng rng(seed_base + 3);
    for (int t = 0; t < 100; ++t) {
        size_t d = 1 + rng.below(6);
        size_t k = 1 + rng.below(3);
        std::vector<size_t> ranks;
        std::vector<std::vector<IntVec>> systems;
        for (size_t j = 0; j < k; ++j) {
            size_t cnt = 1 + rng.below(4);
            auto vecs = random_int_vectors(rng, cnt, d, -3, 3);
            std::vector<std::vector<mpq_class>> q;
            for (auto& v : vecs) {
                std::vector<mpq_class> row;
                for (int64_t x : v) row.emplace_back(static_cast<long>(x));
                q.push_back(std::move(row));
            }
            ranks.push_back(rank_of_q_vectors(q).rank);
            systems.push_back(std::move(vecs));
        }
        std::vector<IntVec> acc = subset_sums_z(systems[0]);
        for (size_t j = 1; j < k; ++j)
            acc = sumset_z(acc, subset_sums_z(systems[j]));
        mpq_class bound = char0_star_bound(ranks);
        mpq_class measured(static_cast<unsigned long>(acc.size()));
        if (measured < bound)
            c.fail(fmt("t=%d d=%zu k=%zu: measured %zu below bound", t, d, k,
                       acc.size()));
    }
    c.finish(100);
    return c;
}

// 4: char-3 extremal pairs attain 8^l for l in {1,2,3}.
Check crit_char3_extremal() {
    Check c;
    for (unsigned l = 1; l <= 3; ++l) {
        Char3ExtremalPair pair = char3_extremal_pair(l);
        ElementSet s = sumset(subset_sum_set(pair.B1), subset_sum_set(pair.B2));
        uint64_t want = 1;
        for (unsigned i = 0; i < l; ++i) want *= 8;
        if (s.size() != want)
            c.fail(fmt("l=%u: |B1*+B2*|=%llu != 8^l=%llu", l,
                       (unsigned long long)s.size(), (unsigned long long)want));
    }
    c.finish(3);
    return c;
}

// 5: T(B*) = 6^n for independent B over odd characteristic, n <= 8.
Check crit_star_energy() {
    Check c;
    size_t cases = 0;
    Rng rng(seed_base + 5);
    for (uint32_t p : {3u, 5u, 7u}) {
        size_t nmax = p == 3 ? 8 : (p == 5 ? 6 : 5);
        for (size_t n = 1; n <= nmax; ++n) {
            GroupSpec g = vector_group(p, n);
            FpMatrix m = random_invertible(rng, p, n);
            ElementMultiset B(g, matrix_columns(m));
            mpz_class got = additive_energy(subset_sum_set(B));
            if (got != independent_star_energy(static_cast<unsigned>(n)))
                c.fail(fmt("p=%u n=%zu: energy %s != 6^n", p, n,
                           got.get_str().c_str()));
            ++cases;
        }
    }
    c.finish(cases);
    return c;
}

// 6: energy lower bound on |A+B| over 1000 random pairs, |G| <= 121.
Check crit_energy_bound_random() {
    Check c;
    Rng rng(seed_base + 6);
    auto groups = abelian_groups_up_to(121);
    for (int t = 0; t < 1000; ++t) {
        GroupSpec g(groups[rng.below(groups.size())]);
        ElementSet A = random_subset(rng, g, 1 + rng.below(g.order()));
        ElementSet B = random_subset(rng, g, 1 + rng.below(g.order()));
        SumsetEnergyBound bound = sumset_energy_bound(A, B);
        mpz_class measured(static_cast<unsigned long>(sumset(A, B).size()));
        if (!bound.holds_for(measured))
            c.fail(fmt("t=%d %s |A|=%llu |B|=%llu: bound exceeds |A+B|", t,
                       g.to_string().c_str(), (unsigned long long)A.size(),
                       (unsigned long long)B.size()));
    }
    c.finish(1000);
    return c;
}

// 7: odd-characteristic pair bound (8/3)^r on 100 random basis pairs.
Check crit_odd_char_bound() {
    Check c;
    Rng rng(seed_base + 7);
    for (int t = 0; t < 100; ++t) {
        const uint32_t ps[3] = {3, 5, 7};
        uint32_t p = ps[rng.below(3)];
        size_t r = 1 + rng.below(3);
        GroupSpec g = vector_group(p, r);
        FpMatrix m1 = random_invertible(rng, p, r);
        FpMatrix m2 = random_invertible(rng, p, r);
        ElementSet s = sumset(subset_sum_set(ElementMultiset(g, matrix_columns(m1))),
                              subset_sum_set(ElementMultiset(g, matrix_columns(m2))));
        OddCharBound bound = odd_char_star_bound(static_cast<unsigned>(r),
                                                 static_cast<unsigned>(r));
        if (!bound.holds_for(mpz_class(static_cast<unsigned long>(s.size()))))
            c.fail(fmt("t=%d p=%u r=%zu: measured %llu below (8/3)^r", t, p, r,
                       (unsigned long long)s.size()));
    }
    c.finish(100);
    return c;
}

// 8: 1 + sigma_p(2) = 3p/8 to 1e-12, and the character bound stays below
// the measured sizes of the criterion-7 instances.
Check crit_character_sum() {
    Check c;
    size_t cases = 0;
    for (uint32_t p : {3u, 5u, 7u, 11u, 13u, 17u}) {
        RealEnclosure s = sigma_p(p, 2);
        double target = 3.0 * p / 8.0;
        double lo = 1.0 + s.lo - target, hi = 1.0 + s.hi - target;
        double worst = std::max(std::fabs(lo), std::fabs(hi));
        if (!(worst < sigma_identity_tol))
            c.fail(fmt("p=%u: |1+sigma_p(2)-3p/8| ~ %.3e", p, worst));
        ++cases;
    }
    // replay criterion 7's instances against the character bound
    Rng rng(seed_base + 7);
    for (int t = 0; t < 100; ++t) {
        const uint32_t ps[3] = {3, 5, 7};
        uint32_t p = ps[rng.below(3)];
        size_t r = 1 + rng.below(3);
        GroupSpec g = vector_group(p, r);
        FpMatrix m1 = random_invertible(rng, p, r);
        FpMatrix m2 = random_invertible(rng, p, r);
        ElementSet s = sumset(subset_sum_set(ElementMultiset(g, matrix_columns(m1))),
                              subset_sum_set(ElementMultiset(g, matrix_columns(m2))));
        RealEnclosure bound = character_sum_lower_bound(p, static_cast<unsigned>(r), 2);
        // measured >= hi certifies measured >= true bound
        if (!(static_cast<double>(s.size()) >= bound.hi))
            c.fail(fmt("t=%d p=%u r=%zu: measured %llu below character bound %s",
                       t, p, r, (unsigned long long)s.size(), bound.decimal.c_str()));
        ++cases;
    }
    c.finish(cases);
    return c;
}

// 9: column-sum lattice covering equals min{(k+1)^r, p^r}.
Check crit_column_sum_covering() {
    Check c;
    size_t cases = 0;
    for (uint32_t p : {2u, 3u, 5u, 7u}) {
        for (size_t k = 1; k <= 5; ++k) {
            for (size_t r = 1; r <= 3; ++r) {
                if (k * r > 15) continue;
                uint64_t got = covering_number(column_sum_lattice(p, k, r));
                uint64_t a = 1, b = 1;
                for (size_t i = 0; i < r; ++i) {
                    a *= (k + 1);
                    b *= p;
                }
                uint64_t want = std::min(a, b);
                if (got != want)
                    c.fail(fmt("p=%u k=%zu r=%zu: C=%llu != min{(k+1)^r,p^r}=%llu",
                               p, k, r, (unsigned long long)got,
                               (unsigned long long)want));
                ++cases;
            }
        }
    }
    c.finish(cases);
    return c;
}

// 10: kernels of random basis systems are p-oblique with det p^r, and their
// covering number equals the star sumset size.
Check crit_basis_kernel_roundtrip() {
    Check c;
    Rng rng(seed_base + 10);
    for (int t = 0; t < 100; ++t) {
        uint32_t p = rng.below(2) ? 3 : 5;
        size_t k = 1 + rng.below(3);
        size_t r = 1 + rng.below(3);
        if (k * r > 12) { r = 12 / k; }
        BasisSystem B = random_basis_system(rng, p, k, r);
        BlockLattice L = lattice_from_bases(B);
        if (!is_p_oblique(L).oblique) {
            c.fail(fmt("t=%d p=%u k=%zu r=%zu: kernel not oblique", t, p, k, r));
            continue;
        }
        mpz_class want;
        mpz_ui_pow_ui(want.get_mpz_t(), p, r);
        if (L.det() != want) {
            c.fail(fmt("t=%d p=%u k=%zu r=%zu: det != p^r", t, p, k, r));
            continue;
        }
        uint64_t cov = covering_number(L);
        uint64_t star = star_sumset_size(B);
        if (cov != star)
            c.fail(fmt("t=%d p=%u k=%zu r=%zu: C=%llu != |B1*+...+Bk*|=%llu", t,
                       p, k, r, (unsigned long long)cov, (unsigned long long)star));
    }
    c.finish(100);
    return c;
}

// 11: synthesis on random p-oblique lattices: valid system, containment,
// and no covering increase.
Check crit_synthesis() {
    Check c;
    Rng rng(seed_base + 11);
    for (int t = 0; t < 100; ++t) {
        uint32_t p = rng.below(2) ? 3 : 5;
        size_t k = 2 + rng.below(p - 1);  // 2..p
        size_t r = 1 + rng.below(3);
        BlockLattice L = random_oblique_lattice(rng, p, k, r);
        SynthesisResult out = bases_from_lattice(L, rng.next());
        if (!out.contains_input) {
            c.fail(fmt("t=%d p=%u k=%zu r=%zu: kernel misses input lattice", t, p,
                       k, r));
            continue;
        }
        if (!out.kernel_oblique) {
            c.fail(fmt("t=%d p=%u k=%zu r=%zu: kernel not oblique", t, p, k, r));
            continue;
        }
        uint64_t ck = covering_number(out.kernel);
        uint64_t cl = covering_number(L);
        if (ck > cl)
            c.fail(fmt("t=%d p=%u k=%zu r=%zu: C(kernel)=%llu > C(L)=%llu", t, p,
                       k, r, (unsigned long long)ck, (unsigned long long)cl));
    }
    c.finish(100);
    return c;
}

// 12: threshold-many generating systems always form an additive basis, with
// every growth step holding (exponent >= 3 groups).
Check crit_threshold_basis() {
    Check c;
    size_t cases = 0;
    Rng rng(seed_base + 12);
    for (const auto& moduli : abelian_groups_up_to(48)) {
        GroupSpec g(moduli);
        uint64_t k = basis_threshold(g);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<ElementMultiset> systems;
            for (uint64_t j = 0; j < k; ++j)
                systems.push_back(random_generating_multiset(rng, g));
            BasisCheck bc = additive_basis_check(systems);
            if (!bc.is_basis) {
                c.fail(fmt("%s k=%llu trial=%d: not a basis",
                           g.to_string().c_str(), (unsigned long long)k, trial));
                ++cases;
                continue;
            }
            if (g.exponent() >= 3) {
                GrowthTrace tr = growth_trace(systems);
                if (!tr.all_ok)
                    c.fail(fmt("%s k=%llu trial=%d: growth step failed",
                               g.to_string().c_str(), (unsigned long long)k,
                               trial));
            }
            ++cases;
        }
    }
    c.finish(cases);
    return c;
}

// 13: oracle equivalences between independent implementations.
Check crit_oracles() {
    Check c;
    size_t cases = 0;
    Rng rng(seed_base + 13);

    // (a) incremental star vs direct subset enumeration, |B| <= 16
    auto groups = abelian_groups_up_to(48);
    for (int t = 0; t < 25; ++t) {
        GroupSpec g(groups[rng.below(groups.size())]);
        size_t items = 1 + rng.below(t < 5 ? 16 : 10);
        std::vector<GroupElement> B;
        for (size_t i = 0; i < items; ++i) B.push_back(random_element(rng, g));
        ElementSet fast = subset_sum_set(ElementMultiset(g, B));
        ElementSet slow(g);
        for (uint64_t mask = 0; mask < (uint64_t(1) << items); ++mask) {
            GroupElement acc = g.zero();
            for (size_t i = 0; i < items; ++i)
                if (mask >> i & 1) acc = g.add(acc, B[i]);
            slow.insert(acc);
        }
        if (fast != slow)
            c.fail(fmt("star oracle t=%d %s items=%zu", t, g.to_string().c_str(),
                       items));
        if (subset_sum_count(g, B) != fast.size())
            c.fail(fmt("sparse star count t=%d disagrees", t));
        ++cases;
    }

    // (b) additive energy vs quadruple enumeration, |A| <= 8
    for (int t = 0; t < 50; ++t) {
        GroupSpec g(groups[rng.below(groups.size())]);
        ElementSet A = random_subset(rng, g, 1 + rng.below(8));
        auto elems = A.elements();
        unsigned long quad = 0;
        for (auto& a : elems)
            for (auto& b : elems)
                for (auto& x : elems)
                    for (auto& y : elems)
                        if (g.add(a, b) == g.add(x, y)) ++quad;
        if (additive_energy(A) != mpz_class(quad))
            c.fail(fmt("energy oracle t=%d %s", t, g.to_string().c_str()));
        ++cases;
    }

    // (c) block-lattice covering vs integer HNF covering, kr <= 12
    for (int t = 0; t < 20; ++t) {
        uint32_t p = rng.below(2) ? 2 : 3;
        size_t k = 1 + rng.below(4);
        size_t r = 1 + rng.below(3);
        while (k * r > 12) --k;
        FpMatrix w = random_fp_matrix(rng, p, rng.below(k * r + 1), k * r);
        BlockLattice L(p, k, r, w);
        if (covering_number(L) != covering_number(lift_to_int(L)))
            c.fail(fmt("hnf covering oracle t=%d p=%u k=%zu r=%zu", t, p, k, r));
        ++cases;
    }

    // (d) canonical-key covering vs quadratic class counting, kr <= 8
    for (int t = 0; t < 30; ++t) {
        uint32_t p = rng.below(2) ? 3 : 5;
        size_t k = 1 + rng.below(2);
        size_t r = 1 + rng.below(4);
        while (k * r > 8) --r;
        FpMatrix w = random_fp_matrix(rng, p, rng.below(k * r + 1), k * r);
        BlockLattice L(p, k, r, w);
        if (covering_number(L) != covering_number_bruteforce(L))
            c.fail(fmt("bruteforce covering oracle t=%d p=%u k=%zu r=%zu", t, p,
                       k, r));
        ++cases;
    }

    c.finish(cases);
    return c;
}

// 14: Ruzsa product inequality plus the halving rule on 1000 instances.
Check crit_ruzsa_halving() {
    Check c;
    Rng rng(seed_base + 14);
    auto groups = abelian_groups_up_to(32);
    int halving_hits = 0;
    for (int t = 0; t < 1000; ++t) {
        GroupSpec g(groups[rng.below(groups.size())]);
        size_t n = 1 + rng.below(3);
        ElementSet A0 = random_subset(rng, g, 1 + rng.below(g.order()));
        std::vector<ElementSet> As;
        for (size_t i = 0; i < n; ++i)
            As.push_back(random_subset(rng, g, 1 + rng.below(g.order())));
        RuzsaCheck rc = ruzsa_product_check(A0, As);
        if (!rc.ok)
            c.fail(fmt("t=%d %s n=%zu: Ruzsa inequality violated", t,
                       g.to_string().c_str(), n));
        // halving_covers verifies S+T = G internally when it applies
        if (halving_covers(A0, As[0])) ++halving_hits;
    }
    if (halving_hits == 0) c.fail("halving hypothesis never triggered");
    c.finish(1000);
    return c;
}

}  // namespace

const char* criterion_name(int id) {
    switch (id) {
        case 1: return "independent stars have size 2^n";
        case 2: return "equal bases attain (k+1)^n";
        case 3: return "char-0 product bound on random systems";
        case 4: return "char-3 extremal pairs attain 8^l";
        case 5: return "independent star energy is 6^n";
        case 6: return "energy bound caps sumset size";
        case 7: return "odd-char pair bound (8/3)^r";
        case 8: return "sigma_p identity and character bound";
        case 9: return "column-sum lattice covering";
        case 10: return "basis kernel round-trip";
        case 11: return "oblique lattice synthesis";
        case 12: return "threshold systems form additive bases";
        case 13: return "oracle equivalences";
        case 14: return "ruzsa product and halving";
    }
    throw ValidationError("unknown criterion id " + std::to_string(id));
}

CriterionResult run_criterion(int id) {
    using clock = std::chrono::steady_clock;
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    auto t0 = clock::now();
    Check c;
    switch (id) {
        case 1: c = crit_independent_star_size(); break;
        case 2: c = crit_equal_bases_char0(); break;
        case 3: c = crit_char0_bound_random(); break;
        case 4: c = crit_char3_extremal(); break;
        case 5: c = crit_star_energy(); break;
        case 6: c = crit_energy_bound_random(); break;
        case 7: c = crit_odd_char_bound(); break;
        case 8: c = crit_character_sum(); break;
        case 9: c = crit_column_sum_covering(); break;
        case 10: c = crit_basis_kernel_roundtrip(); break;
        case 11: c = crit_synthesis(); break;
        case 12: c = crit_threshold_basis(); break;
        case 13: c = crit_oracles(); break;
        case 14: c = crit_ruzsa_halving(); break;
        default: throw ValidationError("unknown criterion id " + std::to_string(id));
    }
    r.pass = c.pass;
    r.detail = c.detail;
    r.ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    return r;
}

std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};
    if (suite == "theorem1") return {12, 14};
    if (suite == "theorem2") return {1, 2, 3};
    if (suite == "theorem3") return {4, 5, 6, 7, 8};
    if (suite == "theorem5") return {9, 10, 11};
    if (suite == "appendix") return {11};
    throw ValidationError("unknown suite '" + suite + "'");
}

std::vector<CriterionResult> run_suite(const std::string& suite) {
    std::vector<CriterionResult> out;
    for (int id : suite_criteria(suite)) out.push_back(run_criterion(id));
    return out;
}

}  // namespace sumcover
