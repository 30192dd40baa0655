#include "sumcover/sumsets.hpp"

#include <mpfr.h>

#include <algorithm>
#include <set>
#include <unordered_set>

#include "sumcover/caps.hpp"
#include "sumcover/errors.hpp"

namespace sumcover {

ElementSet subset_sum_set(const ElementMultiset& B) {
    ElementSet s(B.group);
    s.insert_index(0);
    for (const auto& item : B.items) s.or_with(s.translated(item));
    return s;
}

ElementSet sumset(const ElementSet& S, const ElementSet& T) {
    if (S.group() != T.group())
        throw ValidationError("sumset across different groups");
    const ElementSet& small = S.size() <= T.size() ? S : T;
    const ElementSet& big = S.size() <= T.size() ? T : S;
    ElementSet out(S.group());
    small.for_each_index([&](uint64_t idx) {
        out.or_with(big.translated(S.group().element_at(idx)));
    });
    return out;
}

ElementSet sumset_fold(const std::vector<ElementSet>& sets) {
    if (sets.empty()) throw ValidationError("sumset fold of no sets");
    ElementSet acc = sets[0];
    for (size_t i = 1; i < sets.size(); ++i) acc = sumset(acc, sets[i]);
    return acc;
}

uint64_t subset_sum_count(const GroupSpec& g,
                          const std::vector<GroupElement>& items) {
    if (items.size() > max_subset_items())
        throw ScaleError("subset-sum item count " + std::to_string(items.size()) +
                         " exceeds cap " + std::to_string(max_subset_items()) +
                         " (SUMCOVER_MAX_SUBSET_ITEMS)");
    for (const auto& e : items) g.validate_element(e);
    std::unordered_set<uint64_t> cur;
    cur.insert(0);
    std::vector<uint64_t> adds;
    for (const auto& b : items) {
        adds.clear();
        adds.reserve(cur.size());
        for (uint64_t s : cur) {
            uint64_t ni = g.index_of(g.add(g.element_at(s), b));
            if (!cur.count(ni)) adds.push_back(ni);
        }
        cur.insert(adds.begin(), adds.end());
    }
    return cur.size();
}

// ---------------------------------------------------------------------------

static IntVec add_vec(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size())
        throw ValidationError("integer vector length mismatch");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        if (__builtin_add_overflow(a[i], b[i], &r[i]))
            throw ScaleError("integer vector entry overflow");
    return r;
}

std::vector<IntVec> subset_sums_z(const std::vector<IntVec>& items) {
    if (items.empty())
        throw ValidationError("need at least one vector to fix the dimension");
    if (items.size() > max_subset_items())
        throw ScaleError("subset-sum item count exceeds cap (SUMCOVER_MAX_SUBSET_ITEMS)");
    size_t dim = items[0].size();
    if (dim == 0) throw ValidationError("zero-dimensional vectors");
    std::set<IntVec> sums;
    sums.insert(IntVec(dim, 0));
    for (const auto& b : items) {
        std::set<IntVec> next = sums;
        for (const auto& s : sums) next.insert(add_vec(s, b));
        sums.swap(next);
    }
    return {sums.begin(), sums.end()};
}

std::vector<IntVec> sumset_z(const std::vector<IntVec>& A,
                             const std::vector<IntVec>& B) {
    if (A.empty() || B.empty())
        throw ValidationError("sumset of an empty vector family");
    std::set<IntVec> sums;
    for (const auto& a : A)
        for (const auto& b : B) sums.insert(add_vec(a, b));
    return {sums.begin(), sums.end()};
}

// ---------------------------------------------------------------------------

uint64_t basis_threshold(const GroupSpec& g) {
    // Least k with k > 2 m ln(log2 |G|): floor(x) + 1 once both rounding
    // directions agree on the floor.
    uint64_t m = g.exponent(), n = g.order();
    for (mpfr_prec_t prec = 128; prec <= 1024; prec *= 2) {
        uint64_t fl[2];
        bool ok = true;
        mpfr_rnd_t dirs[2] = {MPFR_RNDD, MPFR_RNDU};
        for (int d = 0; d < 2 && ok; ++d) {
            mpfr_t x;
            mpfr_init2(x, prec);
            mpfr_set_ui(x, (unsigned long)n, dirs[d]);
            mpfr_log2(x, x, dirs[d]);
            mpfr_log(x, x, dirs[d]);
            mpfr_mul_ui(x, x, (unsigned long)m, dirs[d]);
            mpfr_mul_ui(x, x, 2, dirs[d]);
            mpfr_floor(x, x);
            if (!mpfr_fits_ulong_p(x, MPFR_RNDD)) ok = false;
            else fl[d] = mpfr_get_ui(x, MPFR_RNDD);
            mpfr_clear(x);
        }
        if (ok && fl[0] == fl[1]) return fl[0] + 1;
    }
    throw InternalError("basis threshold did not stabilize");
}

// ---------------------------------------------------------------------------

BasisCheck additive_basis_check(const std::vector<ElementMultiset>& systems) {
    if (systems.empty()) throw ValidationError("no generating systems given");
    const GroupSpec& g = systems[0].group;
    for (const auto& B : systems)
        if (B.group != g)
            throw ValidationError("systems live in different groups");

    BasisCheck out;
    ElementSet acc(g);
    acc.insert_index(0);
    for (const auto& B : systems) {
        ElementSet star = subset_sum_set(B);
        out.star_sizes.push_back(star.size());
        acc = sumset(acc, star);
        out.fold_sizes.push_back(acc.size());
    }
    out.union_size = acc.size();
    out.is_basis = acc.is_full();
    if (!out.is_basis) {
        for (uint64_t i = 0; i < g.order(); ++i)
            if (!acc.contains_index(i)) {
                out.first_missing = i;
                break;
            }
    }
    return out;
}

namespace {

struct Par {
    uint32_t prev, via;
};
constexpr uint32_t par_none = ~uint32_t(0);

std::vector<size_t> star_decompose(const std::vector<Par>& par, uint64_t idx) {
    std::vector<size_t> items;
    while (par[idx].via != par_none) {
        items.push_back(par[idx].via);
        idx = par[idx].prev;
    }
    if (idx != 0) throw InternalError("witness walk did not reach zero");
    std::sort(items.begin(), items.end());
    return items;
}

}  // namespace

std::vector<std::vector<size_t>> basis_witness(
    const std::vector<ElementMultiset>& systems, const GroupElement& target) {
    if (systems.empty()) throw ValidationError("no generating systems given");
    const GroupSpec& g = systems[0].group;
    for (const auto& B : systems)
        if (B.group != g)
            throw ValidationError("systems live in different groups");
    g.validate_element(target);
    if (g.order() > (uint64_t(1) << 20))
        throw ScaleError("witness tracking capped at group order 2^20");

    size_t k = systems.size();
    uint64_t order = g.order();

    // Stars with first-seen predecessors.
    std::vector<std::vector<Par>> star_par(k);
    std::vector<ElementSet> stars;
    stars.reserve(k);
    for (size_t i = 0; i < k; ++i) {
        std::vector<Par> par(order, {par_none, par_none});
        ElementSet s(g);
        s.insert_index(0);
        par[0] = {0, par_none};
        const auto& items = systems[i].items;
        for (size_t t = 0; t < items.size(); ++t) {
            for (uint64_t e : s.indices()) {
                uint64_t ni = g.index_of(g.add(g.element_at(e), items[t]));
                if (!s.contains_index(ni)) {
                    s.insert_index(ni);
                    par[ni] = {uint32_t(e), uint32_t(t)};
                }
            }
        }
        star_par[i] = std::move(par);
        stars.push_back(std::move(s));
    }

    // Folds with first-seen predecessors.
    std::vector<std::vector<Par>> fold_par(k);
    std::vector<ElementSet> prefix;
    prefix.push_back(stars[0]);
    for (size_t j = 1; j < k; ++j) {
        if (prefix.back().size() * stars[j].size() > (uint64_t(1) << 26))
            throw ScaleError("witness tracking fold too large");
        std::vector<Par> par(order, {par_none, par_none});
        ElementSet next(g);
        prefix.back().for_each_index([&](uint64_t s0) {
            stars[j].for_each_index([&](uint64_t u) {
                uint64_t ni =
                    g.index_of(g.add(g.element_at(s0), g.element_at(u)));
                if (!next.contains_index(ni)) {
                    next.insert_index(ni);
                    par[ni] = {uint32_t(s0), uint32_t(u)};
                }
            });
        });
        fold_par[j] = std::move(par);
        prefix.push_back(std::move(next));
    }

    uint64_t tidx = g.index_of(target);
    if (!prefix.back().contains_index(tidx))
        throw ValidationError("target is not covered by the star sumset");

    std::vector<std::vector<size_t>> out(k);
    uint64_t cur = tidx;
    for (size_t j = k; j-- > 1;) {
        Par fp = fold_par[j][cur];
        out[j] = star_decompose(star_par[j], fp.via);
        cur = fp.prev;
    }
    out[0] = star_decompose(star_par[0], cur);

    GroupElement sum = g.zero();
    for (size_t i = 0; i < k; ++i)
        for (size_t t : out[i]) sum = g.add(sum, systems[i].items[t]);
    if (sum != target) throw InternalError("witness does not sum to target");
    return out;
}

// ---------------------------------------------------------------------------

static unsigned bit_width_u64(uint64_t v) {
    return v ? 64 - unsigned(__builtin_clzll(v)) : 0;
}

GrowthTrace growth_trace(const std::vector<ElementMultiset>& systems) {
    if (systems.empty()) throw ValidationError("no generating systems given");
    const GroupSpec& g = systems[0].group;
    uint64_t m = g.exponent();
    if (m < 3) throw ValidationError("growth trace needs group exponent >= 3");
    for (const auto& B : systems) {
        if (B.group != g)
            throw ValidationError("systems live in different groups");
        if (!generates(B))
            throw ValidationError("a system does not generate the group");
    }
    // Exponentiation cost guard; far beyond any desk-scale m.
    if ((m - 1) * uint64_t(bit_width_u64(g.order())) > 100'000'000)
        throw ScaleError("growth check exponent too large for exact compare");

    GrowthTrace tr;
    ElementSet S = subset_sum_set(systems[0]);
    tr.sizes.push_back(S.size());
    mpz_class start_rhs = 1;
    mpz_mul_2exp(start_rhs.get_mpz_t(), start_rhs.get_mpz_t(), g.rank());
    tr.start_ok = mpz_class(tr.sizes[0]) >= start_rhs;

    for (size_t j = 1; j < systems.size(); ++j) {
        S = sumset(S, subset_sum_set(systems[j]));
        tr.sizes.push_back(S.size());
        mpz_class lhs, rhs;
        mpz_ui_pow_ui(lhs.get_mpz_t(), (unsigned long)tr.sizes[j],
                      (unsigned long)(m - 1));
        mpz_ui_pow_ui(rhs.get_mpz_t(), (unsigned long)tr.sizes[j - 1],
                      (unsigned long)(m - 2));
        rhs *= mpz_class((unsigned long)g.order());
        tr.step_ok.push_back(lhs >= rhs);
    }
    tr.all_ok = tr.start_ok &&
                std::all_of(tr.step_ok.begin(), tr.step_ok.end(),
                            [](bool b) { return b; });
    return tr;
}

bool halving_covers(const ElementSet& S, const ElementSet& T) {
    if (S.group() != T.group())
        throw ValidationError("halving check across different groups");
    if (S.size() + T.size() <= S.group().order()) return false;
    if (!sumset(S, T).is_full())
        throw InternalError("halving hypothesis held but the sumset misses "
                            "elements");
    return true;
}

RuzsaCheck ruzsa_product_check(const ElementSet& A0,
                               const std::vector<ElementSet>& As) {
    if (As.empty()) throw ValidationError("need at least one summand set");
    if (A0.empty()) throw ValidationError("Ruzsa check needs non-empty sets");
    for (const auto& A : As) {
        if (A.group() != A0.group())
            throw ValidationError("sets live in different groups");
        if (A.empty()) throw ValidationError("Ruzsa check needs non-empty sets");
    }
    RuzsaCheck out;
    ElementSet total = sumset_fold(As);
    mpz_ui_pow_ui(out.lhs.get_mpz_t(), (unsigned long)A0.size(),
                  (unsigned long)(As.size() - 1));
    out.lhs *= mpz_class((unsigned long)total.size());
    out.rhs = 1;
    for (const auto& A : As) out.rhs *= mpz_class((unsigned long)sumset(A0, A).size());
    out.ok = out.lhs <= out.rhs;
    return out;
}

}  // namespace sumcover
