#include "sumcover/sampling.hpp"

#include <algorithm>
#include <map>

#include "sumcover/errors.hpp"

namespace sumcover {

GroupElement random_element(Rng& rng, const GroupSpec& g) {
    return g.element_at(rng.below(g.order()));
}

ElementMultiset random_generating_multiset(Rng& rng, const GroupSpec& g) {
    std::vector<GroupElement> items;
    for (int guard = 0; guard < 4096; ++guard) {
        // skip 0: it never helps generation
        uint64_t idx = g.order() == 1 ? 0 : 1 + rng.below(g.order() - 1);
        items.push_back(g.element_at(idx));
        ElementMultiset m(g, items);
        if (generates(m)) return m;
    }
    throw InternalError("generating multiset sampling did not terminate");
}

ElementSet random_subset(Rng& rng, const GroupSpec& g, uint64_t target_size) {
    if (target_size == 0) target_size = 1;
    ElementSet s(g);
    for (uint64_t i = 0; i < target_size; ++i)
        s.insert(g.element_at(rng.below(g.order())));
    return s;
}

FpMatrix random_fp_matrix(Rng& rng, uint32_t p, size_t rows, size_t cols) {
    FpMatrix m(p, rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            m.set(i, j, static_cast<uint32_t>(rng.below(p)));
    return m;
}

FpMatrix random_invertible(Rng& rng, uint32_t p, size_t n) {
    for (int guard = 0; guard < 4096; ++guard) {
        FpMatrix m = random_fp_matrix(rng, p, n, n);
        if (m.det() != 0) return m;
    }
    throw InternalError("invertible matrix sampling did not terminate");
}

BasisSystem random_basis_system(Rng& rng, uint32_t p, size_t k, size_t r) {
    std::vector<FpMatrix> bases;
    bases.reserve(k);
    for (size_t i = 0; i < k; ++i) bases.push_back(random_invertible(rng, p, r));
    return BasisSystem(p, r, std::move(bases));
}

BlockLattice random_oblique_lattice(Rng& rng, uint32_t p, size_t k, size_t r) {
    size_t s = (k - 1) * r;
    for (int guard = 0; guard < 4096; ++guard) {
        FpMatrix w = random_fp_matrix(rng, p, s, k * r);
        BlockLattice cand(p, k, r, w);
        if (cand.subspace_dim() != s) continue;
        if (!is_p_oblique(cand).oblique) continue;
        return cand;
    }
    throw InternalError("oblique lattice sampling did not terminate");
}

std::vector<IntVec> random_int_vectors(Rng& rng, size_t count, size_t dim,
                                       int64_t lo, int64_t hi) {
    if (hi < lo) throw ValidationError("empty integer sampling range");
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    std::vector<IntVec> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        IntVec v(dim);
        for (size_t j = 0; j < dim; ++j)
            v[j] = lo + static_cast<int64_t>(rng.below(span));
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

// partitions of e as non-increasing lists
void partitions_of(uint64_t e, std::vector<std::vector<uint64_t>>& out) {
    std::vector<uint64_t> cur;
    auto rec = [&](auto&& self, uint64_t rem, uint64_t maxpart) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (uint64_t part = std::min(rem, maxpart); part >= 1; --part) {
            cur.push_back(part);
            self(self, rem - part, part);
            cur.pop_back();
        }
    };
    rec(rec, e, e);
}

}  // namespace

std::vector<std::vector<uint64_t>> abelian_groups_up_to(uint64_t max_order) {
    std::vector<std::vector<uint64_t>> out;
    for (uint64_t n = 2; n <= max_order; ++n) {
        // factor n
        std::map<uint64_t, uint64_t> fac;
        uint64_t m = n;
        for (uint64_t d = 2; d * d <= m; ++d)
            while (m % d == 0) { fac[d]++; m /= d; }
        if (m > 1) fac[m]++;

        // one partition choice per prime; cross product
        std::vector<std::vector<std::vector<uint64_t>>> choices;
        std::vector<uint64_t> primes;
        for (auto& [p, e] : fac) {
            primes.push_back(p);
            choices.emplace_back();
            partitions_of(e, choices.back());
        }
        std::vector<size_t> pick(primes.size(), 0);
        while (true) {
            std::vector<uint64_t> moduli;
            for (size_t i = 0; i < primes.size(); ++i)
                for (uint64_t e : choices[i][pick[i]]) {
                    uint64_t q = 1;
                    for (uint64_t t = 0; t < e; ++t) q *= primes[i];
                    moduli.push_back(q);
                }
            std::sort(moduli.begin(), moduli.end());
            out.push_back(std::move(moduli));

            size_t axis = 0;
            while (axis < pick.size() && ++pick[axis] == choices[axis].size()) {
                pick[axis] = 0;
                ++axis;
            }
            if (axis == pick.size()) break;
        }
    }
    return out;
}

}  // namespace sumcover
