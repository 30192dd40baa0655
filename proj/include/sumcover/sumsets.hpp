#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "sumcover/group.hpp"

namespace sumcover {

// B* : all sums over subsets of B's item slots (empty sum 0 included).
ElementSet subset_sum_set(const ElementMultiset& B);

ElementSet sumset(const ElementSet& S, const ElementSet& T);
ElementSet sumset_fold(const std::vector<ElementSet>& sets);

// Sparse |B*| for groups beyond the dense cap. Work grows with 2^items, so
// the item count is capped (caps.hpp).
uint64_t subset_sum_count(const GroupSpec& g,
                          const std::vector<GroupElement>& items);

// Characteristic-zero path: exact integer vectors, distinct sums in
// lexicographic order.
using IntVec = std::vector<int64_t>;
std::vector<IntVec> subset_sums_z(const std::vector<IntVec>& items);
std::vector<IntVec> sumset_z(const std::vector<IntVec>& A,
                             const std::vector<IntVec>& B);

// Least k such that k > 2 m ln(log2 |G|), m the exponent of G. Any k
// generating multisets B_1..B_k then force B_1*+...+B_k* = G.
uint64_t basis_threshold(const GroupSpec& g);

struct BasisCheck {
    bool is_basis = false;
    uint64_t union_size = 0;
    std::vector<uint64_t> star_sizes;  // |B_j*|
    std::vector<uint64_t> fold_sizes;  // |B_1*+...+B_j*|
    std::optional<uint64_t> first_missing;  // an uncovered element's index
};
BasisCheck additive_basis_check(const std::vector<ElementMultiset>& systems);

// Item indices per system summing to target; requires target covered.
std::vector<std::vector<size_t>> basis_witness(
    const std::vector<ElementMultiset>& systems, const GroupElement& target);

// Sizes s_j = |B_1*+...+B_j*| with the exact growth checks
// s_j^{m-1} >= s_{j-1}^{m-2} |G| and s_1 >= 2^rank. Exponent m >= 3 and
// every B_j must generate.
struct GrowthTrace {
    std::vector<uint64_t> sizes;
    std::vector<bool> step_ok;  // step_ok[j] covers s_{j+1} vs s_j
    bool start_ok = false;
    bool all_ok = false;
};
GrowthTrace growth_trace(const std::vector<ElementMultiset>& systems);

// |S| + |T| > |G| forces S + T = G. Returns whether the hypothesis holds;
// when it does, the conclusion is verified and a failure raises
// InternalError.
bool halving_covers(const ElementSet& S, const ElementSet& T);

// |A0|^{n-1} |A1+...+An| <= prod_i |A0+Ai|, compared exactly.
struct RuzsaCheck {
    mpz_class lhs, rhs;
    bool ok = false;
};
RuzsaCheck ruzsa_product_check(const ElementSet& A0,
                               const std::vector<ElementSet>& As);

}  // namespace sumcover
