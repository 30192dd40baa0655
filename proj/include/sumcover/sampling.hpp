#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sumcover/errors.hpp"
#include "sumcover/group.hpp"
#include "sumcover/lattice.hpp"
#include "sumcover/linalg.hpp"
#include "sumcover/sumsets.hpp"

namespace sumcover {

// Thin deterministic RNG. mt19937_64 output is fixed by the standard;
// std::uniform_int_distribution is not, so reduction is done by modulo here.
// Bias is irrelevant for the ranges involved (n << 2^64).
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // uniform-ish value in [0, n)
    uint64_t below(uint64_t n) {
        if (n == 0) throw InternalError("Rng::below(0)");
        return eng_() % n;
    }

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

GroupElement random_element(Rng& rng, const GroupSpec& g);

// Random multiset that generates g: elements are appended until closure.
ElementMultiset random_generating_multiset(Rng& rng, const GroupSpec& g);

// Non-empty random subset; expected size ~ target_size (collisions collapse).
ElementSet random_subset(Rng& rng, const GroupSpec& g, uint64_t target_size);

FpMatrix random_fp_matrix(Rng& rng, uint32_t p, size_t rows, size_t cols);
FpMatrix random_invertible(Rng& rng, uint32_t p, size_t n);

BasisSystem random_basis_system(Rng& rng, uint32_t p, size_t k, size_t r);

// Random p-oblique block lattice with dim W = (k-1)r, hence det = p^r.
BlockLattice random_oblique_lattice(Rng& rng, uint32_t p, size_t k, size_t r);

std::vector<IntVec> random_int_vectors(Rng& rng, size_t count, size_t dim,
                                       int64_t lo, int64_t hi);

// Moduli lists (primary decomposition, ascending) for every isomorphism
// class of abelian group with 2 <= order <= max_order.
std::vector<std::vector<uint64_t>> abelian_groups_up_to(uint64_t max_order);

}  // namespace sumcover
