#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "sumcover/group.hpp"
#include "sumcover/linalg.hpp"

namespace sumcover {

// Preimage in Z^{kr} of a subspace W <= F_p^{kr}; coordinates come in k
// blocks of width r. The lattice always contains p Z^{kr}.
struct BlockLattice {
    uint32_t p;
    size_t k, r;
    FpMatrix gens;  // rows span W

    BlockLattice(uint32_t p_, size_t k_, size_t r_, FpMatrix gens_);
    size_t dim() const { return k * r; }
    size_t subspace_dim() const;  // dim W
    mpz_class det() const;        // p^(kr - dim W)
};

// Full-rank integer lattice, held as its column Hermite normal form.
struct IntLattice {
    size_t dim = 0;
    Hnf hnf;
};
IntLattice int_lattice_from_columns(size_t dim,
                                    std::vector<std::vector<mpz_class>> cols);

// No nonzero vector of W vanishes outside a single block: every z in the
// lattice that is 0 mod p outside block i is 0 mod p on block i too.
struct ObliqueResult {
    bool oblique = true;
    std::optional<std::vector<uint32_t>> witness;  // vector of W
    size_t witness_block = 0;
};
ObliqueResult is_p_oblique(const BlockLattice& L);

// Number of distinct classes of {0,1}^dim modulo the lattice.
uint64_t covering_number(const BlockLattice& L);
uint64_t covering_number(const IntLattice& L);

// Quadratic-time class counting without canonical keys; test oracle.
uint64_t covering_number_bruteforce(const BlockLattice& L);

// W = { z : z_{1j} + ... + z_{kj} = 0 mod p for every column j }. Its
// covering number is min{(k+1)^r, p^r}.
BlockLattice column_sum_lattice(uint32_t p, size_t k, size_t r);

// The mod-p image of an integer lattice's generators as a block lattice.
// Covering classes agree exactly when the lattice contains p Z^{kr}.
BlockLattice mod_p_image(const IntLattice& L, uint32_t p, size_t k, size_t r);

// Z-lattice generated by lifts of W plus p Z^{kr}; same covering classes.
IntLattice lift_to_int(const BlockLattice& L);

// k bases of F_p^r: invertible r x r matrices, columns are basis vectors.
struct BasisSystem {
    uint32_t p;
    size_t k, r;
    std::vector<FpMatrix> bases;

    BasisSystem(uint32_t p_, size_t r_, std::vector<FpMatrix> bases_);
};

// phi(x) = sum_i B_i x_i for x split into k blocks.
std::vector<uint32_t> basis_map_apply(const BasisSystem& B,
                                      const std::vector<uint32_t>& x);

// ker(phi) as a block lattice; p-oblique with determinant p^r.
BlockLattice lattice_from_bases(const BasisSystem& B);

// W(L1) <= W(L2), parameters equal.
bool lattice_leq(const BlockLattice& L1, const BlockLattice& L2);

// |B_1* + ... + B_k*| inside F_p^r (dense path).
uint64_t star_sumset_size(const BasisSystem& B);

}  // namespace sumcover
