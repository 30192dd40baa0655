#pragma once

#include <cstdint>
#include <vector>

#include "sumcover/lattice.hpp"
#include "sumcover/linalg.hpp"

namespace sumcover {

// Block column slices L_1..L_k of W's basis: L_i is r x s over F_p, column t
// holding block i of the t-th basis vector of W.
std::vector<FpMatrix> lattice_block_columns(const BlockLattice& L);

// A_ij (i != j) with L_i = sum_{j != i} A_ij L_j, plus A_ii = -I, so that
// sum_j A_ij L_j = 0 for every i. Solvable exactly when no block's rows leave
// the span of the others, which p-obliqueness guarantees.
struct RowRelations {
    bool ok = false;
    size_t failed_block = 0;                // meaningful when !ok
    std::vector<std::vector<FpMatrix>> A;   // k x k grid of r x r
};
RowRelations find_row_relations(const std::vector<FpMatrix>& Ls);

// M_1..M_k such that every B_j = sum_i M_i A_ij is invertible. Needs
// invertible diagonal blocks; a solution is guaranteed for k <= p, and the
// search still runs beyond that (failure is then ValidationError, not a
// bug). The seed drives the nonvanishing diagonal search; results are
// deterministic per seed.
std::vector<FpMatrix> find_mixing_matrices(
    const std::vector<std::vector<FpMatrix>>& A, uint32_t p, size_t r,
    uint64_t seed);

// Full pipeline: p-oblique lattice in, system of k bases out, with
// ker(phi) containing the input lattice.
struct SynthesisResult {
    BasisSystem bases;
    BlockLattice kernel;   // lattice_from_bases(bases)
    bool contains_input;   // W(input) <= W(kernel)
    bool kernel_oblique;
};
SynthesisResult bases_from_lattice(const BlockLattice& L, uint64_t seed = 1);

}  // namespace sumcover
