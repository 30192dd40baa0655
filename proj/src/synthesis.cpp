#include "sumcover/synthesis.hpp"

#include <random>

#include "sumcover/errors.hpp"

namespace sumcover {

std::vector<FpMatrix> lattice_block_columns(const BlockLattice& L) {
    Rref rr = L.gens.rref();
    size_t s = rr.pivots.size();
    std::vector<FpMatrix> Ls;
    Ls.reserve(L.k);
    for (size_t i = 0; i < L.k; ++i) {
        FpMatrix Li(L.p, L.r, s);
        for (size_t t = 0; t < s; ++t)
            for (size_t a = 0; a < L.r; ++a)
                Li.set(a, t, rr.mat.at(t, i * L.r + a));
        Ls.push_back(std::move(Li));
    }
    return Ls;
}

RowRelations find_row_relations(const std::vector<FpMatrix>& Ls) {
    RowRelations out;
    size_t k = Ls.size();
    if (k < 2) throw ValidationError("need at least two blocks");
    uint32_t p = Ls[0].p();
    size_t r = Ls[0].rows(), n = Ls[0].cols();
    for (const auto& L : Ls)
        if (L.p() != p || L.rows() != r || L.cols() != n)
            throw ValidationError("block matrices must share shape");

    FpMatrix minus_i = FpMatrix::identity(p, r).neg();
    out.A.assign(k, std::vector<FpMatrix>(k, minus_i));
    for (size_t i = 0; i < k; ++i) {
        // Stack the other blocks and express L_i's rows in their row space.
        FpMatrix stacked(p, 0, n);
        std::vector<size_t> order;
        for (size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            stacked = stacked.rows() ? stacked.vstack(Ls[j]) : Ls[j];
            order.push_back(j);
        }
        auto X = stacked.solve_left(Ls[i]);
        if (!X) {
            out.ok = false;
            out.failed_block = i;
            return out;
        }
        for (size_t t = 0; t < order.size(); ++t)
            out.A[i][order[t]] = X->block(0, t * r, r, r);
    }
    out.ok = true;
    return out;
}

namespace {

// D = diag(t) with every det(B_j + U D V A_j) != 0, j ranging over the given
// pairs. P(t) = prod det(...) is a nonzero polynomial of degree k-1 < p in
// each variable, so a nonvanishing point exists; random probing finds it fast
// and small grids fall back to exhaustive scanning.
FpMatrix find_nonvanishing_diagonal(const std::vector<FpMatrix>& Bs,
                                    const std::vector<FpMatrix>& As,
                                    const FpMatrix& U, const FpMatrix& V,
                                    uint32_t p, size_t r, std::mt19937_64& eng) {
    auto works = [&](const FpMatrix& D) {
        FpMatrix UDV = U.mul(D).mul(V);
        for (size_t j = 0; j < Bs.size(); ++j)
            if (Bs[j].add(UDV.mul(As[j])).det() == 0) return false;
        return true;
    };
    FpMatrix D(p, r, r);
    for (unsigned trial = 0; trial < 512; ++trial) {
        for (size_t i = 0; i < r; ++i)
            D.set(i, i, uint32_t(eng() % p));
        if (works(D)) return D;
    }
    // Exhaustive sweep of F_p^r, feasible at desk scales.
    double cells = 1;
    for (size_t i = 0; i < r; ++i) cells *= p;
    if (cells <= double(1 << 20)) {
        std::vector<uint32_t> t(r, 0);
        while (true) {
            for (size_t i = 0; i < r; ++i) D.set(i, i, t[i]);
            if (works(D)) return D;
            size_t i = 0;
            while (i < r && ++t[i] == p) t[i++] = 0;
            if (i == r) break;
        }
    }
    throw InternalError("no nonvanishing diagonal found");
}

std::vector<FpMatrix> mixing_rec(std::vector<std::vector<FpMatrix>> A,
                                 uint32_t p, size_t r, std::mt19937_64& eng) {
    size_t k = A.size();
    FpMatrix ident = FpMatrix::identity(p, r);
    if (k == 1) return {ident};

    std::vector<FpMatrix> M(k, FpMatrix(p, r, r));
    size_t degenerate = k;
    for (size_t i = 0; i + 1 < k; ++i)
        if (A[k - 1][i].det() == 0) {
            degenerate = i;
            break;
        }
    if (degenerate == k) {
        // Last row already invertible against every block.
        M.back() = ident;
        return M;
    }

    // Put the degenerate block first (simultaneous row/column relabel), so
    // the triangularization step below can target position 0.
    if (degenerate != 0) {
        std::swap(A[0], A[degenerate]);
        for (auto& row : A) std::swap(row[0], row[degenerate]);
    }

    std::vector<std::vector<FpMatrix>> head(k - 1);
    for (size_t i = 0; i + 1 < k; ++i)
        head[i] = std::vector<FpMatrix>(A[i].begin(), A[i].end() - 1);
    std::vector<FpMatrix> Mh = mixing_rec(head, p, r, eng);

    // B_j for the reduced system, plus the overflow column j = k-1.
    std::vector<FpMatrix> B(k, FpMatrix(p, r, r));
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i + 1 < k; ++i)
            B[j] = B[j].add(Mh[i].mul(A[i][j]));

    FpMatrix N = A[k - 1][0].mul(B[0].inverse().value());
    StrictTriangularization tri = strict_upper_triangularize(N);

    std::vector<FpMatrix> tailB(B.begin() + 1, B.end());
    std::vector<FpMatrix> tailA;
    for (size_t j = 1; j < k; ++j) tailA.push_back(A[k - 1][j]);
    FpMatrix D =
        find_nonvanishing_diagonal(tailB, tailA, tri.U, tri.V, p, r, eng);
    FpMatrix Mk = tri.U.mul(D).mul(tri.V);

    for (size_t i = 0; i + 1 < k; ++i) M[i] = Mh[i];
    M[k - 1] = Mk;
    if (degenerate != 0) std::swap(M[0], M[degenerate]);
    return M;
}

}  // namespace

std::vector<FpMatrix> find_mixing_matrices(
    const std::vector<std::vector<FpMatrix>>& A, uint32_t p, size_t r,
    uint64_t seed) {
    size_t k = A.size();
    if (k < 1) throw ValidationError("empty relation grid");
    for (const auto& row : A) {
        if (row.size() != k) throw ValidationError("relation grid not square");
        for (const auto& m : row)
            if (m.p() != p || m.rows() != r || m.cols() != r)
                throw ValidationError("relation grid shape mismatch");
    }
    for (size_t i = 0; i < k; ++i)
        if (A[i][i].det() == 0)
            throw ValidationError("diagonal relation blocks must be invertible");

    std::mt19937_64 eng(seed);
    std::vector<FpMatrix> M;
    try {
        M = mixing_rec(A, p, r, eng);
    } catch (const InternalError&) {
        // k <= p guarantees a solution; beyond that a failed search is an
        // answer about the instance, not a bug.
        if (k > p)
            throw ValidationError(
                "no mixing matrices found (k > p, outside the guarantee)");
        throw;
    }
    for (size_t j = 0; j < k; ++j) {
        FpMatrix Bj(p, r, r);
        for (size_t i = 0; i < k; ++i) Bj = Bj.add(M[i].mul(A[i][j]));
        if (Bj.det() == 0)
            throw InternalError("mixing produced a singular combination");
    }
    return M;
}

SynthesisResult bases_from_lattice(const BlockLattice& L, uint64_t seed) {
    if (L.k < 2) throw ValidationError("synthesis needs at least two blocks");
    if (L.k > L.p)
        throw ValidationError("synthesis needs block count k <= p");
    ObliqueResult ob = is_p_oblique(L);
    if (!ob.oblique)
        throw ValidationError("lattice is not p-oblique (block " +
                              std::to_string(ob.witness_block) +
                              " carries a vanishing-elsewhere vector)");

    std::vector<FpMatrix> Ls = lattice_block_columns(L);
    std::vector<FpMatrix> bases;
    if (Ls[0].cols() == 0) {
        // W = 0: the lattice is p Z^{kr} and any system works.
        for (size_t i = 0; i < L.k; ++i)
            bases.push_back(FpMatrix::identity(L.p, L.r));
    } else {
        RowRelations rel = find_row_relations(Ls);
        if (!rel.ok)
            throw InternalError("row relations missing for an oblique lattice");
        std::vector<FpMatrix> M = find_mixing_matrices(rel.A, L.p, L.r, seed);
        for (size_t j = 0; j < L.k; ++j) {
            FpMatrix Bj(L.p, L.r, L.r);
            for (size_t i = 0; i < L.k; ++i) Bj = Bj.add(M[i].mul(rel.A[i][j]));
            bases.push_back(std::move(Bj));
        }
        // sum_j B_j L_j = 0 must hold exactly.
        FpMatrix acc(L.p, L.r, Ls[0].cols());
        for (size_t j = 0; j < L.k; ++j) acc = acc.add(bases[j].mul(Ls[j]));
        if (!acc.is_zero())
            throw InternalError("synthesized bases do not annihilate W");
    }

    BasisSystem system(L.p, L.r, std::move(bases));
    BlockLattice kernel = lattice_from_bases(system);
    SynthesisResult out{std::move(system), std::move(kernel), false, false};
    out.contains_input = lattice_leq(L, out.kernel);
    out.kernel_oblique = is_p_oblique(out.kernel).oblique;
    if (!out.contains_input)
        throw InternalError("synthesized kernel does not contain the input");
    return out;
}

}  // namespace sumcover
