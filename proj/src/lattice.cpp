#include "sumcover/lattice.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "sumcover/caps.hpp"
#include "sumcover/errors.hpp"
#include "sumcover/kernels.hpp"
#include "sumcover/sumsets.hpp"

namespace sumcover {

BlockLattice::BlockLattice(uint32_t p_, size_t k_, size_t r_, FpMatrix gens_)
    : p(p_), k(k_), r(r_), gens(std::move(gens_)) {
    if (k < 1 || r < 1) throw ValidationError("block counts must be positive");
    if (gens.p() != p) throw ValidationError("generator characteristic mismatch");
    if (gens.cols() != k * r)
        throw ValidationError("generator width must be k*r");
}

size_t BlockLattice::subspace_dim() const { return gens.rank(); }

mpz_class BlockLattice::det() const {
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), p, (unsigned long)(dim() - subspace_dim()));
    return d;
}

IntLattice int_lattice_from_columns(size_t dim,
                                    std::vector<std::vector<mpz_class>> cols) {
    IntLattice L;
    L.dim = dim;
    L.hnf = hnf_from_columns(dim, std::move(cols));
    return L;
}

// ---------------------------------------------------------------------------

ObliqueResult is_p_oblique(const BlockLattice& L) {
    size_t d = L.dim();
    Rref rr = L.gens.rref();
    size_t s = rr.pivots.size();
    ObliqueResult out;
    if (s == 0) return out;
    FpMatrix M = rr.mat.block(0, 0, s, d);

    for (size_t i0 = 0; i0 < L.k; ++i0) {
        // Coefficient combos of W's basis that vanish outside block i0.
        FpMatrix outside(L.p, s, d - L.r);
        for (size_t i = 0; i < s; ++i) {
            size_t c = 0;
            for (size_t j = 0; j < d; ++j) {
                if (j / L.r == i0) continue;
                outside.set(i, c++, M.at(i, j));
            }
        }
        FpMatrix ns = outside.transpose().right_nullspace();
        if (ns.rows() == 0) continue;
        // Any nullspace row gives a nonzero W vector supported on block i0.
        std::vector<uint32_t> w(d, 0);
        for (size_t j = 0; j < d; ++j) {
            uint64_t v = 0;
            for (size_t i = 0; i < s; ++i)
                v = (v + uint64_t(ns.at(0, i)) * M.at(i, j)) % L.p;
            w[j] = uint32_t(v);
        }
        out.oblique = false;
        out.witness = std::move(w);
        out.witness_block = i0;
        return out;
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct KeySink {
    // u64 packing when the residue alphabet fits, strings otherwise.
    bool packed;
    uint64_t radix = 0;
    std::unordered_set<uint64_t> ints;
    std::unordered_set<std::string> strs;

    KeySink(uint64_t p, size_t width) {
        unsigned __int128 cap = 1;
        packed = true;
        for (size_t i = 0; i < width; ++i) {
            cap *= p;
            if (cap > ~uint64_t(0)) {
                packed = false;
                break;
            }
        }
        radix = p;
    }
    template <class Cell>
    void insert(const Cell* key, size_t width) {
        if (packed) {
            uint64_t v = 0;
            for (size_t i = width; i-- > 0;) v = v * radix + key[i];
            ints.insert(v);
        } else {
            std::string s(reinterpret_cast<const char*>(key),
                          width * sizeof(Cell));
            strs.insert(s);
        }
    }
    uint64_t size() const { return packed ? ints.size() : strs.size(); }
};

}  // namespace

uint64_t covering_number(const BlockLattice& L) {
    size_t d = L.dim();
    if (d > max_cube_dim())
        throw ScaleError("cube dimension " + std::to_string(d) +
                         " exceeds cap " + std::to_string(max_cube_dim()) +
                         " (SUMCOVER_MAX_CUBE_DIM)");
    Rref rr = L.gens.rref();
    size_t s = rr.pivots.size();
    size_t q = d - s;
    if (q == 0) return 1;

    // Q has kernel exactly W; the class of a vertex is Q * v.
    FpMatrix M = rr.mat.block(0, 0, s, d);
    FpMatrix Q = s ? M.right_nullspace() : FpMatrix::identity(L.p, d);

    KeySink sink(L.p, q);
    uint64_t total = uint64_t(1) << d;

    if (L.p <= 127) {
        const auto& ops = kernels::active();
        std::vector<std::vector<uint8_t>> cols(d, std::vector<uint8_t>(q));
        for (size_t c = 0; c < d; ++c)
            for (size_t j = 0; j < q; ++j) cols[c][j] = uint8_t(Q.at(j, c));
        std::vector<uint8_t> key(q, 0);
        sink.insert(key.data(), q);
        for (uint64_t i = 1; i < total; ++i) {
            unsigned c = unsigned(__builtin_ctzll(i));
            uint64_t gray = i ^ (i >> 1);
            if ((gray >> c) & 1)
                ops.addmod_bytes(key.data(), key.data(), cols[c].data(),
                                 uint8_t(L.p), q);
            else
                ops.submod_bytes(key.data(), key.data(), cols[c].data(),
                                 uint8_t(L.p), q);
            sink.insert(key.data(), q);
        }
    } else {
        std::vector<std::vector<uint32_t>> cols(d, std::vector<uint32_t>(q));
        for (size_t c = 0; c < d; ++c)
            for (size_t j = 0; j < q; ++j) cols[c][j] = Q.at(j, c);
        std::vector<uint32_t> key(q, 0);
        sink.insert(key.data(), q);
        for (uint64_t i = 1; i < total; ++i) {
            unsigned c = unsigned(__builtin_ctzll(i));
            uint64_t gray = i ^ (i >> 1);
            const auto& col = cols[c];
            if ((gray >> c) & 1) {
                for (size_t j = 0; j < q; ++j) {
                    uint64_t v = uint64_t(key[j]) + col[j];
                    key[j] = uint32_t(v >= L.p ? v - L.p : v);
                }
            } else {
                for (size_t j = 0; j < q; ++j) {
                    int64_t v = int64_t(key[j]) - int64_t(col[j]);
                    key[j] = uint32_t(v < 0 ? v + L.p : v);
                }
            }
            sink.insert(key.data(), q);
        }
    }
    return sink.size();
}

uint64_t covering_number(const IntLattice& L) {
    size_t d = L.dim;
    if (d > max_cube_dim())
        throw ScaleError("cube dimension exceeds cap (SUMCOVER_MAX_CUBE_DIM)");
    if (d >= 64) throw ScaleError("cube dimension beyond 63");
    std::unordered_set<std::string> classes;
    std::vector<mpz_class> v(d);
    for (uint64_t i = 0; i < (uint64_t(1) << d); ++i) {
        for (size_t j = 0; j < d; ++j) v[j] = (i >> j) & 1;
        std::vector<mpz_class> res = L.hnf.reduce(v);
        std::string key;
        for (const auto& x : res) {
            key += x.get_str();
            key += ',';
        }
        classes.insert(std::move(key));
    }
    return classes.size();
}

uint64_t covering_number_bruteforce(const BlockLattice& L) {
    size_t d = L.dim();
    if (d > 16) throw ScaleError("brute-force covering capped at dimension 16");
    // Congruence test: u ~ v iff (u - v) mod p lies in W.
    Rref rr = L.gens.rref();
    size_t s = rr.pivots.size();
    FpMatrix M = rr.mat.block(0, 0, s, d);
    auto in_w = [&](const std::vector<uint32_t>& w) {
        FpMatrix row(L.p, 1, d);
        for (size_t j = 0; j < d; ++j) row.set(0, j, w[j]);
        if (s == 0) return row.is_zero();
        return M.row_space_contains(row);
    };
    std::vector<std::vector<uint32_t>> reps;
    for (uint64_t i = 0; i < (uint64_t(1) << d); ++i) {
        std::vector<uint32_t> v(d);
        for (size_t j = 0; j < d; ++j) v[j] = (i >> j) & 1;
        bool found = false;
        for (const auto& rep : reps) {
            std::vector<uint32_t> diff(d);
            for (size_t j = 0; j < d; ++j)
                diff[j] = (v[j] + L.p - rep[j]) % L.p;
            if (in_w(diff)) {
                found = true;
                break;
            }
        }
        if (!found) reps.push_back(std::move(v));
    }
    return reps.size();
}

// ---------------------------------------------------------------------------

BlockLattice column_sum_lattice(uint32_t p, size_t k, size_t r) {
    FpMatrix gens(p, (k - 1) * r, k * r);
    size_t row = 0;
    for (size_t i = 1; i < k; ++i)
        for (size_t j = 0; j < r; ++j, ++row) {
            gens.set(row, j, 1);
            gens.set(row, i * r + j, p - 1);
        }
    return BlockLattice(p, k, r, std::move(gens));
}

BlockLattice mod_p_image(const IntLattice& L, uint32_t p, size_t k, size_t r) {
    if (k * r != L.dim)
        throw ValidationError("block shape does not match lattice dimension");
    FpMatrix gens(p, L.dim, L.dim);
    for (size_t j = 0; j < L.dim; ++j)
        for (size_t i = 0; i < L.dim; ++i) {
            mpz_class m = L.hnf.cols[j][i] % p;
            if (m < 0) m += p;
            gens.set(j, i, uint32_t(m.get_ui()));
        }
    return BlockLattice(p, k, r, std::move(gens));
}

IntLattice lift_to_int(const BlockLattice& L) {
    size_t d = L.dim();
    std::vector<std::vector<mpz_class>> cols;
    for (size_t i = 0; i < L.gens.rows(); ++i) {
        std::vector<mpz_class> c(d);
        for (size_t j = 0; j < d; ++j) c[j] = L.gens.at(i, j);
        cols.push_back(std::move(c));
    }
    for (size_t j = 0; j < d; ++j) {
        std::vector<mpz_class> c(d, 0);
        c[j] = L.p;
        cols.push_back(std::move(c));
    }
    return int_lattice_from_columns(d, std::move(cols));
}

// ---------------------------------------------------------------------------

BasisSystem::BasisSystem(uint32_t p_, size_t r_, std::vector<FpMatrix> bases_)
    : p(p_), k(bases_.size()), r(r_), bases(std::move(bases_)) {
    if (k < 1) throw ValidationError("basis system needs at least one basis");
    if (r < 1) throw ValidationError("basis rank must be positive");
    for (const auto& b : bases) {
        if (b.p() != p) throw ValidationError("basis characteristic mismatch");
        if (b.rows() != r || b.cols() != r)
            throw ValidationError("basis matrices must be r x r");
        if (!b.is_invertible())
            throw ValidationError("basis matrix is singular");
    }
}

std::vector<uint32_t> basis_map_apply(const BasisSystem& B,
                                      const std::vector<uint32_t>& x) {
    if (x.size() != B.k * B.r)
        throw ValidationError("argument length must be k*r");
    std::vector<uint32_t> out(B.r, 0);
    for (size_t i = 0; i < B.k; ++i)
        for (size_t a = 0; a < B.r; ++a) {
            uint64_t acc = out[a];
            for (size_t b = 0; b < B.r; ++b)
                acc = (acc + uint64_t(B.bases[i].at(a, b)) * (x[i * B.r + b] % B.p)) %
                      B.p;
            out[a] = uint32_t(acc);
        }
    return out;
}

BlockLattice lattice_from_bases(const BasisSystem& B) {
    FpMatrix K(B.p, B.r, B.k * B.r);
    for (size_t i = 0; i < B.k; ++i)
        for (size_t a = 0; a < B.r; ++a)
            for (size_t b = 0; b < B.r; ++b)
                K.set(a, i * B.r + b, B.bases[i].at(a, b));
    FpMatrix W = K.right_nullspace();
    return BlockLattice(B.p, B.k, B.r, std::move(W));
}

bool lattice_leq(const BlockLattice& L1, const BlockLattice& L2) {
    if (L1.p != L2.p || L1.k != L2.k || L1.r != L2.r)
        throw ValidationError("lattice comparison needs matching parameters");
    return L2.gens.row_space_contains(L1.gens);
}

uint64_t star_sumset_size(const BasisSystem& B) {
    GroupSpec g(std::vector<uint64_t>(B.r, B.p));
    std::vector<ElementSet> stars;
    for (const auto& mat : B.bases) {
        std::vector<GroupElement> items;
        for (size_t j = 0; j < B.r; ++j) {
            GroupElement e(B.r);
            for (size_t i = 0; i < B.r; ++i) e[i] = mat.at(i, j);
            items.push_back(std::move(e));
        }
        stars.push_back(subset_sum_set(ElementMultiset(g, std::move(items))));
    }
    return sumset_fold(stars).size();
}

}  // namespace sumcover
