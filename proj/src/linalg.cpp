#include "sumcover/linalg.hpp"

#include <algorithm>
#include <cstdlib>

#include "sumcover/errors.hpp"

namespace sumcover {

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                       23ull, 29ull, 31ull, 37ull})
        if (n % q == 0) return n == q;
    uint64_t d = n - 1;
    unsigned s = 0;
    while (!(d & 1)) d >>= 1, ++s;
    auto mulmod = [](uint64_t a, uint64_t b, uint64_t m) {
        return uint64_t((unsigned __int128)a * b % m);
    };
    // Deterministic for 64-bit inputs with this base set.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                       23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = 1, base = a % n, e = d;
        while (e) {
            if (e & 1) x = mulmod(x, base, n);
            base = mulmod(base, base, n);
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

uint32_t fp_inv(uint32_t a, uint32_t p) {
    int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        int64_t q = r / nr;
        t = std::exchange(nt, t - q * nt);
        r = std::exchange(nr, r - q * nr);
    }
    if (r != 1) throw ValidationError("element not invertible mod p");
    return uint32_t(t < 0 ? t + p : t);
}

// ---------------------------------------------------------------------------

FpMatrix::FpMatrix(uint32_t p, size_t rows, size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
    if (p < 2 || p >= (uint32_t(1) << 31) || !is_prime(p))
        throw ValidationError("matrix characteristic must be a prime < 2^31");
}

FpMatrix FpMatrix::identity(uint32_t p, size_t n) {
    FpMatrix m(p, n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::mul(const FpMatrix& o) const {
    if (cols_ != o.rows_ || p_ != o.p_)
        throw ValidationError("matrix product shape mismatch");
    FpMatrix r(p_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            uint64_t f = at(i, k);
            if (!f) continue;
            for (size_t j = 0; j < o.cols_; ++j)
                r.a_[i * o.cols_ + j] =
                    uint32_t((r.a_[i * o.cols_ + j] + f * o.at(k, j)) % p_);
        }
    return r;
}

FpMatrix FpMatrix::add(const FpMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_)
        throw ValidationError("matrix sum shape mismatch");
    FpMatrix r(p_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = uint32_t((uint64_t(a_[i]) + o.a_[i]) % p_);
    return r;
}

FpMatrix FpMatrix::sub(const FpMatrix& o) const { return add(o.neg()); }

FpMatrix FpMatrix::neg() const {
    FpMatrix r(p_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = a_[i] ? p_ - a_[i] : 0;
    return r;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix r(p_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

FpMatrix FpMatrix::hstack(const FpMatrix& o) const {
    if (rows_ != o.rows_ || p_ != o.p_)
        throw ValidationError("hstack shape mismatch");
    FpMatrix r(p_, rows_, cols_ + o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
        for (size_t j = 0; j < o.cols_; ++j) r.set(i, cols_ + j, o.at(i, j));
    }
    return r;
}

FpMatrix FpMatrix::vstack(const FpMatrix& o) const {
    if (cols_ != o.cols_ || p_ != o.p_)
        throw ValidationError("vstack shape mismatch");
    FpMatrix r(p_, rows_ + o.rows_, cols_);
    std::copy(a_.begin(), a_.end(), r.a_.begin());
    std::copy(o.a_.begin(), o.a_.end(), r.a_.begin() + ptrdiff_t(a_.size()));
    return r;
}

FpMatrix FpMatrix::block(size_t i0, size_t j0, size_t nr, size_t nc) const {
    if (i0 + nr > rows_ || j0 + nc > cols_)
        throw ValidationError("block out of range");
    FpMatrix r(p_, nr, nc);
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j) r.set(i, j, at(i0 + i, j0 + j));
    return r;
}

bool FpMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](uint32_t v) { return v == 0; });
}

bool FpMatrix::operator==(const FpMatrix& o) const {
    return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Rref FpMatrix::rref() const {
    Rref out{*this, identity(p_, rows_), {}};
    FpMatrix& m = out.mat;
    FpMatrix& t = out.transform;
    auto swap_rows = [&](FpMatrix& x, size_t a, size_t b) {
        for (size_t j = 0; j < x.cols_; ++j) {
            uint32_t tmp = x.at(a, j);
            x.set(a, j, x.at(b, j));
            x.set(b, j, tmp);
        }
    };
    auto scale_row = [&](FpMatrix& x, size_t i, uint64_t f) {
        for (size_t j = 0; j < x.cols_; ++j)
            x.set(i, j, uint32_t(f * x.at(i, j) % p_));
    };
    auto axpy_row = [&](FpMatrix& x, size_t dst, size_t src, uint64_t f) {
        // row dst -= f * row src
        for (size_t j = 0; j < x.cols_; ++j) {
            uint64_t v = x.at(dst, j) + (p_ - uint32_t(f * x.at(src, j) % p_));
            x.set(dst, j, uint32_t(v % p_));
        }
    };

    size_t lead = 0;
    for (size_t col = 0; col < cols_ && lead < rows_; ++col) {
        size_t piv = lead;
        while (piv < rows_ && m.at(piv, col) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != lead) {
            swap_rows(m, piv, lead);
            swap_rows(t, piv, lead);
        }
        uint64_t inv = fp_inv(m.at(lead, col), p_);
        scale_row(m, lead, inv);
        scale_row(t, lead, inv);
        for (size_t i = 0; i < rows_; ++i) {
            if (i == lead) continue;
            uint32_t f = m.at(i, col);
            if (!f) continue;
            axpy_row(m, i, lead, f);
            axpy_row(t, i, lead, f);
        }
        out.pivots.push_back(col);
        ++lead;
    }
    return out;
}

size_t FpMatrix::rank() const { return rref().pivots.size(); }

uint32_t FpMatrix::det() const {
    if (rows_ != cols_) throw ValidationError("determinant of non-square matrix");
    FpMatrix m = *this;
    uint64_t d = 1;
    for (size_t col = 0; col < cols_; ++col) {
        size_t piv = col;
        while (piv < rows_ && m.at(piv, col) == 0) ++piv;
        if (piv == rows_) return 0;
        if (piv != col) {
            for (size_t j = 0; j < cols_; ++j) {
                uint32_t tmp = m.at(col, j);
                m.set(col, j, m.at(piv, j));
                m.set(piv, j, tmp);
            }
            d = (d * (p_ - 1)) % p_;
        }
        uint32_t pv = m.at(col, col);
        d = d * pv % p_;
        uint64_t inv = fp_inv(pv, p_);
        for (size_t i = col + 1; i < rows_; ++i) {
            uint64_t f = m.at(i, col) * inv % p_;
            if (!f) continue;
            for (size_t j = col; j < cols_; ++j) {
                uint64_t v = m.at(i, j) + (p_ - uint32_t(f * m.at(col, j) % p_));
                m.set(i, j, uint32_t(v % p_));
            }
        }
    }
    return uint32_t(d);
}

std::optional<FpMatrix> FpMatrix::inverse() const {
    if (rows_ != cols_) throw ValidationError("inverse of non-square matrix");
    Rref rr = rref();
    if (rr.pivots.size() != rows_) return std::nullopt;
    return rr.transform;
}

bool FpMatrix::is_invertible() const {
    return rows_ == cols_ && rank() == rows_;
}

std::optional<FpMatrix> FpMatrix::solve_left(const FpMatrix& rhs) const {
    if (rhs.cols_ != cols_ || rhs.p_ != p_)
        throw ValidationError("solve_left shape mismatch");
    Rref rr = rref();
    FpMatrix x(p_, rhs.rows_, rows_);
    for (size_t i = 0; i < rhs.rows_; ++i) {
        // Coefficients against the rref rows are read off the pivot columns.
        std::vector<uint64_t> c(rr.pivots.size());
        for (size_t k = 0; k < rr.pivots.size(); ++k)
            c[k] = rhs.at(i, rr.pivots[k]);
        for (size_t j = 0; j < cols_; ++j) {
            uint64_t v = 0;
            for (size_t k = 0; k < rr.pivots.size(); ++k)
                v = (v + c[k] * rr.mat.at(k, j)) % p_;
            if (v != rhs.at(i, j)) return std::nullopt;
        }
        for (size_t j = 0; j < rows_; ++j) {
            uint64_t v = 0;
            for (size_t k = 0; k < rr.pivots.size(); ++k)
                v = (v + c[k] * rr.transform.at(k, j)) % p_;
            x.set(i, j, uint32_t(v));
        }
    }
    return x;
}

FpMatrix FpMatrix::right_nullspace() const {
    Rref rr = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : rr.pivots) is_pivot[c] = true;
    FpMatrix ns(p_, cols_ - rr.pivots.size(), cols_);
    size_t row = 0;
    for (size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        ns.set(row, f, 1);
        for (size_t k = 0; k < rr.pivots.size(); ++k) {
            uint32_t v = rr.mat.at(k, f);
            ns.set(row, rr.pivots[k], v ? p_ - v : 0);
        }
        ++row;
    }
    return ns;
}

bool FpMatrix::row_space_contains(const FpMatrix& other) const {
    return solve_left(other).has_value();
}

// ---------------------------------------------------------------------------

RankResult rank_of_fp_vectors(uint32_t p,
                              const std::vector<std::vector<uint32_t>>& vecs) {
    RankResult res{0, {}};
    std::vector<std::vector<uint32_t>> basis;
    std::vector<size_t> pivcol;
    for (size_t idx = 0; idx < vecs.size(); ++idx) {
        std::vector<uint32_t> w = vecs[idx];
        for (auto& v : w) v %= p;
        for (size_t k = 0; k < basis.size(); ++k) {
            uint64_t f = w[pivcol[k]];
            if (!f) continue;
            for (size_t j = 0; j < w.size(); ++j)
                w[j] = uint32_t((w[j] + (p - uint32_t(f * basis[k][j] % p))) % p);
        }
        size_t piv = w.size();
        for (size_t j = 0; j < w.size(); ++j)
            if (w[j]) {
                piv = j;
                break;
            }
        if (piv == w.size()) continue;
        uint64_t inv = fp_inv(w[piv], p);
        for (auto& v : w) v = uint32_t(inv * v % p);
        basis.push_back(std::move(w));
        pivcol.push_back(piv);
        res.independent.push_back(idx);
        ++res.rank;
    }
    return res;
}

RankResult rank_of_q_vectors(const std::vector<std::vector<mpq_class>>& vecs) {
    RankResult res{0, {}};
    std::vector<std::vector<mpq_class>> basis;
    std::vector<size_t> pivcol;
    for (size_t idx = 0; idx < vecs.size(); ++idx) {
        std::vector<mpq_class> w = vecs[idx];
        for (size_t k = 0; k < basis.size(); ++k) {
            mpq_class f = w[pivcol[k]];
            if (f == 0) continue;
            for (size_t j = 0; j < w.size(); ++j) w[j] -= f * basis[k][j];
        }
        size_t piv = w.size();
        for (size_t j = 0; j < w.size(); ++j)
            if (w[j] != 0) {
                piv = j;
                break;
            }
        if (piv == w.size()) continue;
        mpq_class inv = w[piv];
        for (auto& v : w) v /= inv;
        basis.push_back(std::move(w));
        pivcol.push_back(piv);
        res.independent.push_back(idx);
        ++res.rank;
    }
    return res;
}

FpMatrix complete_columns_to_invertible(const FpMatrix& cols) {
    uint32_t p = cols.p();
    size_t r = cols.rows(), s = cols.cols();
    std::vector<std::vector<uint32_t>> vecs;
    for (size_t j = 0; j < s; ++j) {
        std::vector<uint32_t> v(r);
        for (size_t i = 0; i < r; ++i) v[i] = cols.at(i, j);
        vecs.push_back(std::move(v));
    }
    if (rank_of_fp_vectors(p, vecs).rank != s)
        throw ValidationError("columns to complete are not independent");
    std::vector<std::vector<uint32_t>> chosen = vecs;
    for (size_t i = 0; i < r && chosen.size() < r; ++i) {
        std::vector<uint32_t> e(r, 0);
        e[i] = 1;
        chosen.push_back(e);
        if (rank_of_fp_vectors(p, chosen).rank != chosen.size())
            chosen.pop_back();
    }
    if (chosen.size() != r)
        throw InternalError("failed to complete columns to a square basis");
    FpMatrix out(p, r, r);
    for (size_t j = 0; j < r; ++j)
        for (size_t i = 0; i < r; ++i) out.set(i, j, chosen[j][i]);
    return out;
}

StrictTriangularization strict_upper_triangularize(const FpMatrix& N) {
    if (N.rows() != N.cols())
        throw ValidationError("strict triangularization needs a square matrix");
    uint32_t p = N.p();
    size_t r = N.rows();
    Rref rr = N.rref();
    size_t s = rr.pivots.size();
    if (s == r)
        throw ValidationError("matrix is invertible; no strict upper form");
    if (s == 0) return {FpMatrix::identity(p, r), FpMatrix::identity(p, r)};

    // Rank factorization N = C * R: C the pivot columns of N, R the nonzero
    // rref rows.
    FpMatrix C(p, r, s);
    for (size_t k = 0; k < s; ++k)
        for (size_t i = 0; i < r; ++i) C.set(i, k, N.at(i, rr.pivots[k]));
    FpMatrix R = rr.mat.block(0, 0, s, N.cols());
    if (C.mul(R) != N) throw InternalError("rank factorization mismatch");

    FpMatrix Cfull = complete_columns_to_invertible(C);
    FpMatrix Rfull = complete_columns_to_invertible(R.transpose()).transpose();

    // Permutation moving the I_s block strictly above the diagonal:
    // column i of diag(I_s, 0) lands at column r-s+i.
    FpMatrix Pu(p, r, r);
    for (size_t i = 0; i < s; ++i) Pu.set(i, r - s + i, 1);
    for (size_t t = 0; s + t < r; ++t) Pu.set(s + t, t, 1);

    StrictTriangularization out{Rfull.inverse().value().mul(Pu),
                                Cfull.inverse().value()};
    FpMatrix check = out.V.mul(N).mul(out.U);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j <= i; ++j)
            if (check.at(i, j) != 0)
                throw InternalError("strict triangularization check failed");
    return out;
}

// ---------------------------------------------------------------------------

std::vector<mpz_class> Hnf::reduce(std::vector<mpz_class> v) const {
    if (v.size() != dim) throw ValidationError("vector length mismatch");
    for (size_t j = 0; j < dim; ++j) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), v[j].get_mpz_t(), cols[j][j].get_mpz_t());
        if (q != 0)
            for (size_t i = j; i < dim; ++i) v[i] -= q * cols[j][i];
    }
    return v;
}

Hnf hnf_from_columns(size_t dim, std::vector<std::vector<mpz_class>> gens) {
    if (dim == 0) throw ValidationError("lattice dimension must be positive");
    for (const auto& g : gens)
        if (g.size() != dim)
            throw ValidationError("lattice generator length mismatch");

    auto& C = gens;
    for (size_t row = 0; row < dim; ++row) {
        // Euclid over the entries of this row across the free columns until
        // one nonzero survives; it becomes column `row`.
        while (true) {
            size_t best = C.size();
            for (size_t j = row; j < C.size(); ++j) {
                if (C[j][row] == 0) continue;
                if (best == C.size() ||
                    cmp(abs(C[j][row]), abs(C[best][row])) < 0)
                    best = j;
            }
            if (best == C.size())
                throw ValidationError(
                    "lattice generators do not have full rank");
            bool leftover = false;
            for (size_t j = row; j < C.size(); ++j) {
                if (j == best || C[j][row] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), C[j][row].get_mpz_t(),
                           C[best][row].get_mpz_t());
                for (size_t i = 0; i < dim; ++i) C[j][i] -= q * C[best][i];
                if (C[j][row] != 0) leftover = true;
            }
            if (!leftover) {
                std::swap(C[row], C[best]);
                break;
            }
        }
        if (C[row][row] < 0)
            for (auto& v : C[row]) v = -v;
    }
    C.resize(dim);

    // Normalize: entries left of each diagonal into [0, diag).
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < i; ++j) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), C[j][i].get_mpz_t(),
                       C[i][i].get_mpz_t());
            if (q != 0)
                for (size_t l = i; l < dim; ++l) C[j][l] -= q * C[i][l];
        }

    Hnf h;
    h.dim = dim;
    h.det = 1;
    for (size_t i = 0; i < dim; ++i) h.det *= C[i][i];
    h.cols = std::move(C);
    return h;
}

}  // namespace sumcover
