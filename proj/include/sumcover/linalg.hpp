#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace sumcover {

bool is_prime(uint64_t n);
uint32_t fp_inv(uint32_t a, uint32_t p);

class FpMatrix;

// Row-reduced echelon data: transform * original == mat.
struct Rref;

// Dense row-major matrix over F_p, p prime < 2^31.
class FpMatrix {
  public:
    FpMatrix(uint32_t p, size_t rows, size_t cols);
    static FpMatrix identity(uint32_t p, size_t n);

    uint32_t p() const { return p_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint32_t at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
    void set(size_t i, size_t j, uint32_t v) { a_[i * cols_ + j] = v % p_; }

    FpMatrix mul(const FpMatrix& o) const;
    FpMatrix add(const FpMatrix& o) const;
    FpMatrix sub(const FpMatrix& o) const;
    FpMatrix neg() const;
    FpMatrix transpose() const;
    FpMatrix hstack(const FpMatrix& o) const;
    FpMatrix vstack(const FpMatrix& o) const;
    FpMatrix block(size_t i0, size_t j0, size_t nr, size_t nc) const;
    bool is_zero() const;
    bool operator==(const FpMatrix& o) const;
    bool operator!=(const FpMatrix& o) const { return !(*this == o); }

    Rref rref() const;

    size_t rank() const;
    uint32_t det() const;  // square only
    std::optional<FpMatrix> inverse() const;
    bool is_invertible() const;

    // Solve X * this == rhs (rhs rows as combinations of this's rows).
    std::optional<FpMatrix> solve_left(const FpMatrix& rhs) const;

    // Basis of { v : this * v == 0 }, returned as rows.
    FpMatrix right_nullspace() const;

    bool row_space_contains(const FpMatrix& other) const;

  private:
    uint32_t p_;
    size_t rows_, cols_;
    std::vector<uint32_t> a_;
};

struct Rref {
    FpMatrix mat;            // the reduced form
    FpMatrix transform;      // transform * original == mat
    std::vector<size_t> pivots;
};

struct RankResult {
    size_t rank;
    std::vector<size_t> independent;  // indices of a maximal independent subset
};
RankResult rank_of_fp_vectors(uint32_t p,
                              const std::vector<std::vector<uint32_t>>& vecs);
RankResult rank_of_q_vectors(const std::vector<std::vector<mpq_class>>& vecs);

// Append unit columns to independent columns until square invertible.
FpMatrix complete_columns_to_invertible(const FpMatrix& cols);

// For square singular N, invertible U and V with V * N * U strictly upper
// triangular (zero diagonal included).
struct StrictTriangularization {
    FpMatrix U, V;
};
StrictTriangularization strict_upper_triangularize(const FpMatrix& N);

// Column-style Hermite normal form: lower triangular, positive diagonal,
// entries left of the diagonal reduced into [0, diagonal).
struct Hnf {
    size_t dim = 0;
    std::vector<std::vector<mpz_class>> cols;  // cols[j][i]
    mpz_class det;

    // Canonical representative of v modulo the lattice.
    std::vector<mpz_class> reduce(std::vector<mpz_class> v) const;
};

// Lattice generated by the given columns; throws ValidationError unless the
// columns span a full-rank sublattice of Z^dim.
Hnf hnf_from_columns(size_t dim, std::vector<std::vector<mpz_class>> gens);

}  // namespace sumcover
