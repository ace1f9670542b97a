#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stablecat/common.hpp"

namespace stablecat {

/// The prime field F_p. Elements are canonical representatives in [0, p).
struct PrimeField {
    std::int64_t p;

    explicit PrimeField(std::int64_t prime);

    bool operator==(const PrimeField& other) const { return p == other.p; }
    bool operator!=(const PrimeField& other) const { return p != other.p; }

    std::int64_t reduce(std::int64_t a) const {
        std::int64_t r = a % p;
        return r < 0 ? r + p : r;
    }
    std::int64_t add(std::int64_t a, std::int64_t b) const { return (a + b) % p; }
    std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
    std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a * b) % p; }
    std::int64_t neg(std::int64_t a) const { return reduce(-a); }
    std::int64_t inv(std::int64_t a) const;
};

/// Dense matrix over a prime field, row-major, entries kept reduced mod p.
class FieldMatrix {
  public:
    FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static FieldMatrix identity(PrimeField field, std::size_t n);
    /// Builds a matrix from row data; entries are reduced mod p.
    static FieldMatrix from_rows(PrimeField field,
                                 const std::vector<std::vector<std::int64_t>>& rows);

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::int64_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::int64_t v) {
        a_[r * cols_ + c] = field_.reduce(v);
    }

    bool operator==(const FieldMatrix& other) const;
    bool operator!=(const FieldMatrix& other) const { return !(*this == other); }
    bool is_zero() const;

    FieldMatrix transpose() const;
    std::vector<std::int64_t> row(std::size_t r) const;
    std::vector<std::int64_t> col(std::size_t c) const;
    FieldMatrix select_rows(const std::vector<std::size_t>& idx) const;
    FieldMatrix select_cols(const std::vector<std::size_t>& idx) const;

  private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<std::int64_t> a_;
};

FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix sub(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix neg(const FieldMatrix& a);
FieldMatrix scale(std::int64_t c, const FieldMatrix& a);
FieldMatrix mul(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b);

/// Kronecker product; index convention (i,j) -> i*b.rows()+j on rows and
/// likewise on columns, so kron(A,B)(e_i (x) e_j) = (A e_i) (x) (B e_j).
FieldMatrix kron(const FieldMatrix& a, const FieldMatrix& b);

/// Matrix-vector product.
std::vector<std::int64_t> mat_apply(const FieldMatrix& a, const std::vector<std::int64_t>& v);

/// Column vector as a dim x 1 matrix.
FieldMatrix col_vector(PrimeField field, const std::vector<std::int64_t>& v);

struct Rref {
    FieldMatrix reduced;
    std::vector<std::size_t> pivots;  ///< pivot column per nonzero row
};

/// Reduced row echelon form. Deterministic: scans columns left to right and
/// picks the first nonzero entry at or below the current row as pivot,
/// normalized to 1.
Rref rref(const FieldMatrix& m);

std::size_t rank(const FieldMatrix& m);

/// Columns form a basis of the null space {v : m v = 0}, derived from the
/// rref by the standard free-column construction (deterministic).
FieldMatrix kernel_basis(const FieldMatrix& m);

/// Solves m x = b for each column of b; std::nullopt if inconsistent.
std::optional<FieldMatrix> solve(const FieldMatrix& m, const FieldMatrix& b);

/// Stacks matrix columns into one long column, column by column.
FieldMatrix vec_columns(const FieldMatrix& m);
/// Inverse of vec_columns given the intended shape.
FieldMatrix unvec_columns(const FieldMatrix& v, std::size_t rows, std::size_t cols);

/// A subspace of F^n in canonical form: the reduced row echelon basis of its
/// row space. Equal subspaces always produce identical objects.
class RowSpace {
  public:
    /// From spanning row vectors.
    static RowSpace from_rows(const FieldMatrix& rows_mat);
    /// From spanning column vectors.
    static RowSpace from_cols(const FieldMatrix& cols_mat);
    static RowSpace zero(PrimeField field, std::size_t ambient);
    static RowSpace full(PrimeField field, std::size_t ambient);

    std::size_t dim() const { return basis_.rows(); }
    std::size_t ambient() const { return basis_.cols(); }
    const FieldMatrix& basis_rows() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Canonical basis as columns (transpose of the echelon rows); useful as
    /// an inclusion matrix F^dim -> F^ambient.
    FieldMatrix basis_columns() const { return basis_.transpose(); }

    bool contains_col(const std::vector<std::int64_t>& v) const;
    bool contains_all_cols(const FieldMatrix& m) const;
    bool operator==(const RowSpace& other) const;

    /// Residual of v after eliminating pivot coordinates.
    std::vector<std::int64_t> reduce_col(const std::vector<std::int64_t>& v) const;
    /// Coordinates of a contained vector in the echelon basis.
    std::vector<std::int64_t> coords_of(const std::vector<std::int64_t>& v) const;

    /// Ambient coordinates not used as pivots; they index a canonical basis
    /// of the quotient F^ambient / this.
    std::vector<std::size_t> free_coordinates() const;
    /// Quotient projection F^ambient -> F^q, q = ambient - dim.
    FieldMatrix quotient_projection() const;
    /// Canonical section F^q -> F^ambient (unit vectors at free coordinates).
    FieldMatrix quotient_section() const;

    static RowSpace sum(const RowSpace& a, const RowSpace& b);

  private:
    RowSpace(FieldMatrix basis, std::vector<std::size_t> pivots)
        : basis_(std::move(basis)), pivots_(std::move(pivots)) {}
    FieldMatrix basis_;
    std::vector<std::size_t> pivots_;
};

}  // namespace stablecat
