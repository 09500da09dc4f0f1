#pragma once

#include <optional>
#include <vector>

#include "icbound/field.hpp"

namespace icbound {

using fvec = std::vector<felem>;

/// Dense row-major matrix over a finite field.
class FqMatrix {
  public:
    FqMatrix(Field f, int rows, int cols)
        : field_(std::move(f)), rows_(rows), cols_(cols),
          e_(static_cast<size_t>(rows) * cols, 0) {}
    FqMatrix(Field f, int rows, int cols, std::vector<felem> entries);

    static FqMatrix identity(const Field& f, int n);
    static FqMatrix from_rows(const Field& f, const std::vector<fvec>& rows, int cols);

    const Field& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    felem at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }
    felem& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
    const std::vector<felem>& entries() const { return e_; }

    fvec row(int r) const;
    void set_row(int r, const fvec& v);

    FqMatrix transpose() const;
    FqMatrix mul(const FqMatrix& o) const;
    FqMatrix stack(const FqMatrix& below) const;
    FqMatrix submatrix_rows(const std::vector<int>& rows) const;
    FqMatrix submatrix_cols(const std::vector<int>& cols) const;

    bool operator==(const FqMatrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

  private:
    Field field_;
    int rows_, cols_;
    std::vector<felem> e_;
};

int rank(const FqMatrix& m);

/// Unique reduced row echelon form (zero rows kept at the bottom).
FqMatrix rref(const FqMatrix& m);

struct SolveResult {
    bool feasible = false;
    fvec particular;                // one x with A x = b
    std::vector<fvec> kernel;       // basis of {x : A x = 0}
};

/// All solutions of A x = b, x a column vector.
SolveResult solve(const FqMatrix& a, const fvec& b);

bool in_rowspace(const fvec& v, const FqMatrix& m);

/// Least coefficient vector c (by entries, scanned left to right over the
/// canonical encoding) with c * basis == target, if any. `basis` rows need
/// not be independent.
std::optional<fvec> row_combination(const FqMatrix& basis, const fvec& target);

fvec vec_add(const Field& f, const fvec& a, const fvec& b);
fvec vec_sub(const Field& f, const fvec& a, const fvec& b);
fvec vec_scale(const Field& f, felem s, const fvec& a);
fvec mat_vec(const FqMatrix& m, const fvec& x);   // m * x
fvec vec_mat(const fvec& x, const FqMatrix& m);   // x * m
felem dot(const Field& f, const fvec& a, const fvec& b);
bool is_zero(const fvec& a);

/// Subspace of F_q^n stored as an RREF basis, so equality of subspaces is
/// structural equality of bases.
class Subspace {
  public:
    Subspace(Field f, int ambient_dim);  // zero space
    static Subspace from_rows(const FqMatrix& rows);

    const Field& field() const { return basis_.field(); }
    int ambient_dim() const { return basis_.cols(); }
    int dim() const { return basis_.rows(); }
    const FqMatrix& basis() const { return basis_; }

    bool contains(const fvec& v) const;
    bool contains(const Subspace& o) const;
    /// Coordinates of v over the RREF basis (v must lie in the subspace).
    fvec coordinates(const fvec& v) const;

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

  private:
    explicit Subspace(FqMatrix basis) : basis_(std::move(basis)) {}
    FqMatrix basis_;
};

Subspace subspace_sum(const Subspace& u, const Subspace& w);
Subspace subspace_intersect(const Subspace& u, const Subspace& w);

/// Incremental echelon basis used by search loops; keeps reduced rows.
class Echelon {
  public:
    explicit Echelon(Field f, int cols) : field_(std::move(f)), cols_(cols) {}
    int rank() const { return static_cast<int>(rows_.size()); }
    /// Reduces v against the basis; inserts the residue if nonzero.
    /// Returns true if the rank grew.
    bool insert(fvec v);
    /// True iff v is in the span.
    bool reduces_to_zero(fvec v) const;
    const std::vector<fvec>& rows() const { return rows_; }

  private:
    Field field_;
    int cols_;
    std::vector<fvec> rows_;    // each with a leading 1 at pivots_[i]
    std::vector<int> pivots_;
};

}  // namespace icbound
