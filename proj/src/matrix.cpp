#include "icbound/matrix.hpp"

#include <algorithm>

namespace icbound {

FqMatrix::FqMatrix(Field f, int rows, int cols, std::vector<felem> entries)
    : field_(std::move(f)), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != static_cast<size_t>(rows) * cols)
        throw DimensionMismatch("entry count does not match rows*cols");
    for (felem x : e_)
        if (x >= field_.q()) throw DimensionMismatch("entry out of field range");
}

FqMatrix FqMatrix::identity(const Field& f, int n) {
    FqMatrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FqMatrix FqMatrix::from_rows(const Field& f, const std::vector<fvec>& rows, int cols) {
    FqMatrix m(f, static_cast<int>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != cols)
            throw DimensionMismatch("row length mismatch");
        m.set_row(static_cast<int>(i), rows[i]);
    }
    return m;
}

fvec FqMatrix::row(int r) const {
    return fvec(e_.begin() + static_cast<size_t>(r) * cols_,
                e_.begin() + static_cast<size_t>(r + 1) * cols_);
}

void FqMatrix::set_row(int r, const fvec& v) {
    std::copy(v.begin(), v.end(), e_.begin() + static_cast<size_t>(r) * cols_);
}

FqMatrix FqMatrix::transpose() const {
    FqMatrix t(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

FqMatrix FqMatrix::mul(const FqMatrix& o) const {
    if (field_ != o.field_ || cols_ != o.rows_)
        throw DimensionMismatch("matrix product shape");
    FqMatrix r(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            felem a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                r.at(i, j) = field_.add(r.at(i, j), field_.mul(a, o.at(k, j)));
        }
    return r;
}

FqMatrix FqMatrix::stack(const FqMatrix& below) const {
    if (field_ != below.field_ || cols_ != below.cols_)
        throw DimensionMismatch("stack shape");
    FqMatrix r(field_, rows_ + below.rows_, cols_);
    std::copy(e_.begin(), e_.end(), r.e_.begin());
    std::copy(below.e_.begin(), below.e_.end(), r.e_.begin() + e_.size());
    return r;
}

FqMatrix FqMatrix::submatrix_rows(const std::vector<int>& rows) const {
    FqMatrix r(field_, static_cast<int>(rows.size()), cols_);
    for (size_t i = 0; i < rows.size(); ++i) r.set_row(static_cast<int>(i), row(rows[i]));
    return r;
}

FqMatrix FqMatrix::submatrix_cols(const std::vector<int>& cols) const {
    FqMatrix r(field_, rows_, static_cast<int>(cols.size()));
    for (int i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols.size(); ++j) r.at(i, static_cast<int>(j)) = at(i, cols[j]);
    return r;
}

namespace {

// In-place Gauss-Jordan; returns pivot columns.
std::vector<int> gauss_jordan(FqMatrix& m) {
    const Field& f = m.field();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int sel = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c) != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
        felem piv_inv = f.inv(m.at(r, c));
        for (int j = c; j < m.cols(); ++j) m.at(r, j) = f.mul(piv_inv, m.at(r, j));
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            felem factor = m.at(i, c);
            if (factor == 0) continue;
            for (int j = c; j < m.cols(); ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int rank(const FqMatrix& m) {
    FqMatrix work = m;
    return static_cast<int>(gauss_jordan(work).size());
}

FqMatrix rref(const FqMatrix& m) {
    FqMatrix work = m;
    gauss_jordan(work);
    return work;
}

SolveResult solve(const FqMatrix& a, const fvec& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw DimensionMismatch("rhs length must equal row count");
    const Field& f = a.field();
    // augmented [A | b]
    FqMatrix aug(f, a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    std::vector<int> pivots = gauss_jordan(aug);
    SolveResult res;
    for (int p : pivots)
        if (p == a.cols()) return res;  // inconsistent
    res.feasible = true;
    res.particular.assign(a.cols(), 0);
    std::vector<int> pivot_of_col(a.cols(), -1);
    for (size_t i = 0; i < pivots.size(); ++i) {
        pivot_of_col[pivots[i]] = static_cast<int>(i);
        res.particular[pivots[i]] = aug.at(static_cast<int>(i), a.cols());
    }
    for (int c = 0; c < a.cols(); ++c) {
        if (pivot_of_col[c] >= 0) continue;
        fvec k(a.cols(), 0);
        k[c] = 1;
        for (int cc = 0; cc < a.cols(); ++cc) {
            int pr = pivot_of_col[cc];
            if (pr >= 0) k[cc] = f.neg(aug.at(pr, c));
        }
        res.kernel.push_back(std::move(k));
    }
    return res;
}

bool in_rowspace(const fvec& v, const FqMatrix& m) {
    if (static_cast<int>(v.size()) != m.cols())
        throw DimensionMismatch("vector length must equal column count");
    Echelon ech(m.field(), m.cols());
    for (int i = 0; i < m.rows(); ++i) ech.insert(m.row(i));
    return ech.reduces_to_zero(v);
}

std::optional<fvec> row_combination(const FqMatrix& basis, const fvec& target) {
    SolveResult s = solve(basis.transpose(), target);
    if (!s.feasible) return std::nullopt;
    return s.particular;
}

fvec vec_add(const Field& f, const fvec& a, const fvec& b) {
    fvec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
    return r;
}

fvec vec_sub(const Field& f, const fvec& a, const fvec& b) {
    fvec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
    return r;
}

fvec vec_scale(const Field& f, felem s, const fvec& a) {
    fvec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = f.mul(s, a[i]);
    return r;
}

fvec mat_vec(const FqMatrix& m, const fvec& x) {
    if (static_cast<int>(x.size()) != m.cols()) throw DimensionMismatch("mat_vec shape");
    const Field& f = m.field();
    fvec r(m.rows(), 0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            r[i] = f.add(r[i], f.mul(m.at(i, j), x[j]));
    return r;
}

fvec vec_mat(const fvec& x, const FqMatrix& m) {
    if (static_cast<int>(x.size()) != m.rows()) throw DimensionMismatch("vec_mat shape");
    const Field& f = m.field();
    fvec r(m.cols(), 0);
    for (int i = 0; i < m.rows(); ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < m.cols(); ++j)
            r[j] = f.add(r[j], f.mul(x[i], m.at(i, j)));
    }
    return r;
}

felem dot(const Field& f, const fvec& a, const fvec& b) {
    felem s = 0;
    for (size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

bool is_zero(const fvec& a) {
    return std::all_of(a.begin(), a.end(), [](felem x) { return x == 0; });
}

Subspace::Subspace(Field f, int ambient_dim) : basis_(std::move(f), 0, ambient_dim) {}

Subspace Subspace::from_rows(const FqMatrix& rows) {
    FqMatrix work = rows;
    std::vector<int> pivots = gauss_jordan(work);
    FqMatrix basis(rows.field(), static_cast<int>(pivots.size()), rows.cols());
    for (size_t i = 0; i < pivots.size(); ++i)
        basis.set_row(static_cast<int>(i), work.row(static_cast<int>(i)));
    return Subspace(std::move(basis));
}

bool Subspace::contains(const fvec& v) const {
    if (dim() == 0) return is_zero(v);
    return in_rowspace(v, basis_);
}

bool Subspace::contains(const Subspace& o) const {
    for (int i = 0; i < o.dim(); ++i)
        if (!contains(o.basis().row(i))) return false;
    return true;
}

fvec Subspace::coordinates(const fvec& v) const {
    // RREF basis: the coordinate over row i is v at that row's pivot column.
    const Field& f = field();
    fvec coords(dim(), 0);
    fvec residue = v;
    for (int i = 0; i < dim(); ++i) {
        int pc = -1;
        for (int j = 0; j < ambient_dim(); ++j)
            if (basis_.at(i, j) != 0) {
                pc = j;
                break;
            }
        coords[i] = residue[pc];
        if (coords[i] != 0)
            residue = vec_sub(f, residue, vec_scale(f, coords[i], basis_.row(i)));
    }
    if (!is_zero(residue)) throw PreconditionViolated("vector not in subspace");
    return coords;
}

Subspace subspace_sum(const Subspace& u, const Subspace& w) {
    if (u.field() != w.field() || u.ambient_dim() != w.ambient_dim())
        throw DimensionMismatch("subspace sum");
    return Subspace::from_rows(u.basis().stack(w.basis()));
}

Subspace subspace_intersect(const Subspace& u, const Subspace& w) {
    if (u.field() != w.field() || u.ambient_dim() != w.ambient_dim())
        throw DimensionMismatch("subspace intersection");
    const Field& f = u.field();
    int n = u.ambient_dim();
    if (u.dim() == 0 || w.dim() == 0) return Subspace(f, n);
    // kernel method: solve a*U - b*W = 0 over pairs (a, b)
    FqMatrix sys(f, n, u.dim() + w.dim());
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < u.dim(); ++i) sys.at(j, i) = u.basis().at(i, j);
        for (int i = 0; i < w.dim(); ++i)
            sys.at(j, u.dim() + i) = f.neg(w.basis().at(i, j));
    }
    SolveResult s = solve(sys, fvec(n, 0));
    std::vector<fvec> gens;
    for (const fvec& k : s.kernel) {
        fvec a(k.begin(), k.begin() + u.dim());
        gens.push_back(vec_mat(a, u.basis()));
    }
    return Subspace::from_rows(FqMatrix::from_rows(f, gens, n));
}

bool Echelon::insert(fvec v) {
    for (size_t i = 0; i < rows_.size(); ++i) {
        felem c = v[pivots_[i]];
        if (c != 0) v = vec_sub(field_, v, vec_scale(field_, c, rows_[i]));
    }
    int pc = -1;
    for (int j = 0; j < cols_; ++j)
        if (v[j] != 0) {
            pc = j;
            break;
        }
    if (pc < 0) return false;
    v = vec_scale(field_, field_.inv(v[pc]), v);
    rows_.push_back(std::move(v));
    pivots_.push_back(pc);
    return true;
}

bool Echelon::reduces_to_zero(fvec v) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
        felem c = v[pivots_[i]];
        if (c != 0) v = vec_sub(field_, v, vec_scale(field_, c, rows_[i]));
    }
    return is_zero(v);
}

}  // namespace icbound
