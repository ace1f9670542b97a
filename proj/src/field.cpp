#include "stablecat/field.hpp"

#include <algorithm>

namespace stablecat {

namespace {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void check_same_field(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.field() != b.field()) throw invariant_error("matrices over different fields");
}

}  // namespace

PrimeField::PrimeField(std::int64_t prime) : p(prime) {
    if (!is_prime(prime)) throw invariant_error("field order must be prime: " + std::to_string(prime));
}

std::int64_t PrimeField::inv(std::int64_t a) const {
    a = reduce(a);
    if (a == 0) throw invariant_error("division by zero in F_p");
    // Extended Euclid.
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return reduce(t);
}

FieldMatrix FieldMatrix::identity(PrimeField field, std::size_t n) {
    FieldMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FieldMatrix FieldMatrix::from_rows(PrimeField field,
                                   const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    for (const auto& row : rows)
        if (row.size() != c) throw invariant_error("ragged row data");
    FieldMatrix m(field, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    return m;
}

bool FieldMatrix::operator==(const FieldMatrix& other) const {
    return field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_ &&
           a_ == other.a_;
}

bool FieldMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](std::int64_t v) { return v == 0; });
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    return t;
}

std::vector<std::int64_t> FieldMatrix::row(std::size_t r) const {
    std::vector<std::int64_t> v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(r, j);
    return v;
}

std::vector<std::int64_t> FieldMatrix::col(std::size_t c) const {
    std::vector<std::int64_t> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, c);
    return v;
}

FieldMatrix FieldMatrix::select_rows(const std::vector<std::size_t>& idx) const {
    FieldMatrix m(field_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.set(i, j, at(idx[i], j));
    return m;
}

FieldMatrix FieldMatrix::select_cols(const std::vector<std::size_t>& idx) const {
    FieldMatrix m(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) m.set(i, j, at(i, idx[j]));
    return m;
}

FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b) {
    check_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw invariant_error("shape mismatch in add");
    FieldMatrix m(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, a.field().add(a.at(i, j), b.at(i, j)));
    return m;
}

FieldMatrix sub(const FieldMatrix& a, const FieldMatrix& b) {
    check_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw invariant_error("shape mismatch in sub");
    FieldMatrix m(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, a.field().sub(a.at(i, j), b.at(i, j)));
    return m;
}

FieldMatrix neg(const FieldMatrix& a) { return scale(a.field().p - 1, a); }

FieldMatrix scale(std::int64_t c, const FieldMatrix& a) {
    FieldMatrix m(a.field(), a.rows(), a.cols());
    std::int64_t cr = a.field().reduce(c);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, a.field().mul(cr, a.at(i, j)));
    return m;
}

FieldMatrix mul(const FieldMatrix& a, const FieldMatrix& b) {
    check_same_field(a, b);
    if (a.cols() != b.rows()) throw invariant_error("shape mismatch in mul");
    FieldMatrix m(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            std::int64_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                m.set(i, j, a.field().add(m.at(i, j), a.field().mul(aik, b.at(k, j))));
        }
    return m;
}

FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b) {
    check_same_field(a, b);
    if (a.rows() != b.rows()) throw invariant_error("shape mismatch in hstack");
    FieldMatrix m(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, a.at(i, j));
        for (std::size_t j = 0; j < b.cols(); ++j) m.set(i, a.cols() + j, b.at(i, j));
    }
    return m;
}

FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b) {
    check_same_field(a, b);
    if (a.cols() != b.cols()) throw invariant_error("shape mismatch in vstack");
    FieldMatrix m(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) m.set(i, j, a.at(i, j));
        for (std::size_t i = 0; i < b.rows(); ++i) m.set(a.rows() + i, j, b.at(i, j));
    }
    return m;
}

FieldMatrix kron(const FieldMatrix& a, const FieldMatrix& b) {
    check_same_field(a, b);
    FieldMatrix m(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            std::int64_t aij = a.at(i, j);
            if (aij == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m.set(i * b.rows() + k, j * b.cols() + l, a.field().mul(aij, b.at(k, l)));
        }
    return m;
}

std::vector<std::int64_t> mat_apply(const FieldMatrix& a, const std::vector<std::int64_t>& v) {
    if (a.cols() != v.size()) throw invariant_error("shape mismatch in apply");
    std::vector<std::int64_t> out(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < a.cols(); ++j)
            acc = a.field().add(acc, a.field().mul(a.at(i, j), a.field().reduce(v[j])));
        out[i] = acc;
    }
    return out;
}

FieldMatrix col_vector(PrimeField field, const std::vector<std::int64_t>& v) {
    FieldMatrix m(field, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
    return m;
}

Rref rref(const FieldMatrix& m) {
    FieldMatrix a = m;
    const PrimeField& f = a.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t sel = a.rows();
        for (std::size_t i = row; i < a.rows(); ++i)
            if (a.at(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel == a.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                std::int64_t t = a.at(row, j);
                a.set(row, j, a.at(sel, j));
                a.set(sel, j, t);
            }
        std::int64_t inv = f.inv(a.at(row, col));
        for (std::size_t j = 0; j < a.cols(); ++j) a.set(row, j, f.mul(inv, a.at(row, j)));
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row) continue;
            std::int64_t c = a.at(i, col);
            if (c == 0) continue;
            for (std::size_t j = 0; j < a.cols(); ++j)
                a.set(i, j, f.sub(a.at(i, j), f.mul(c, a.at(row, j))));
        }
        pivots.push_back(col);
        ++row;
    }
    return Rref{a, pivots};
}

std::size_t rank(const FieldMatrix& m) { return rref(m).pivots.size(); }

FieldMatrix kernel_basis(const FieldMatrix& m) {
    Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    FieldMatrix k(m.field(), m.cols(), free_cols.size());
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
        std::size_t fc = free_cols[fi];
        k.set(fc, fi, 1);
        for (std::size_t pr = 0; pr < r.pivots.size(); ++pr)
            k.set(r.pivots[pr], fi, m.field().neg(r.reduced.at(pr, fc)));
    }
    return k;
}

std::optional<FieldMatrix> solve(const FieldMatrix& m, const FieldMatrix& b) {
    check_same_field(m, b);
    if (m.rows() != b.rows()) throw invariant_error("shape mismatch in solve");
    Rref r = rref(hstack(m, b));
    // Any pivot in the appended block means inconsistency.
    for (std::size_t c : r.pivots)
        if (c >= m.cols()) return std::nullopt;
    FieldMatrix x(m.field(), m.cols(), b.cols());
    for (std::size_t pr = 0; pr < r.pivots.size(); ++pr)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.set(r.pivots[pr], j, r.reduced.at(pr, m.cols() + j));
    return x;
}

FieldMatrix vec_columns(const FieldMatrix& m) {
    FieldMatrix v(m.field(), m.rows() * m.cols(), 1);
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) v.set(j * m.rows() + i, 0, m.at(i, j));
    return v;
}

FieldMatrix unvec_columns(const FieldMatrix& v, std::size_t rows, std::size_t cols) {
    if (v.cols() != 1 || v.rows() != rows * cols) throw invariant_error("bad shape in unvec");
    FieldMatrix m(v.field(), rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) m.set(i, j, v.at(j * rows + i, 0));
    return m;
}

RowSpace RowSpace::from_rows(const FieldMatrix& rows_mat) {
    Rref r = rref(rows_mat);
    FieldMatrix basis(rows_mat.field(), r.pivots.size(), rows_mat.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
        for (std::size_t j = 0; j < rows_mat.cols(); ++j) basis.set(i, j, r.reduced.at(i, j));
    return RowSpace(basis, r.pivots);
}

RowSpace RowSpace::from_cols(const FieldMatrix& cols_mat) {
    return from_rows(cols_mat.transpose());
}

RowSpace RowSpace::zero(PrimeField field, std::size_t ambient) {
    return from_rows(FieldMatrix(field, 0, ambient));
}

RowSpace RowSpace::full(PrimeField field, std::size_t ambient) {
    return from_rows(FieldMatrix::identity(field, ambient));
}

std::vector<std::int64_t> RowSpace::reduce_col(const std::vector<std::int64_t>& v) const {
    if (v.size() != ambient()) throw invariant_error("ambient mismatch in reduce_col");
    const PrimeField& f = basis_.field();
    std::vector<std::int64_t> r(v);
    for (auto& x : r) x = f.reduce(x);
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        std::int64_t c = r[pivots_[i]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < ambient(); ++j) r[j] = f.sub(r[j], f.mul(c, basis_.at(i, j)));
    }
    return r;
}

bool RowSpace::contains_col(const std::vector<std::int64_t>& v) const {
    auto r = reduce_col(v);
    return std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; });
}

bool RowSpace::contains_all_cols(const FieldMatrix& m) const {
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!contains_col(m.col(j))) return false;
    return true;
}

bool RowSpace::operator==(const RowSpace& other) const { return basis_ == other.basis_; }

std::vector<std::int64_t> RowSpace::coords_of(const std::vector<std::int64_t>& v) const {
    if (!contains_col(v)) throw invariant_error("vector not in subspace");
    const PrimeField& f = basis_.field();
    std::vector<std::int64_t> coords(dim());
    for (std::size_t i = 0; i < dim(); ++i) coords[i] = f.reduce(v[pivots_[i]]);
    return coords;
}

std::vector<std::size_t> RowSpace::free_coordinates() const {
    std::vector<bool> is_pivot(ambient(), false);
    for (std::size_t c : pivots_) is_pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < ambient(); ++c)
        if (!is_pivot[c]) free.push_back(c);
    return free;
}

FieldMatrix RowSpace::quotient_projection() const {
    auto free = free_coordinates();
    FieldMatrix proj(basis_.field(), free.size(), ambient());
    // Row i of proj reads off free coordinate i after reduction by the basis.
    for (std::size_t c = 0; c < ambient(); ++c) {
        std::vector<std::int64_t> e(ambient(), 0);
        e[c] = 1;
        auto r = reduce_col(e);
        for (std::size_t i = 0; i < free.size(); ++i) proj.set(i, c, r[free[i]]);
    }
    return proj;
}

FieldMatrix RowSpace::quotient_section() const {
    auto free = free_coordinates();
    FieldMatrix sec(basis_.field(), ambient(), free.size());
    for (std::size_t i = 0; i < free.size(); ++i) sec.set(free[i], i, 1);
    return sec;
}

RowSpace RowSpace::sum(const RowSpace& a, const RowSpace& b) {
    if (a.ambient() != b.ambient()) throw invariant_error("ambient mismatch in sum");
    return from_rows(vstack(a.basis_rows(), b.basis_rows()));
}

}  // namespace stablecat
