#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace rankdiv {

using Vec = std::vector<Code>;

/// Dense row-major matrix over a Field.
class Matrix {
   public:
    Matrix() = default;
    Matrix(Field f, std::size_t rows, std::size_t cols) : f_(std::move(f)), r_(rows), c_(cols), a_(rows * cols, 0) {}
    Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Code> entries)
        : f_(std::move(f)), r_(rows), c_(cols), a_(std::move(entries)) {
        if (a_.size() != r_ * c_) fail(ErrorKind::DimensionMismatch, "entry count does not match shape");
        for (Code x : a_)
            if (x >= f_.order()) fail(ErrorKind::FieldMismatch, "entry outside the field");
    }

    static Matrix identity(const Field& f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix from_rows(const Field& f, const std::vector<Vec>& rows, std::size_t cols) {
        Matrix m(f, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) fail(ErrorKind::DimensionMismatch, "ragged rows");
            std::copy(rows[i].begin(), rows[i].end(), m.a_.begin() + static_cast<std::ptrdiff_t>(i * cols));
        }
        return m;
    }

    const Field& field() const { return f_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Code& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    Code operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    const std::vector<Code>& entries() const { return a_; }
    Vec row(std::size_t i) const { return Vec(a_.begin() + static_cast<std::ptrdiff_t>(i * c_), a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_)); }
    Vec col(std::size_t j) const {
        Vec v(r_);
        for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](Code x) { return x == 0; });
    }

    Matrix transpose() const {
        Matrix t(f_, c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        check_field(o);
        if (c_ != o.r_) fail(ErrorKind::DimensionMismatch, "inner dimensions differ");
        Matrix out(f_, r_, o.c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const Code a = (*this)(i, k);
                if (!a) continue;
                for (std::size_t j = 0; j < o.c_; ++j) {
                    const Code b = o(k, j);
                    if (b) out(i, j) = f_.add(out(i, j), f_.mul(a, b));
                }
            }
        return out;
    }
    Vec operator*(const Vec& v) const {
        if (v.size() != c_) fail(ErrorKind::DimensionMismatch, "vector length differs from column count");
        Vec out(r_, 0);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) out[i] = f_.add(out[i], f_.mul((*this)(i, j), v[j]));
        return out;
    }
    Matrix operator+(const Matrix& o) const { return zip(o, [this](Code a, Code b) { return f_.add(a, b); }); }
    Matrix operator-(const Matrix& o) const { return zip(o, [this](Code a, Code b) { return f_.sub(a, b); }); }
    Matrix scaled(Code s) const {
        Matrix out = *this;
        for (Code& x : out.a_) x = f_.mul(x, s);
        return out;
    }

    /// Block (i0, j0) of size rows x cols.
    Matrix block(std::size_t i0, std::size_t j0, std::size_t rows, std::size_t cols) const {
        Matrix out(f_, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) out(i, j) = (*this)(i0 + i, j0 + j);
        return out;
    }
    void set_block(std::size_t i0, std::size_t j0, const Matrix& b) {
        for (std::size_t i = 0; i < b.r_; ++i)
            for (std::size_t j = 0; j < b.c_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_ && (a.a_.empty() || a.f_ == b.f_);
    }

   private:
    void check_field(const Matrix& o) const {
        if (!(f_ == o.f_)) fail(ErrorKind::FieldMismatch, "matrices over different fields");
    }
    template <class Op>
    Matrix zip(const Matrix& o, Op op) const {
        check_field(o);
        if (r_ != o.r_ || c_ != o.c_) fail(ErrorKind::DimensionMismatch, "shapes differ");
        Matrix out(f_, r_, c_);
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = op(a_[i], o.a_[i]);
        return out;
    }

    Field f_;
    std::size_t r_ = 0, c_ = 0;
    std::vector<Code> a_;
};

/// In-place reduction to reduced row echelon form. Returns pivot columns.
inline std::vector<std::size_t> rref_in_place(Matrix& m) {
    const Field& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
        const Code inv = f.inv(m(r, c));
        if (inv != 1)
            for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            const Code factor = m(i, c);
            if (!factor) continue;
            const Code nf = f.neg(factor);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (m(r, j)) m(i, j) = f.add(m(i, j), f.mul(nf, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline Matrix rref(Matrix m) {
    rref_in_place(m);
    return m;
}

inline std::size_t rank(Matrix m) { return rref_in_place(m).size(); }

/// Rows of the RREF with zero rows dropped.
inline Matrix row_basis(Matrix m) {
    const auto piv = rref_in_place(m);
    return m.block(0, 0, piv.size(), m.cols());
}

inline Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) fail(ErrorKind::NotInvertible, "matrix is not square");
    const std::size_t n = m.rows();
    Matrix aug(m.field(), n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, Matrix::identity(m.field(), n));
    const auto piv = rref_in_place(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) fail(ErrorKind::NotInvertible, "matrix is singular");
    return aug.block(0, n, n, n);
}

/// Canonical F-subspace of F^n, stored as the RREF of any spanning set.
class Subspace {
   public:
    Subspace() = default;
    Subspace(const Field& f, std::size_t ambient) : basis_(f, 0, ambient) {}
    /// Span of the rows of gens.
    explicit Subspace(const Matrix& gens) : basis_(row_basis(gens)) {}
    Subspace(const Field& f, std::size_t ambient, const std::vector<Vec>& gens)
        : basis_(row_basis(Matrix::from_rows(f, gens, ambient))) {}

    static Subspace full(const Field& f, std::size_t n) { return Subspace(Matrix::identity(f, n)); }

    const Field& field() const { return basis_.field(); }
    std::size_t ambient() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    Vec vector(std::size_t i) const { return basis_.row(i); }

    bool contains(const Vec& v) const {
        if (v.size() != ambient()) fail(ErrorKind::AmbientMismatch, "vector length differs from ambient dimension");
        Matrix m(field(), dim() + 1, ambient());
        m.set_block(0, 0, basis_);
        for (std::size_t j = 0; j < v.size(); ++j) m(dim(), j) = v[j];
        return rank(m) == dim();
    }
    bool contains(const Subspace& o) const {
        check(o);
        return sum(o).dim() == dim();
    }

    Subspace sum(const Subspace& o) const {
        check(o);
        Matrix m(field(), dim() + o.dim(), ambient());
        m.set_block(0, 0, basis_);
        m.set_block(dim(), 0, o.basis_);
        return Subspace(m);
    }

    /// Orthogonal complement under the standard dot product.
    Subspace annihilator() const { return kernel_of(basis_); }

    Subspace intersect(const Subspace& o) const {
        check(o);
        return annihilator().sum(o.annihilator()).annihilator();
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient() == b.ambient() && a.basis_ == b.basis_;
    }

    /// Right kernel {v : M v = 0}.
    static Subspace kernel_of(const Matrix& m) {
        Matrix r = m;
        const auto piv = rref_in_place(r);
        const std::size_t n = m.cols();
        std::vector<bool> is_piv(n, false);
        for (auto c : piv) is_piv[c] = true;
        std::vector<Vec> gens;
        const Field& f = m.field();
        for (std::size_t free = 0; free < n; ++free) {
            if (is_piv[free]) continue;
            Vec v(n, 0);
            v[free] = 1;
            for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(r(i, free));
            gens.push_back(std::move(v));
        }
        return Subspace(f, n, gens);
    }

   private:
    void check(const Subspace& o) const {
        if (ambient() != o.ambient()) fail(ErrorKind::AmbientMismatch, "subspaces live in different ambient spaces");
        if (!(field() == o.field())) fail(ErrorKind::FieldMismatch, "subspaces over different fields");
    }
    Matrix basis_;
};

inline Subspace kernel(const Matrix& m) { return Subspace::kernel_of(m); }

}  // namespace rankdiv
