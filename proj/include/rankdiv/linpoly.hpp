#pragma once

/**
 * Linearized polynomials sum_i f_i x^{q^i} over F_{q^m}, reduced modulo x^{q^m} - x, and their multivariate
 * versions sum_j sum_i c_{j,i} x_j^{q^i}. Composition works on the coefficient grid; to_matrix gives the
 * F_q-matrix of the map with respect to the extension's basis.
 */

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "tower.hpp"

namespace rankdiv {

using ExtPtr = std::shared_ptr<const Extension>;

inline ExtPtr share(Extension e) { return std::make_shared<const Extension>(std::move(e)); }

inline bool same_extension(const Extension& a, const Extension& b) {
    return &a == &b || (a.big() == b.big() && a.base() == b.base() &&
                        a.embedding().image_of_root() == b.embedding().image_of_root());
}

class LinPoly {
   public:
    LinPoly() = default;
    explicit LinPoly(ExtPtr ext) : ext_(std::move(ext)), c_(ext_->m(), 0) {}
    LinPoly(ExtPtr ext, std::vector<Code> coeffs) : ext_(std::move(ext)), c_(std::move(coeffs)) {
        if (c_.size() != ext_->m()) fail(ErrorKind::DimensionMismatch, "a linearized polynomial has exactly m coefficients");
        for (Code c : c_)
            if (c >= ext_->big().order()) fail(ErrorKind::FieldMismatch, "coefficient outside F_{q^m}");
    }
    static LinPoly monomial(ExtPtr ext, std::uint32_t i, Code coeff = 1) {
        LinPoly f(std::move(ext));
        f.c_[i % f.ext_->m()] = coeff;
        return f;
    }
    static LinPoly identity(ExtPtr ext) { return monomial(std::move(ext), 0, 1); }

    const ExtPtr& ext_ptr() const { return ext_; }
    const Extension& ext() const { return *ext_; }
    const Field& field() const { return ext_->big(); }
    std::uint32_t m() const { return ext_->m(); }
    const std::vector<Code>& coeffs() const { return c_; }
    Code operator[](std::size_t i) const { return c_[i]; }
    bool is_zero() const {
        for (Code c : c_)
            if (c) return false;
        return true;
    }
    /// Largest i with f_i != 0, or -1 for the zero polynomial.
    int q_degree() const {
        for (std::size_t i = c_.size(); i-- > 0;)
            if (c_[i]) return static_cast<int>(i);
        return -1;
    }

    Code operator()(Code a) const {
        const Field& F = field();
        Code s = 0;
        for (std::uint32_t i = 0; i < c_.size(); ++i)
            if (c_[i]) s = F.add(s, F.mul(c_[i], ext_->frob(a, i)));
        return s;
    }
    FieldElement operator()(const FieldElement& a) const {
        if (!(a.field() == field())) fail(ErrorKind::FieldMismatch, "argument is not in F_{q^m}");
        return field().element((*this)(a.code()));
    }

    LinPoly operator+(const LinPoly& o) const {
        check(o);
        LinPoly r = *this;
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field().add(c_[i], o.c_[i]);
        return r;
    }
    LinPoly operator-(const LinPoly& o) const {
        check(o);
        LinPoly r = *this;
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field().sub(c_[i], o.c_[i]);
        return r;
    }
    /// alpha * f(x)
    LinPoly scaled(Code alpha) const {
        LinPoly r = *this;
        for (Code& c : r.c_) c = field().mul(c, alpha);
        return r;
    }

    friend bool operator==(const LinPoly& a, const LinPoly& b) {
        return a.c_ == b.c_ && same_extension(*a.ext_, *b.ext_);
    }

    void check(const LinPoly& o) const {
        if (!same_extension(*ext_, *o.ext_)) fail(ErrorKind::FieldMismatch, "polynomials over different extensions");
    }

   private:
    ExtPtr ext_;
    std::vector<Code> c_;
};

/// (f_i x^{q^i}) o (g_j x^{q^j}) = f_i g_j^{q^i} x^{q^{i+j}}
inline LinPoly compose(const LinPoly& f, const LinPoly& g) {
    f.check(g);
    const Field& F = f.field();
    const std::uint32_t m = f.m();
    std::vector<Code> h(m, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
        if (!f[i]) continue;
        for (std::uint32_t j = 0; j < m; ++j)
            if (g[j]) h[(i + j) % m] = F.add(h[(i + j) % m], F.mul(f[i], f.ext().frob(g[j], i)));
    }
    return LinPoly(f.ext_ptr(), std::move(h));
}

/// Column j holds the coordinates of f(b_j) in the basis of `basis`.
inline Matrix to_matrix(const LinPoly& f, const Extension& basis) {
    if (!same_extension(f.ext(), basis)) fail(ErrorKind::FieldMismatch, "basis belongs to another extension");
    const std::uint32_t m = f.m();
    Matrix out(basis.base(), m, m);
    std::vector<Code> col(m);
    for (std::uint32_t j = 0; j < m; ++j) {
        basis.coords_into(f(basis.basis()[j]), col.data());
        for (std::uint32_t i = 0; i < m; ++i) out(i, j) = col[i];
    }
    return out;
}
inline Matrix to_matrix(const LinPoly& f) { return to_matrix(f, f.ext()); }

/// The unique reduced polynomial whose matrix in the basis of `basis` is M.
inline LinPoly from_matrix(const Matrix& M, const ExtPtr& ext) {
    const std::uint32_t m = ext->m();
    if (M.rows() != m || M.cols() != m) fail(ErrorKind::DimensionMismatch, "matrix must be m x m");
    if (!(M.field() == ext->base())) fail(ErrorKind::FieldMismatch, "matrix is not over F_q");
    Vec images(m);
    for (std::uint32_t j = 0; j < m; ++j) images[j] = ext->combine(M.col(j));
    return LinPoly(ext, ext->moore_inverse() * images);
}

inline std::size_t poly_rank(const LinPoly& f) { return rank(to_matrix(f)); }

/// Kernel as an F_q-subspace of F_q^m, in coordinates of the extension's basis.
inline Subspace poly_kernel(const LinPoly& f) { return kernel(to_matrix(f)); }

inline LinPoly invert(const LinPoly& f) {
    Matrix inv;
    try {
        inv = inverse(to_matrix(f));
    } catch (const Error&) {
        fail(ErrorKind::NotInvertible, "polynomial has a nonzero kernel");
    }
    return from_matrix(inv, f.ext_ptr());
}

inline void check_divisor(std::uint32_t e, std::uint32_t m) {
    if (e == 0 || m % e) fail(ErrorKind::BadDivisor, std::to_string(e) + " does not divide " + std::to_string(m));
}

/// Support test: every nonzero coefficient sits at an exponent q^i with e | i.
inline bool is_subfield_linear(const LinPoly& f, std::uint32_t e) {
    check_divisor(e, f.m());
    for (std::uint32_t i = 0; i < f.m(); ++i)
        if (f[i] && i % e) return false;
    return true;
}

/// Pointwise test: f(lambda a) = lambda f(a) for a generator lambda of F_{q^e} and every basis element a.
inline bool is_subfield_linear_pointwise(const LinPoly& f, std::uint32_t e) {
    check_divisor(e, f.m());
    const Field& F = f.field();
    const Code lambda = f.ext().subfield_primitive(e);
    for (Code a : f.ext().basis())
        if (f(F.mul(lambda, a)) != F.mul(lambda, f(a))) return false;
    return true;
}

/// sum_j parts[j](x_j)
class MultiLinPoly {
   public:
    MultiLinPoly() = default;
    MultiLinPoly(ExtPtr ext, std::size_t nvars) : ext_(std::move(ext)) {
        for (std::size_t j = 0; j < nvars; ++j) parts_.emplace_back(ext_);
    }
    explicit MultiLinPoly(std::vector<LinPoly> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) fail(ErrorKind::ArityMismatch, "at least one variable is required");
        ext_ = parts_[0].ext_ptr();
        for (auto& p : parts_) parts_[0].check(p);
    }
    static MultiLinPoly from(const LinPoly& f) { return MultiLinPoly(std::vector<LinPoly>{f}); }
    /// c * x_j^{q^i}
    static MultiLinPoly monomial(ExtPtr ext, std::size_t nvars, std::size_t j, std::uint32_t i, Code c = 1) {
        MultiLinPoly f(std::move(ext), nvars);
        f.parts_[j] = LinPoly::monomial(f.ext_, i, c);
        return f;
    }
    static MultiLinPoly variable(ExtPtr ext, std::size_t nvars, std::size_t j) { return monomial(std::move(ext), nvars, j, 0, 1); }

    const ExtPtr& ext_ptr() const { return ext_; }
    const Extension& ext() const { return *ext_; }
    const Field& field() const { return ext_->big(); }
    std::uint32_t m() const { return ext_->m(); }
    std::size_t nvars() const { return parts_.size(); }
    const LinPoly& part(std::size_t j) const { return parts_[j]; }
    LinPoly& part(std::size_t j) { return parts_[j]; }
    const std::vector<LinPoly>& parts() const { return parts_; }
    Code coeff(std::size_t j, std::size_t i) const { return parts_[j][i]; }
    bool is_zero() const {
        for (auto& p : parts_)
            if (!p.is_zero()) return false;
        return true;
    }

    Code operator()(const Vec& a) const {
        if (a.size() != nvars()) fail(ErrorKind::ArityMismatch, "argument has the wrong number of coordinates");
        Code s = 0;
        for (std::size_t j = 0; j < parts_.size(); ++j) s = field().add(s, parts_[j](a[j]));
        return s;
    }

    MultiLinPoly operator+(const MultiLinPoly& o) const { return zip(o, [](const LinPoly& a, const LinPoly& b) { return a + b; }); }
    MultiLinPoly operator-(const MultiLinPoly& o) const { return zip(o, [](const LinPoly& a, const LinPoly& b) { return a - b; }); }
    MultiLinPoly scaled(Code alpha) const {
        MultiLinPoly r = *this;
        for (auto& p : r.parts_) p = p.scaled(alpha);
        return r;
    }

    friend bool operator==(const MultiLinPoly& a, const MultiLinPoly& b) { return a.parts_ == b.parts_; }

   private:
    template <class Op>
    MultiLinPoly zip(const MultiLinPoly& o, Op op) const {
        if (o.nvars() != nvars()) fail(ErrorKind::ArityMismatch, "different numbers of variables");
        MultiLinPoly r = *this;
        for (std::size_t j = 0; j < parts_.size(); ++j) r.parts_[j] = op(parts_[j], o.parts_[j]);
        return r;
    }
    ExtPtr ext_;
    std::vector<LinPoly> parts_;
};

inline Code meval(const MultiLinPoly& f, const Vec& a) { return f(a); }

/// m x (m l) matrix; column t*m + i is the image of b_i placed in slot t.
inline Matrix mto_matrix(const MultiLinPoly& f) {
    const std::uint32_t m = f.m();
    Matrix out(f.ext().base(), m, m * f.nvars());
    for (std::size_t t = 0; t < f.nvars(); ++t) out.set_block(0, t * m, to_matrix(f.part(t)));
    return out;
}

/// Same, for an explicit F_q-basis of F_{q^m}^l given as l-tuples.
inline Matrix mto_matrix(const MultiLinPoly& f, const std::vector<Vec>& basis) {
    const std::uint32_t m = f.m();
    const std::size_t n = m * f.nvars();
    if (basis.size() != n) fail(ErrorKind::NotABasis, "basis must have m*l elements");
    std::vector<Vec> expanded;
    for (auto& b : basis) expanded.push_back(expand(b, f.ext()));
    if (rank(Matrix::from_rows(f.ext().base(), expanded, n)) != n) fail(ErrorKind::NotABasis, "tuples are dependent over F_q");
    Matrix out(f.ext().base(), m, n);
    std::vector<Code> col(m);
    for (std::size_t j = 0; j < n; ++j) {
        f.ext().coords_into(f(basis[j]), col.data());
        for (std::uint32_t i = 0; i < m; ++i) out(i, j) = col[i];
    }
    return out;
}

/// Kernel in F_q^{ml}, slot-major coordinates.
inline Subspace mkernel(const MultiLinPoly& f) { return kernel(mto_matrix(f)); }

/// f(phi_1(x), ..., phi_l(x))
inline MultiLinPoly mcompose(const MultiLinPoly& f, const std::vector<MultiLinPoly>& phi) {
    if (phi.size() != f.nvars()) fail(ErrorKind::ArityMismatch, "need one substitution per variable");
    const std::size_t nv = phi[0].nvars();
    for (auto& p : phi)
        if (p.nvars() != nv) fail(ErrorKind::ArityMismatch, "substitutions use different numbers of variables");
    MultiLinPoly out(f.ext_ptr(), nv);
    for (std::size_t j = 0; j < f.nvars(); ++j)
        for (std::size_t t = 0; t < nv; ++t) out.part(t) = out.part(t) + compose(f.part(j), phi[j].part(t));
    return out;
}

/// Joint F_q-matrix of the tuple as a map F_{q^m}^l -> F_{q^m}^l, block (j, t) = matrix of phi_j's x_t part.
inline Matrix tuple_matrix(const std::vector<MultiLinPoly>& phi) {
    const std::size_t l = phi.size();
    if (l == 0) fail(ErrorKind::ArityMismatch, "empty tuple");
    const std::uint32_t m = phi[0].m();
    Matrix big(phi[0].ext().base(), m * l, m * l);
    for (std::size_t j = 0; j < l; ++j) {
        if (phi[j].nvars() != l) fail(ErrorKind::ArityMismatch, "tuple must have l components in l variables");
        big.set_block(j * m, 0, mto_matrix(phi[j]));
    }
    return big;
}

inline std::vector<MultiLinPoly> mtuple_invert(const std::vector<MultiLinPoly>& phi) {
    const std::size_t l = phi.size();
    const Matrix big = tuple_matrix(phi);
    Matrix inv;
    try {
        inv = inverse(big);
    } catch (const Error&) {
        fail(ErrorKind::NotInvertible, "tuple has a nonzero common kernel");
    }
    const std::uint32_t m = phi[0].m();
    std::vector<MultiLinPoly> out;
    for (std::size_t j = 0; j < l; ++j) {
        std::vector<LinPoly> parts;
        for (std::size_t t = 0; t < l; ++t) parts.push_back(from_matrix(inv.block(j * m, t * m, m, m), phi[0].ext_ptr()));
        out.emplace_back(std::move(parts));
    }
    return out;
}

inline bool is_subfield_linear(const MultiLinPoly& f, std::uint32_t e) {
    check_divisor(e, f.m());
    for (auto& p : f.parts())
        if (!is_subfield_linear(p, e)) return false;
    return true;
}

inline bool is_subfield_linear_pointwise(const MultiLinPoly& f, std::uint32_t e) {
    check_divisor(e, f.m());
    for (auto& p : f.parts())
        if (!is_subfield_linear_pointwise(p, e)) return false;
    return true;
}

}  // namespace rankdiv
