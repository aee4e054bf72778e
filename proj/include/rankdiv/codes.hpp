#pragma once

/**
 * The three models of a linear rank metric code and the maps between them.
 *
 *   MatrixCode  F_q-subspace of F_q^{m x n}, stored as the RREF of the row-major vectorised basis.
 *   VectorCode  F_{q^m}-subspace of F_{q^m}^n given by a full-rank generator matrix.
 *   PolyCode    F_{q^m}-span of linearized polynomials in l variables (n = l m).
 *
 * gamma expands a vector column by column in the extension's basis; ev_basis evaluates polynomials on an
 * F_q-basis of F_{q^m}^l. Converting between views keeps the same spectrum cache.
 */

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "linpoly.hpp"
#include "matrix.hpp"
#include "tower.hpp"

namespace rankdiv {

inline constexpr std::uint64_t kDefaultMaxEnum = std::uint64_t{1} << 24;

struct WeightSpectrum {
    std::map<std::size_t, std::uint64_t> counts;

    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto& [w, c] : counts) s += c;
        return s;
    }
    std::vector<std::size_t> nonzero_weights() const {
        std::vector<std::size_t> out;
        for (auto& [w, c] : counts)
            if (w && c) out.push_back(w);
        return out;
    }
    friend bool operator==(const WeightSpectrum&, const WeightSpectrum&) = default;
};

/// gcd of the nonzero weights.
inline std::size_t divisibility_index(const WeightSpectrum& s) {
    std::size_t g = 0;
    for (std::size_t w : s.nonzero_weights()) g = std::gcd(g, w);
    if (!g) fail(ErrorKind::ZeroCode, "the zero code has no nonzero weights");
    return g;
}

struct SpectrumCache {
    std::mutex mu;
    std::optional<WeightSpectrum> value;
};

namespace detail {

inline std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t cap, const std::string& what) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (r > cap / base) fail(ErrorKind::TooLarge, what + " has more than " + std::to_string(cap) + " codewords; raise --max-enum");
        r *= base;
    }
    if (r > cap) fail(ErrorKind::TooLarge, what + " has more than " + std::to_string(cap) + " codewords; raise --max-enum");
    return r;
}

/// Visits every F_p-combination of the given vectors once (p = characteristic of f).
template <class Visit>
void for_each_fp_combination(const Field& f, const std::vector<Vec>& gens, std::size_t len, Visit&& visit) {
    const std::uint32_t p = f.characteristic();
    Vec cur(len, 0);
    std::vector<std::uint32_t> digit(gens.size(), 0);
    visit(cur);
    for (;;) {
        std::size_t d = 0;
        while (d < gens.size()) {
            // adding gens[d] once more: from p-1 this wraps to 0 because p * g = 0
            const Vec& g = gens[d];
            if (p == 2)
                for (std::size_t i = 0; i < len; ++i) cur[i] ^= g[i];
            else
                for (std::size_t i = 0; i < len; ++i) cur[i] = f.add(cur[i], g[i]);
            if (++digit[d] < p) break;
            digit[d] = 0;
            ++d;
        }
        if (d == gens.size()) return;
        visit(cur);
    }
}

/// Rank of a set of F_2 bit-vectors.
inline std::size_t bit_rank(std::uint64_t* rows, std::size_t count) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < count && r < 64; ++i) {
        std::uint64_t v = rows[i];
        if (!v) continue;
        const std::uint64_t low = v & (~v + 1);
        for (std::size_t j = i + 1; j < count; ++j)
            if (rows[j] & low) rows[j] ^= v;
        ++r;
    }
    return r;
}

/// Rank over f of a rows x cols block stored row-major in buf (destroyed).
inline std::size_t small_rank(const Field& f, Code* buf, std::size_t rows, std::size_t cols) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && buf[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(buf[piv * cols + j], buf[r * cols + j]);
        const Code inv = f.inv(buf[r * cols + c]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Code factor = buf[i * cols + c];
            if (!factor) continue;
            const Code nf = f.neg(f.mul(factor, inv));
            for (std::size_t j = c; j < cols; ++j)
                if (buf[r * cols + j]) buf[i * cols + j] = f.add(buf[i * cols + j], f.mul(nf, buf[r * cols + j]));
        }
        ++r;
    }
    return r;
}

}  // namespace detail

/// m x n matrix whose column i is the coordinate vector of v_i.
inline Matrix gamma(const Vec& v, const Extension& ext) {
    Matrix out(ext.base(), ext.m(), v.size());
    std::vector<Code> col(ext.m());
    for (std::size_t i = 0; i < v.size(); ++i) {
        ext.coords_into(v[i], col.data());
        for (std::uint32_t j = 0; j < ext.m(); ++j) out(j, i) = col[j];
    }
    return out;
}

inline Vec gamma_inv(const Matrix& M, const Extension& ext) {
    if (M.rows() != ext.m()) fail(ErrorKind::DimensionMismatch, "matrix must have m rows");
    Vec v(M.cols());
    for (std::size_t i = 0; i < M.cols(); ++i) v[i] = ext.combine(M.col(i));
    return v;
}

/// Rank weight of v over the base field of ext.
inline std::size_t rank_weight(const Vec& v, const Extension& ext) {
    const Field& B = ext.big();
    if (ext.base().degree() == 1 && B.characteristic() == 2) {
        // rank of the raw codes equals rank of the coordinates: the change of basis is invertible
        std::uint64_t rows[64];
        if (v.size() <= 64) {
            std::copy(v.begin(), v.end(), rows);
            return detail::bit_rank(rows, v.size());
        }
        std::vector<std::uint64_t> all(v.begin(), v.end());
        return detail::bit_rank(all.data(), all.size());
    }
    std::vector<Code> buf(v.size() * ext.m());
    for (std::size_t i = 0; i < v.size(); ++i) ext.coords_into(v[i], buf.data() + i * ext.m());
    return detail::small_rank(ext.base(), buf.data(), v.size(), ext.m());
}

class MatrixCode {
   public:
    MatrixCode() = default;
    MatrixCode(Field f, std::size_t m, std::size_t n)
        : f_(std::move(f)), m_(m), n_(n), span_(f_, m * n), cache_(std::make_shared<SpectrumCache>()) {}
    MatrixCode(Field f, std::size_t m, std::size_t n, const std::vector<Matrix>& gens) : MatrixCode(std::move(f), m, n) {
        std::vector<Vec> rows;
        for (auto& g : gens) {
            if (g.rows() != m || g.cols() != n) fail(ErrorKind::DimensionMismatch, "generator has the wrong shape");
            if (!(g.field() == f_)) fail(ErrorKind::FieldMismatch, "generator over another field");
            rows.push_back(g.entries());
        }
        span_ = Subspace(f_, m * n, rows);
    }
    MatrixCode(Field f, std::size_t m, std::size_t n, Subspace span) : MatrixCode(std::move(f), m, n) {
        if (span.ambient() != m * n) fail(ErrorKind::AmbientMismatch, "span does not live in F_q^{mn}");
        span_ = std::move(span);
    }

    const Field& field() const { return f_; }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::size_t dim() const { return span_.dim(); }
    const Subspace& span() const { return span_; }
    Matrix basis_matrix(std::size_t i) const { return Matrix(f_, m_, n_, span_.vector(i)); }
    std::vector<Matrix> basis() const {
        std::vector<Matrix> out;
        for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_matrix(i));
        return out;
    }
    bool contains(const Matrix& a) const { return span_.contains(a.entries()); }

    const std::shared_ptr<SpectrumCache>& cache() const { return cache_; }
    MatrixCode with_cache(std::shared_ptr<SpectrumCache> c) const {
        MatrixCode r = *this;
        r.cache_ = std::move(c);
        return r;
    }

    WeightSpectrum spectrum(std::uint64_t cap = kDefaultMaxEnum) const {
        std::lock_guard lock(cache_->mu);
        if (cache_->value) return *cache_->value;
        std::uint64_t total_exp = dim() * f_.degree();
        detail::checked_power(f_.characteristic(), total_exp, cap, "code");
        std::vector<Vec> gens;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::uint32_t d = 0; d < f_.degree(); ++d) {
                Vec v = span_.vector(i);
                for (Code& c : v) c = f_.mul(c, f_.p_power(d));
                gens.push_back(std::move(v));
            }
        WeightSpectrum s;
        if (f_.order() == 2 && n_ <= 64) {
            std::vector<std::uint64_t> rows(m_);
            detail::for_each_fp_combination(f_, gens, m_ * n_, [&](const Vec& v) {
                for (std::size_t i = 0; i < m_; ++i) {
                    std::uint64_t r = 0;
                    for (std::size_t j = 0; j < n_; ++j) r |= std::uint64_t{v[i * n_ + j]} << j;
                    rows[i] = r;
                }
                ++s.counts[detail::bit_rank(rows.data(), m_)];
            });
        } else {
            std::vector<Code> buf(m_ * n_);
            detail::for_each_fp_combination(f_, gens, m_ * n_, [&](const Vec& v) {
                std::copy(v.begin(), v.end(), buf.begin());
                ++s.counts[detail::small_rank(f_, buf.data(), m_, n_)];
            });
        }
        cache_->value = s;
        return s;
    }

    friend bool operator==(const MatrixCode& a, const MatrixCode& b) {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.f_ == b.f_ && a.span_ == b.span_;
    }

   private:
    Field f_;
    std::size_t m_ = 0, n_ = 0;
    Subspace span_;
    std::shared_ptr<SpectrumCache> cache_;
};

class VectorCode {
   public:
    VectorCode() = default;
    /// Dependent rows of G are dropped, keeping the first independent ones.
    VectorCode(ExtPtr ext, const Matrix& G) : ext_(std::move(ext)), cache_(std::make_shared<SpectrumCache>()) {
        if (!(G.field() == ext_->big())) fail(ErrorKind::FieldMismatch, "generator matrix must be over F_{q^m}");
        n_ = G.cols();
        std::vector<Vec> kept;
        std::size_t r = 0;
        for (std::size_t i = 0; i < G.rows(); ++i) {
            kept.push_back(G.row(i));
            const std::size_t nr = rank(Matrix::from_rows(G.field(), kept, n_));
            if (nr == r) kept.pop_back();
            else r = nr;
        }
        G_ = Matrix::from_rows(G.field(), kept, n_);
    }

    const ExtPtr& ext_ptr() const { return ext_; }
    const Extension& ext() const { return *ext_; }
    std::size_t length() const { return n_; }
    std::size_t dim() const { return G_.rows(); }
    const Matrix& generator() const { return G_; }
    const std::shared_ptr<SpectrumCache>& cache() const { return cache_; }
    VectorCode with_cache(std::shared_ptr<SpectrumCache> c) const {
        VectorCode r = *this;
        r.cache_ = std::move(c);
        return r;
    }

    /// x G
    Vec encode(const Vec& x) const {
        if (x.size() != dim()) fail(ErrorKind::DimensionMismatch, "message has the wrong length");
        Vec out(n_, 0);
        const Field& F = ext_->big();
        for (std::size_t i = 0; i < dim(); ++i)
            if (x[i])
                for (std::size_t j = 0; j < n_; ++j) out[j] = F.add(out[j], F.mul(x[i], G_(i, j)));
        return out;
    }
    std::size_t weight(const Vec& v) const { return rank_weight(v, *ext_); }

    /// Visits every codeword.
    template <class Visit>
    void for_each_codeword(std::uint64_t cap, Visit&& visit) const {
        const Field& F = ext_->big();
        detail::checked_power(F.characteristic(), dim() * F.degree(), cap, "code");
        std::vector<Vec> gens;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::uint32_t d = 0; d < F.degree(); ++d) {
                Vec v = G_.row(i);
                for (Code& c : v) c = F.mul(c, F.p_power(d));
                gens.push_back(std::move(v));
            }
        detail::for_each_fp_combination(F, gens, n_, visit);
    }

    WeightSpectrum spectrum(std::uint64_t cap = kDefaultMaxEnum) const {
        std::lock_guard lock(cache_->mu);
        if (cache_->value) return *cache_->value;
        WeightSpectrum s;
        for_each_codeword(cap, [&](const Vec& v) { ++s.counts[weight(v)]; });
        cache_->value = s;
        return s;
    }

    /// Canonical comparison of the spanned subspaces.
    friend bool operator==(const VectorCode& a, const VectorCode& b) {
        return same_extension(*a.ext_, *b.ext_) && a.n_ == b.n_ && Subspace(a.G_) == Subspace(b.G_);
    }

   private:
    ExtPtr ext_;
    std::size_t n_ = 0;
    Matrix G_;
    std::shared_ptr<SpectrumCache> cache_;
};

class PolyCode {
   public:
    PolyCode() = default;
    /// Generators that are F_{q^m}-dependent on earlier ones are dropped.
    PolyCode(ExtPtr ext, std::size_t nvars, const std::vector<MultiLinPoly>& gens)
        : ext_(std::move(ext)), nvars_(nvars), cache_(std::make_shared<SpectrumCache>()) {
        std::vector<Vec> rows;
        std::size_t r = 0;
        for (auto& g : gens) {
            if (g.nvars() != nvars_) fail(ErrorKind::ArityMismatch, "generator has the wrong number of variables");
            if (!same_extension(g.ext(), *ext_)) fail(ErrorKind::FieldMismatch, "generator over another extension");
            rows.push_back(coeff_row(g));
            const std::size_t nr = rank(Matrix::from_rows(ext_->big(), rows, nvars_ * ext_->m()));
            if (nr == r) rows.pop_back();
            else {
                r = nr;
                gens_.push_back(g);
            }
        }
    }
    PolyCode(ExtPtr ext, const std::vector<LinPoly>& gens) : PolyCode(ext, 1, [&] {
        std::vector<MultiLinPoly> v;
        for (auto& g : gens) v.push_back(MultiLinPoly::from(g));
        return v;
    }()) {}

    const ExtPtr& ext_ptr() const { return ext_; }
    const Extension& ext() const { return *ext_; }
    std::size_t nvars() const { return nvars_; }
    std::size_t dim() const { return gens_.size(); }
    const std::vector<MultiLinPoly>& gens() const { return gens_; }
    const MultiLinPoly& gen(std::size_t i) const { return gens_[i]; }
    std::size_t length() const { return nvars_ * ext_->m(); }
    const std::shared_ptr<SpectrumCache>& cache() const { return cache_; }
    PolyCode with_cache(std::shared_ptr<SpectrumCache> c) const {
        PolyCode r = *this;
        r.cache_ = std::move(c);
        return r;
    }

    bool contains(const MultiLinPoly& f) const {
        std::vector<Vec> rows;
        for (auto& g : gens_) rows.push_back(coeff_row(g));
        Subspace s(ext_->big(), length(), rows);
        return s.contains(coeff_row(f));
    }

    static Vec coeff_row(const MultiLinPoly& g) {
        Vec v;
        for (auto& p : g.parts()) v.insert(v.end(), p.coeffs().begin(), p.coeffs().end());
        return v;
    }

    WeightSpectrum spectrum(std::uint64_t cap = kDefaultMaxEnum) const;

    friend bool operator==(const PolyCode& a, const PolyCode& b) {
        if (!same_extension(*a.ext_, *b.ext_) || a.nvars_ != b.nvars_) return false;
        std::vector<Vec> ra, rb;
        for (auto& g : a.gens_) ra.push_back(coeff_row(g));
        for (auto& g : b.gens_) rb.push_back(coeff_row(g));
        return Subspace(a.ext_->big(), a.length(), ra) == Subspace(b.ext_->big(), b.length(), rb);
    }

   private:
    ExtPtr ext_;
    std::size_t nvars_ = 1;
    std::vector<MultiLinPoly> gens_;
    std::shared_ptr<SpectrumCache> cache_;
};

/// Slot-major basis of F_{q^m}^l: entry t*m + i is b_i placed in slot t.
inline std::vector<Vec> default_tuple_basis(const Extension& ext, std::size_t nvars) {
    std::vector<Vec> out;
    for (std::size_t t = 0; t < nvars; ++t)
        for (Code b : ext.basis()) {
            Vec v(nvars, 0);
            v[t] = b;
            out.push_back(std::move(v));
        }
    return out;
}

/// G[i][j] = f_i(a_j).
inline VectorCode ev_basis(const PolyCode& C, const std::vector<Vec>& basis) {
    const std::size_t n = C.length();
    if (basis.size() != n) fail(ErrorKind::NotABasis, "basis must have m*l elements");
    std::vector<Vec> expanded;
    for (auto& b : basis) {
        if (b.size() != C.nvars()) fail(ErrorKind::NotABasis, "basis tuples have the wrong length");
        expanded.push_back(expand(b, C.ext()));
    }
    if (rank(Matrix::from_rows(C.ext().base(), expanded, n)) != n) fail(ErrorKind::NotABasis, "tuples are dependent over F_q");
    Matrix G(C.ext().big(), C.dim(), n);
    for (std::size_t i = 0; i < C.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) G(i, j) = C.gen(i)(basis[j]);
    return VectorCode(C.ext_ptr(), G).with_cache(C.cache());
}

inline VectorCode ev_basis(const PolyCode& C) { return ev_basis(C, default_tuple_basis(C.ext(), C.nvars())); }

/// Inverse of ev_basis for the default basis; needs n = l m.
inline PolyCode poly_view(const VectorCode& C) {
    const std::uint32_t m = C.ext().m();
    if (C.length() % m) fail(ErrorKind::DimensionMismatch, "length is not a multiple of m");
    const std::size_t l = C.length() / m;
    std::vector<MultiLinPoly> gens;
    for (std::size_t i = 0; i < C.dim(); ++i) {
        std::vector<LinPoly> parts;
        for (std::size_t t = 0; t < l; ++t) {
            Vec images(m);
            for (std::uint32_t j = 0; j < m; ++j) images[j] = C.generator()(i, t * m + j);
            parts.emplace_back(C.ext_ptr(), C.ext().moore_inverse() * images);
        }
        gens.emplace_back(std::move(parts));
    }
    return PolyCode(C.ext_ptr(), l, gens).with_cache(C.cache());
}

/// Gamma applied to the F_q-basis {b_t g_i}.
inline MatrixCode matrix_view(const VectorCode& C) {
    const Extension& ext = C.ext();
    std::vector<Matrix> gens;
    for (std::size_t i = 0; i < C.dim(); ++i)
        for (Code b : ext.basis()) {
            Vec v = C.generator().row(i);
            for (Code& c : v) c = ext.big().mul(c, b);
            gens.push_back(gamma(v, ext));
        }
    return MatrixCode(ext.base(), ext.m(), C.length(), gens).with_cache(C.cache());
}

inline MatrixCode matrix_view(const PolyCode& C) {
    std::vector<Matrix> gens;
    for (auto& g : C.gens())
        for (Code b : C.ext().basis()) gens.push_back(mto_matrix(g.scaled(b)));
    return MatrixCode(C.ext().base(), C.ext().m(), C.length(), gens).with_cache(C.cache());
}

inline WeightSpectrum PolyCode::spectrum(std::uint64_t cap) const { return ev_basis(*this).spectrum(cap); }

inline WeightSpectrum weight_spectrum(const MatrixCode& C, std::uint64_t cap = kDefaultMaxEnum) { return C.spectrum(cap); }
inline WeightSpectrum weight_spectrum(const VectorCode& C, std::uint64_t cap = kDefaultMaxEnum) { return C.spectrum(cap); }
inline WeightSpectrum weight_spectrum(const PolyCode& C, std::uint64_t cap = kDefaultMaxEnum) { return C.spectrum(cap); }

template <class CodeT>
std::size_t divisibility_index(const CodeT& C, std::uint64_t cap = kDefaultMaxEnum) {
    return divisibility_index(C.spectrum(cap));
}

/// Block (i, j) is the e x e matrix of y -> a_ij y from col_basis coordinates to row_basis coordinates.
inline Matrix em_matrix(const Matrix& A, const Extension& row_basis, const Extension& col_basis) {
    const std::uint32_t e = row_basis.m();
    Matrix out(row_basis.base(), A.rows() * e, A.cols() * e);
    std::vector<Code> col(e);
    const Field& F = row_basis.big();
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
            if (!A(i, j)) continue;
            for (std::uint32_t s = 0; s < e; ++s) {
                row_basis.coords_into(F.mul(A(i, j), col_basis.basis()[s]), col.data());
                for (std::uint32_t r = 0; r < e; ++r) out(i * e + r, j * e + s) = col[r];
            }
        }
    return out;
}

/// Field reduction of a code over F_{q^e} = big of the extensions to a code over F_q.
inline MatrixCode em_embed(const MatrixCode& C, const Extension& row_basis, const Extension& col_basis) {
    if (!(C.field() == row_basis.big()) || !same_extension(row_basis, col_basis))
        fail(ErrorKind::FieldMismatch, "code is not over the extension field");
    const std::uint32_t e = row_basis.m();
    std::vector<Matrix> gens;
    for (const Matrix& A : C.basis())
        for (Code b : row_basis.basis()) gens.push_back(em_matrix(A.scaled(b), row_basis, col_basis));
    return MatrixCode(row_basis.base(), C.rows() * e, C.cols() * e, gens);
}

inline MatrixCode em_embed(const MatrixCode& C, const Extension& ext) { return em_embed(C, ext, ext); }

/// Columns of G independent over F_q.
inline bool is_nondegenerate(const VectorCode& C) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < C.length(); ++j) cols.push_back(expand(C.generator().col(j), C.ext()));
    return rank(Matrix::from_rows(C.ext().base(), cols, C.dim() * C.ext().m())) == C.length();
}

inline bool code_equal(const MatrixCode& a, const MatrixCode& b) { return a == b; }
inline bool code_equal(const VectorCode& a, const VectorCode& b) { return a == b; }
inline bool code_equal(const PolyCode& a, const PolyCode& b) { return a == b; }

}  // namespace rankdiv
