#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "matrix.hpp"

namespace rankdiv {

/// Injective ring map sub -> sup fixing the prime field, fixed by the image of the root of sub.modulus.
class Embedding {
   public:
    Embedding() = default;
    Embedding(Field sub, Field sup, Code image_of_root) : sub_(std::move(sub)), sup_(std::move(sup)), gen_(image_of_root) {
        if (sub_.characteristic() != sup_.characteristic() || sup_.degree() % sub_.degree() != 0)
            fail(ErrorKind::BadSubfieldSize, "F_" + std::to_string(sub_.order()) + " is not a subfield of F_" + std::to_string(sup_.order()));
        const auto& mod = sub_.modulus();
        Code acc = 0;
        for (std::size_t i = mod.size(); i-- > 0;) acc = sup_.add(sup_.mul(acc, gen_), mod[i]);
        if (acc != 0) fail(ErrorKind::BadParams, "image is not a root of the defining polynomial");
        const std::uint32_t h = sub_.degree();
        std::vector<Code> root_pow(h);
        Code r = 1;
        for (std::uint32_t i = 0; i < h; ++i) {
            root_pow[i] = r;
            r = sup_.mul(r, gen_);
        }
        table_.resize(sub_.order());
        for (Code c = 0; c < sub_.order(); ++c) {
            Code y = 0;
            for (std::uint32_t i = 0; i < h; ++i) {
                const std::uint32_t d = sub_.digit(c, i);
                for (std::uint32_t k = 0; k < d; ++k) y = sup_.add(y, root_pow[i]);
            }
            table_[c] = y;
        }
        const std::uint64_t n_sub = sub_.order() - 1, n_sup = sup_.order() - 1;
        stride_ = n_sup / n_sub;
        if (n_sub > 1) {
            const std::uint64_t u = sup_.log(table_[sub_.primitive_element()]) / stride_;
            // u is a unit mod n_sub
            std::int64_t t = 0, nt = 1, rr = static_cast<std::int64_t>(n_sub), nr = static_cast<std::int64_t>(u % n_sub);
            while (nr) {
                const std::int64_t qq = rr / nr;
                std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
                std::tie(rr, nr) = std::make_pair(nr, rr - qq * nr);
            }
            uinv_ = static_cast<std::uint64_t>((t % static_cast<std::int64_t>(n_sub) + static_cast<std::int64_t>(n_sub)) % static_cast<std::int64_t>(n_sub));
        }
    }

    const Field& sub() const { return sub_; }
    const Field& sup() const { return sup_; }
    Code image_of_root() const { return gen_; }
    Code operator()(Code x) const { return table_[x]; }
    FieldElement operator()(const FieldElement& x) const {
        if (!(x.field() == sub_)) fail(ErrorKind::FieldMismatch, "element is not in the source field");
        return sup_.element(table_[x.code()]);
    }

    bool in_image(Code y) const { return y == 0 || sup_.log(y) % stride_ == 0; }
    Code preimage(Code y) const {
        if (y == 0) return 0;
        const std::uint64_t l = sup_.log(y);
        if (l % stride_) fail(ErrorKind::BadSubfieldSize, "element does not lie in the subfield");
        const std::uint64_t n_sub = sub_.order() - 1;
        if (n_sub == 1) return 1;
        return sub_.exp(detail::mulmod(l / stride_, uinv_, n_sub));
    }

    /// this: A -> B, inner: B -> C gives A -> C.
    Embedding then(const Embedding& outer) const {
        if (!(outer.sub_ == sup_)) fail(ErrorKind::FieldMismatch, "embeddings do not chain");
        return Embedding(sub_, outer.sup_, outer(gen_));
    }

   private:
    Field sub_, sup_;
    Code gen_ = 0;
    std::vector<Code> table_;
    std::uint64_t stride_ = 1, uinv_ = 1;
};

/// The embedding sending the root of sub.modulus to its smallest-code root in sup.
inline Embedding embed(const Field& sub, const Field& sup) {
    if (sub.characteristic() != sup.characteristic() || sup.degree() % sub.degree() != 0)
        fail(ErrorKind::BadSubfieldSize, "F_" + std::to_string(sub.order()) + " is not a subfield of F_" + std::to_string(sup.order()));
    const auto& mod = sub.modulus();
    for (Code y = 0; y < sup.order(); ++y) {
        Code acc = 0;
        for (std::size_t i = mod.size(); i-- > 0;) acc = sup.add(sup.mul(acc, y), mod[i]);
        if (acc == 0) return Embedding(sub, sup, y);
    }
    fail(ErrorKind::NotIrreducible, "no root found");
}

inline FieldElement embed(const FieldElement& x, const Embedding& e) { return e(x); }

/// x^{q0} for q0 = p^j with j | h.
inline FieldElement frobenius(const FieldElement& x, std::uint64_t q0) {
    const Field& f = x.field();
    std::uint32_t j = 0;
    std::uint64_t t = q0;
    while (t > 1 && t % f.characteristic() == 0) {
        t /= f.characteristic();
        ++j;
    }
    if (t != 1 || j == 0 || f.degree() % j != 0)
        fail(ErrorKind::BadSubfieldSize, std::to_string(q0) + " is not the order of a subfield of F_" + std::to_string(f.order()));
    return f.element(f.frobenius_power(x.code(), j));
}

/// F_{q^m} over F_q with a fixed embedding and an ordered F_q-basis.
class Extension {
   public:
    Extension() = default;
    explicit Extension(Embedding emb) : emb_(std::move(emb)) {
        m_ = big().degree() / base().degree();
        std::vector<Code> basis(m_);
        Code theta = big().degree() > 1 ? big().root() : 1;
        Code cur = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            basis[i] = cur;
            cur = big().mul(cur, theta);
        }
        init(std::move(basis));
    }
    Extension(const Field& big, const Field& base) : Extension(embed(base, big)) {}

    Extension with_basis(std::vector<Code> basis) const {
        Extension e = *this;
        e.init(std::move(basis));
        return e;
    }

    const Field& big() const { return emb_.sup(); }
    const Field& base() const { return emb_.sub(); }
    const Embedding& embedding() const { return emb_; }
    std::uint32_t m() const { return m_; }
    std::uint64_t q() const { return base().order(); }
    const std::vector<Code>& basis() const { return basis_; }

    Code up(Code c) const { return emb_(c); }
    Code down(Code y) const { return emb_.preimage(y); }

    /// Coordinates of x in the basis, as base-field codes.
    std::vector<Code> coords(Code x) const {
        std::vector<Code> out(m_);
        coords_into(x, out.data());
        return out;
    }
    void coords_into(Code x, Code* out) const {
        const Field& P = base();
        const std::uint32_t hb = P.degree();
        if (big().characteristic() == 2) {
            std::uint32_t bit = 0;
            for (std::uint32_t t = 0; t < m_; ++t) {
                Code c = 0;
                for (std::uint32_t d = 0; d < hb; ++d, ++bit)
                    c |= static_cast<Code>(__builtin_parity(inv_mask_[bit] & x)) << d;
                out[t] = c;
            }
            return;
        }
        const auto xd = big().digits(x);
        const std::uint32_t p = big().characteristic();
        std::uint32_t row = 0;
        for (std::uint32_t t = 0; t < m_; ++t) {
            Code c = 0;
            for (std::uint32_t d = 0; d < hb; ++d, ++row) {
                std::uint64_t s = 0;
                for (std::uint32_t k = 0; k < xd.size(); ++k) s += std::uint64_t{inv_(row, k)} * xd[k];
                c += static_cast<Code>(s % p) * P.p_power(d);
            }
            out[t] = c;
        }
    }
    Code combine(const std::vector<Code>& c) const {
        if (c.size() != m_) fail(ErrorKind::DimensionMismatch, "coordinate vector has wrong length");
        Code x = 0;
        for (std::uint32_t t = 0; t < m_; ++t) x = big().add(x, big().mul(up(c[t]), basis_[t]));
        return x;
    }

    /// x^{q^i}
    Code frob(Code x, std::uint32_t i) const {
        if (x == 0) return 0;
        const std::uint64_t n = big().order() - 1;
        return big().exp(detail::mulmod(big().log(x), frob_exp_[i % m_], n));
    }
    Code trace(Code x) const {
        Code s = 0;
        for (std::uint32_t i = 0; i < m_; ++i) s = big().add(s, frob(x, i));
        return down(s);
    }

    /// Inverse of the Moore matrix M[j][i] = b_j^{q^i}.
    const Matrix& moore_inverse() const { return moore_inv_; }

    /// Generator of F_{q^e} inside big, via the unique subfield of that order.
    Code subfield_primitive(std::uint32_t e) const {
        if (e == 0 || m_ % e) fail(ErrorKind::BadDivisor, std::to_string(e) + " does not divide " + std::to_string(m_));
        const std::uint64_t n = big().order() - 1;
        std::uint64_t sub_order = 1;
        for (std::uint32_t i = 0; i < e; ++i) sub_order *= q();
        return big().exp(n / (sub_order - 1));
    }

   private:
    void init(std::vector<Code> basis) {
        if (basis.size() != m_) fail(ErrorKind::NotABasis, "basis must have " + std::to_string(m_) + " elements");
        basis_ = std::move(basis);
        const Field& B = big();
        const Field& P = base();
        const std::uint32_t H = B.degree(), hb = P.degree();
        const Field Fp = default_field(B.characteristic(), 1);
        Matrix T(Fp, H, H);
        std::uint32_t col = 0;
        for (std::uint32_t t = 0; t < m_; ++t) {
            if (basis_[t] >= B.order()) fail(ErrorKind::NotABasis, "basis element outside the field");
            for (std::uint32_t d = 0; d < hb; ++d, ++col) {
                const Code v = B.mul(up(P.p_power(d)), basis_[t]);
                for (std::uint32_t k = 0; k < H; ++k) T(k, col) = B.digit(v, k);
            }
        }
        try {
            inv_ = inverse(T);
        } catch (const Error&) {
            fail(ErrorKind::NotABasis, "elements are not linearly independent over F_" + std::to_string(P.order()));
        }
        inv_mask_.assign(H, 0);
        if (B.characteristic() == 2)
            for (std::uint32_t r = 0; r < H; ++r)
                for (std::uint32_t k = 0; k < H; ++k)
                    if (inv_(r, k)) inv_mask_[r] |= Code{1} << k;
        const std::uint64_t n = B.order() - 1;
        frob_exp_.resize(m_);
        for (std::uint32_t i = 0; i < m_; ++i) frob_exp_[i] = n ? detail::powmod(q(), i, n) : 1;
        Matrix M(B, m_, m_);
        for (std::uint32_t j = 0; j < m_; ++j)
            for (std::uint32_t i = 0; i < m_; ++i) M(j, i) = frob(basis_[j], i);
        moore_inv_ = inverse(M);
    }

    Embedding emb_;
    std::uint32_t m_ = 0;
    std::vector<Code> basis_;
    Matrix inv_;
    std::vector<Code> inv_mask_;
    std::vector<std::uint64_t> frob_exp_;
    Matrix moore_inv_;
};

/// Default fields: F_{q^m} over F_q with q = p^h.
inline Extension make_extension(std::uint32_t p, std::uint32_t h, std::uint32_t m) {
    return Extension(default_field(p, h * m), default_field(p, h));
}

/// Tr_{F/F_q}(x), returned in the default field of order q.
inline FieldElement trace(const FieldElement& x, std::uint64_t q) {
    const Field& f = x.field();
    auto [p, j] = prime_power(q);
    if (p != f.characteristic() || f.degree() % j != 0)
        fail(ErrorKind::BadSubfieldSize, std::to_string(q) + " is not the order of a subfield of F_" + std::to_string(f.order()));
    Extension ext(f, default_field(p, j));
    return ext.base().element(ext.trace(x.code()));
}

/// Splits F_{q^m}/F_q at F_{q^e} into compatible F_{q^e}/F_q and F_{q^m}/F_{q^e}.
inline std::pair<Extension, Extension> split_extension(const Extension& ext, std::uint32_t e) {
    if (e == 0 || ext.m() % e) fail(ErrorKind::BadDivisor, std::to_string(e) + " does not divide " + std::to_string(ext.m()));
    const Field mid = default_field(ext.big().characteristic(), ext.base().degree() * e);
    Embedding mid_big = embed(mid, ext.big());
    Embedding base_mid(ext.base(), mid, mid_big.preimage(ext.embedding().image_of_root()));
    return {Extension(base_mid), Extension(mid_big)};
}

/// Chain F_0 ⊆ F_1 ⊆ ... with consecutive embeddings; non-adjacent levels use the composite.
class FieldTower {
   public:
    explicit FieldTower(std::vector<Field> levels) : levels_(std::move(levels)) {
        for (std::size_t i = 0; i + 1 < levels_.size(); ++i) steps_.push_back(embed(levels_[i], levels_[i + 1]));
    }
    const std::vector<Field>& levels() const { return levels_; }
    Embedding embedding(std::size_t from, std::size_t to) const {
        if (from >= to || to >= levels_.size()) fail(ErrorKind::BadParams, "levels must increase");
        Embedding e = steps_[from];
        for (std::size_t i = from + 1; i < to; ++i) e = e.then(steps_[i]);
        return e;
    }
    Extension extension(std::size_t from, std::size_t to) const { return Extension(embedding(from, to)); }

   private:
    std::vector<Field> levels_;
    std::vector<Embedding> steps_;
};

/// Entry-major expansion of a vector over F_{q^m} into F_q^{km}: index i*m + t.
inline Vec expand(const Vec& v, const Extension& ext) {
    Vec out(v.size() * ext.m());
    for (std::size_t i = 0; i < v.size(); ++i) ext.coords_into(v[i], out.data() + i * ext.m());
    return out;
}

inline Vec collapse(const Vec& v, const Extension& ext) {
    const std::uint32_t m = ext.m();
    if (v.size() % m) fail(ErrorKind::DimensionMismatch, "length is not a multiple of m");
    Vec out(v.size() / m);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = ext.combine(std::vector<Code>(v.begin() + static_cast<std::ptrdiff_t>(i * m), v.begin() + static_cast<std::ptrdiff_t>((i + 1) * m)));
    return out;
}

/// The same point set seen as an F_q-subspace of F_q^{km}.
inline Subspace restrict_scalars(const Subspace& s, const Extension& ext) {
    if (!(s.field() == ext.big())) fail(ErrorKind::FieldMismatch, "subspace is not over the extension field");
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const Vec v = s.vector(i);
        for (Code b : ext.basis()) {
            Vec w(v.size());
            for (std::size_t j = 0; j < v.size(); ++j) w[j] = ext.big().mul(b, v[j]);
            gens.push_back(expand(w, ext));
        }
    }
    return Subspace(ext.base(), s.ambient() * ext.m(), gens);
}

/// F_{q^m}-span of an F_q-subspace given in expanded coordinates.
inline Subspace extend_scalars(const Subspace& u, const Extension& ext) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < u.dim(); ++i) gens.push_back(collapse(u.vector(i), ext));
    return Subspace(ext.big(), u.ambient() / ext.m(), gens);
}

}  // namespace rankdiv
