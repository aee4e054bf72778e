#pragma once

// q-systems, the hyperplane form of the rank weight, trace duality, and direction sets of point sets in AG(n, Q).

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "codes.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "tower.hpp"

namespace rankdiv {

/// F_q-subspace U of F_{q^m}^k, stored in entry-major coordinates of F_q^{km}.
struct QSystem {
    ExtPtr ext;
    std::size_t k = 0;
    Subspace U;

    std::size_t n() const { return U.dim(); }
    /// Member j of the stored basis as a vector over F_{q^m}.
    Vec point(std::size_t j) const { return collapse(U.vector(j), *ext); }
};

inline QSystem make_system(const ExtPtr& ext, std::size_t k, const std::vector<Vec>& gens_over_big) {
    std::vector<Vec> rows;
    for (auto& g : gens_over_big) {
        if (g.size() != k) fail(ErrorKind::AmbientMismatch, "generator is not in F_{q^m}^k");
        rows.push_back(expand(g, *ext));
    }
    return {ext, k, Subspace(ext->base(), k * ext->m(), rows)};
}

/// F_q-span of the columns of a generator matrix.
inline QSystem system_of(const VectorCode& C) {
    if (!is_nondegenerate(C)) fail(ErrorKind::DegenerateCode, "columns of G are F_q-dependent");
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < C.length(); ++j) cols.push_back(C.generator().col(j));
    return make_system(C.ext_ptr(), C.dim(), cols);
}

/// Generator matrix whose columns are the stored basis of U.
inline VectorCode code_of_system(const QSystem& S) {
    Matrix G(S.ext->big(), S.k, S.n());
    for (std::size_t j = 0; j < S.n(); ++j) {
        const Vec u = S.point(j);
        for (std::size_t i = 0; i < S.k; ++i) G(i, j) = u[i];
    }
    VectorCode C(S.ext, G);
    if (C.dim() != S.k) fail(ErrorKind::DegenerateCode, "U does not span F_{q^m}^k");
    return C;
}

/// n - dim_{F_q}(U cap x^perp), x^perp for the standard dot product.
inline std::size_t weight_via_system(const Vec& x, const QSystem& S) {
    if (x.size() != S.k) fail(ErrorKind::AmbientMismatch, "x has the wrong length");
    bool zero = true;
    for (Code c : x) zero = zero && !c;
    if (zero) fail(ErrorKind::ZeroVector, "x must be nonzero");
    const Field& F = S.ext->big();
    Vec images(S.n());
    for (std::size_t j = 0; j < S.n(); ++j) {
        const Vec u = S.point(j);
        Code s = 0;
        for (std::size_t i = 0; i < S.k; ++i) s = F.add(s, F.mul(x[i], u[i]));
        images[j] = s;
    }
    return rank_weight(images, *S.ext);
}

/// Bilinear form sigma(x, y) = x^T M y on F_{q^m}^k; identity Gram matrix when empty.
struct BilinearForm {
    std::optional<Matrix> gram;

    Code operator()(const Vec& x, const Vec& y, const Field& F) const {
        Code s = 0;
        if (!gram) {
            for (std::size_t i = 0; i < x.size(); ++i) s = F.add(s, F.mul(x[i], y[i]));
            return s;
        }
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j)
                if (x[i] && y[j]) s = F.add(s, F.mul(x[i], F.mul((*gram)(i, j), y[j])));
        return s;
    }
    void check(std::size_t k, const Field& F) const {
        if (!gram) return;
        if (gram->rows() != k || gram->cols() != k || !(gram->field() == F)) fail(ErrorKind::AmbientMismatch, "Gram matrix has the wrong shape");
        if (rank(*gram) != k) fail(ErrorKind::DegenerateForm, "form is degenerate");
    }
};

/// Orthogonal complement of U (expanded coordinates) for Tr o sigma.
inline Subspace dual_perp(const Subspace& U, const Extension& ext, const BilinearForm& sigma = {}) {
    const std::uint32_t m = ext.m();
    if (U.ambient() % m || !(U.field() == ext.base())) fail(ErrorKind::AmbientMismatch, "U is not inside F_q^{km}");
    const std::size_t k = U.ambient() / m;
    sigma.check(k, ext.big());
    std::vector<Vec> unit;
    for (std::size_t i = 0; i < k; ++i)
        for (std::uint32_t t = 0; t < m; ++t) {
            Vec e(k, 0);
            e[i] = ext.basis()[t];
            unit.push_back(std::move(e));
        }
    if (U.dim() == 0) return Subspace::full(ext.base(), k * m);
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < U.dim(); ++r) {
        const Vec u = collapse(U.vector(r), ext);
        Vec row(k * m);
        for (std::size_t j = 0; j < k * m; ++j) row[j] = ext.down(ext.trace(sigma(u, unit[j], ext.big())));
        rows.push_back(std::move(row));
    }
    return kernel(Matrix::from_rows(ext.base(), rows, k * m));
}

inline QSystem dual_perp(const QSystem& S, const BilinearForm& sigma = {}) { return {S.ext, S.k, dual_perp(S.U, *S.ext, sigma)}; }

/// sigma-orthogonal complement of an F_{q^m}-subspace of F_{q^m}^k.
inline Subspace perp_over_big(const Subspace& W, const BilinearForm& sigma = {}) {
    const Field& F = W.field();
    const std::size_t k = W.ambient();
    sigma.check(k, F);
    if (W.dim() == 0) return Subspace::full(F, k);
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < W.dim(); ++r) {
        Vec row(k);
        const Vec w = W.vector(r);
        for (std::size_t j = 0; j < k; ++j) {
            Vec e(k, 0);
            e[j] = 1;
            row[j] = sigma(w, e, F);
        }
        rows.push_back(std::move(row));
    }
    return kernel(Matrix::from_rows(F, rows, k));
}

struct WeightDualCheck {
    std::size_t lhs = 0, rhs = 0;
    bool holds() const { return lhs == rhs; }
};

/// Both sides of dim(U^perp' cap W^perp) = dim(U cap W) + dim V - dim U - dim W, all over F_q.
inline WeightDualCheck check_weight_dual(const Subspace& U, const Subspace& W, const Extension& ext, const BilinearForm& sigma = {}) {
    if (!(W.field() == ext.big()) || U.ambient() != W.ambient() * ext.m()) fail(ErrorKind::AmbientMismatch, "U and W live in different spaces");
    const Subspace Wq = restrict_scalars(W, ext), Wperp = restrict_scalars(perp_over_big(W, sigma), ext);
    const Subspace Ud = dual_perp(U, ext, sigma);
    WeightDualCheck r;
    r.lhs = Ud.intersect(Wperp).dim();
    r.rhs = U.intersect(Wq).dim() + U.ambient() - U.dim() - Wq.dim();
    return r;
}

/// Projective points of F_Q^k, first nonzero coordinate 1, in odometer order.
inline std::vector<Vec> projective_points(const Field& F, std::size_t k) {
    std::vector<Vec> out;
    for (std::size_t lead = 0; lead < k; ++lead) {
        const std::size_t free = k - lead - 1;
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < free; ++i) total *= F.order();
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            Vec v(k, 0);
            v[lead] = 1;
            std::uint64_t t = idx;
            for (std::size_t i = lead + 1; i < k; ++i, t /= F.order()) v[i] = static_cast<Code>(t % F.order());
            out.push_back(std::move(v));
        }
    }
    return out;
}

/// dim_{F_q}(U cap <x>) for every projective point x of F_{q^m}^k.
inline std::vector<std::pair<Vec, std::size_t>> intersection_pattern(const QSystem& S) {
    std::vector<std::pair<Vec, std::size_t>> out;
    for (Vec& x : projective_points(S.ext->big(), S.k)) {
        const Subspace line = restrict_scalars(Subspace(S.ext->big(), S.k, {x}), *S.ext);
        out.emplace_back(std::move(x), S.U.intersect(line).dim());
    }
    return out;
}

// ---- directions ----

inline Vec normalize_direction(Vec d, const Field& F) {
    for (Code c : d)
        if (c) {
            const Code inv = F.inv(c);
            for (Code& x : d) x = F.mul(x, inv);
            return d;
        }
    fail(ErrorKind::ZeroVector, "zero direction");
}

/// Directions <P - Q> of a point set in AG(n, Q).
inline std::set<Vec> directions(const std::vector<Vec>& S, const Field& F) {
    if (S.size() < 2) fail(ErrorKind::TooFewPoints, "need at least two points");
    std::set<Vec> D;
    for (std::size_t a = 0; a < S.size(); ++a)
        for (std::size_t b = a + 1; b < S.size(); ++b) {
            Vec d(S[a].size());
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = F.sub(S[a][i], S[b][i]);
            bool zero = true;
            for (Code c : d) zero = zero && !c;
            if (!zero) D.insert(normalize_direction(std::move(d), F));
        }
    return D;
}

/// Graph {(x, f(x))} of a table indexed by element code.
inline std::vector<Vec> graph_points(const std::vector<Code>& f, const Field& F) {
    if (f.size() != F.order()) fail(ErrorKind::DimensionMismatch, "table must have one entry per field element");
    std::vector<Vec> S;
    for (Code x = 0; x < F.order(); ++x) S.push_back({x, f[x]});
    return S;
}

/// Directions of a graph, by slopes (f(x) - f(y)) / (x - y).
inline std::set<Vec> directions(const std::vector<Code>& f, const Field& F) {
    if (f.size() != F.order()) fail(ErrorKind::DimensionMismatch, "table must have one entry per field element");
    if (F.order() < 2) fail(ErrorKind::TooFewPoints, "need at least two points");
    std::vector<char> seen(F.order(), 0);
    for (Code x = 0; x < F.order(); ++x)
        for (Code y = x + 1; y < F.order(); ++y) seen[F.div(F.sub(f[x], f[y]), F.sub(x, y))] = 1;
    std::set<Vec> D;
    for (Code c = 0; c < F.order(); ++c)
        if (seen[c]) D.insert({1, c});
    return D;
}

namespace detail {

/// Sizes of the nonempty intersections of S with the lines of direction d.
inline std::map<Vec, std::uint64_t> line_counts(const std::vector<Vec>& S, const Vec& d, const Field& F) {
    std::size_t lead = 0;
    while (!d[lead]) ++lead;
    std::map<Vec, std::uint64_t> counts;
    for (const Vec& P : S) {
        Vec key = P;
        const Code t = P[lead];
        for (std::size_t i = 0; i < key.size(); ++i) key[i] = F.sub(key[i], F.mul(t, d[i]));
        ++counts[key];
    }
    return counts;
}

inline std::uint32_t p_valuation(std::uint64_t n, std::uint32_t p) {
    std::uint32_t v = 0;
    while (n && n % p == 0) n /= p, ++v;
    return v;
}

/// S - S[0] closed under addition and F_{p^e}-scaling.
inline bool is_affine_subfield_linear(const std::vector<Vec>& S, const Field& F, std::uint32_t e) {
    if (S.empty()) return true;
    std::set<Vec> T;
    for (const Vec& P : S) {
        Vec v(P.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.sub(P[i], S[0][i]);
        T.insert(std::move(v));
    }
    std::vector<Code> scalars;
    for (Code c = 0; c < F.order(); ++c)
        if (F.frobenius_power(c, e) == c) scalars.push_back(c);
    for (auto& a : T) {
        for (Code c : scalars) {
            Vec v = a;
            for (Code& x : v) x = F.mul(x, c);
            if (!T.count(v)) return false;
        }
        for (auto& b : T) {
            Vec v(a.size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.add(a[i], b[i]);
            if (!T.count(v)) return false;
        }
    }
    return true;
}

}  // namespace detail

struct DirectionReport {
    std::uint64_t N = 0;
    std::uint64_t s = 1;
    int branch = 0;                           // 1, 2 or 3
    std::optional<std::uint32_t> subfield_linear;  // e with the graph F_{p^e}-linear, checked when s > 2
    std::string note;
};

/// N, s and the branch for the graph of f: F_Q -> F_Q; raises TheoremViolation if no branch fits.
inline DirectionReport verify_direction_theorem(const std::vector<Code>& f, const Field& F) {
    const std::uint64_t Q = F.order();
    const std::uint32_t p = F.characteristic(), h = F.degree();
    DirectionReport r;
    const auto D = directions(f, F);
    r.N = D.size();
    // only determined directions matter; every other line meets the graph at most once
    std::uint32_t e = h;
    const auto S = graph_points(f, F);
    for (const Vec& d : D)
        for (auto& [key, c] : detail::line_counts(S, d, F)) e = std::min(e, detail::p_valuation(c, p));
    for (std::uint32_t i = 0; i < e; ++i) r.s *= p;
    const bool b1 = r.s == 1 && 2 * r.N >= Q + 3 && r.N <= Q + 1;
    const bool b2 = r.s > 1 && r.s < Q && h % e == 0 && r.N >= Q / r.s + 1 && r.N * (r.s - 1) <= Q - 1;
    const bool b3 = r.s == Q && r.N == 1;
    if (b1 + b2 + b3 != 1) fail(ErrorKind::TheoremViolation, "direction count fits no branch (N=" + std::to_string(r.N) + ", s=" + std::to_string(r.s) + ")");
    r.branch = b1 ? 1 : b2 ? 2 : 3;
    if (r.s > 2) {
        if (!detail::is_affine_subfield_linear(S, F, e)) fail(ErrorKind::TheoremViolation, "graph is not F_s-linear");
        r.subfield_linear = e;
    } else if (r.s == 2) {
        r.note = "linearity not implied";
    }
    return r;
}

struct PointSetReport {
    std::uint64_t D = 0;
    bool hypothesis_met = false;
    std::optional<std::uint32_t> e;  // gcd of the e_l; S is F_{p^e}-linear
    std::string note;
};

/// Checks the line-intersection and linearity conclusions for S in AG(n, Q), n >= 3, |S| = Q^{n-1},
/// whenever |D| <= (Q+3)/2 Q^{n-2} + Q^{n-3} + ... + Q.
inline PointSetReport verify_point_set_theorem(const std::vector<Vec>& S, const Field& F) {
    if (S.empty()) fail(ErrorKind::TooFewPoints, "empty point set");
    const std::size_t n = S[0].size();
    const std::uint64_t Q = F.order();
    const std::uint32_t p = F.characteristic(), h = F.degree();
    std::uint64_t Qn1 = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) Qn1 *= Q;
    if (n < 3 || S.size() != Qn1) fail(ErrorKind::DimensionMismatch, "need n >= 3 and |S| = Q^{n-1}");
    PointSetReport r;
    const auto D = directions(S, F);
    r.D = D.size();
    // 2|D| <= (Q+3) Q^{n-2} + 2(Q^{n-3} + ... + Q)
    std::uint64_t bound2 = (Q + 3) * (Qn1 / Q), tail = 0, pw = 1;
    for (std::size_t i = 1; i + 2 < n; ++i) tail += (pw *= Q);
    bound2 += 2 * tail;
    r.hypothesis_met = 2 * r.D <= bound2;
    if (!r.hypothesis_met) {
        r.note = "hypothesis not met";
        return r;
    }
    std::uint32_t g = 0;
    for (const Vec& d : projective_points(F, n)) {
        const bool det = D.count(d);
        for (auto& [key, c] : detail::line_counts(S, d, F)) {
            if (!det) {
                if (c != 1) fail(ErrorKind::TheoremViolation, "undetermined direction with a secant line");
                continue;
            }
            std::uint32_t el = std::min(detail::p_valuation(c, p), h);
            while (el && h % el) --el;
            if (el == 0) fail(ErrorKind::TheoremViolation, "line meets S in a number of points prime to p");
            g = std::gcd(g, el);
        }
    }
    if (g == 0) fail(ErrorKind::TheoremViolation, "no determined direction");
    if (!detail::is_affine_subfield_linear(S, F, g)) fail(ErrorKind::TheoremViolation, "S is not F_{p^e}-linear");
    r.e = g;
    return r;
}

}  // namespace rankdiv
