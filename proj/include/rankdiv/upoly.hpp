#pragma once

// Ordinary univariate polynomials over a Field (constant term first).
// Only what the idealizer search needs: minimal polynomials and irreducibility.

#include <cstdint>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "matrix.hpp"

namespace rankdiv {

using Poly = std::vector<Code>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::size_t degree(const Poly& a) { return a.empty() ? 0 : a.size() - 1; }

inline Poly poly_sub(const Field& f, Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
    trim(a);
    return a;
}

inline Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
    trim(c);
    return c;
}

inline std::pair<Poly, Poly> poly_divmod(const Field& f, Poly a, Poly b) {
    trim(a);
    trim(b);
    if (b.empty()) fail(ErrorKind::NotInvertible, "division by the zero polynomial");
    if (a.size() < b.size()) return {{}, a};
    Poly q(a.size() - b.size() + 1, 0);
    const Code lead_inv = f.inv(b.back());
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const Code c = f.mul(a.back(), lead_inv);
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline Poly poly_mod(const Field& f, const Poly& a, const Poly& b) { return poly_divmod(f, a, b).second; }

inline Poly poly_gcd(const Field& f, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Code inv = f.inv(a.back());
        for (Code& c : a) c = f.mul(c, inv);
    }
    return a;
}

/// base^e mod modulus
inline Poly poly_powmod(const Field& f, Poly base, std::uint64_t e, const Poly& modulus) {
    Poly r{1};
    base = poly_mod(f, base, modulus);
    while (e) {
        if (e & 1) r = poly_mod(f, poly_mul(f, r, base), modulus);
        base = poly_mod(f, poly_mul(f, base, base), modulus);
        e >>= 1;
    }
    return r;
}

/// Ben-Or: f of degree d is irreducible iff gcd(x^{Q^i} - x, f) = 1 for i <= d/2.
inline bool poly_is_irreducible(const Field& f, Poly a) {
    trim(a);
    const std::size_t d = degree(a);
    if (a.empty() || d == 0) return false;
    if (d == 1) return true;
    const Poly x{0, 1};
    Poly xp = x;
    for (std::size_t i = 1; i <= d / 2; ++i) {
        xp = poly_powmod(f, xp, f.order(), a);
        if (degree(poly_gcd(f, a, poly_sub(f, xp, x))) > 0) return false;
    }
    return true;
}

/// Sum c_i A^i
inline Matrix poly_eval(const Poly& p, const Matrix& a) {
    const Field& f = a.field();
    Matrix acc(f, a.rows(), a.cols());
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * a;
        for (std::size_t d = 0; d < a.rows(); ++d) acc(d, d) = f.add(acc(d, d), p[i]);
    }
    return acc;
}

/// Monic minimal polynomial of a square matrix, from the first linear dependency among I, A, A^2, ...
inline Poly minimal_polynomial(const Matrix& a) {
    if (a.rows() != a.cols()) fail(ErrorKind::NotSquare, "minimal polynomial needs a square matrix");
    const Field& f = a.field();
    const std::size_t n = a.rows(), n2 = n * n;
    std::vector<Matrix> powers{Matrix::identity(f, n)};
    for (std::size_t d = 1; d <= n; ++d) {
        powers.push_back(powers.back() * a);
        // columns: vec(A^0) ... vec(A^d)
        Matrix sys(f, n2, d + 1);
        for (std::size_t k = 0; k <= d; ++k)
            for (std::size_t i = 0; i < n2; ++i) sys(i, k) = powers[k].entries()[i];
        Subspace ker = kernel(sys);
        if (ker.dim() == 0) continue;
        Vec v = ker.vector(ker.dim() - 1);
        Poly p(v.begin(), v.end());
        trim(p);
        const Code inv = f.inv(p.back());
        for (Code& c : p) c = f.mul(c, inv);
        return p;
    }
    fail(ErrorKind::BadParams, "no dependency found");
}

}  // namespace rankdiv
