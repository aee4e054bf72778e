#pragma once

// Idealizers, centralizers, the search for a copy of F_{q^m} inside L(C), conjugation of that copy onto the
// standard multiplication algebra, and brute-force equivalence of small matrix codes.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "codes.hpp"
#include "error.hpp"
#include "linpoly.hpp"
#include "matrix.hpp"
#include "random.hpp"
#include "upoly.hpp"

namespace rankdiv {

namespace detail {

// Products of basis pairs stay inside the algebra and the identity belongs to it.
inline void check_unital_algebra(const std::vector<Matrix>& basis, std::size_t m, const Field& f) {
#ifdef RANKDIV_CHECKED
    std::vector<Vec> rows;
    for (auto& b : basis) rows.push_back(b.entries());
    Subspace alg(f, m * m, rows);
    if (!alg.contains(Matrix::identity(f, m).entries())) fail(ErrorKind::TheoremViolation, "idealizer lacks the identity");
    for (auto& a : basis)
        for (auto& b : basis)
            if (!alg.contains((a * b).entries())) fail(ErrorKind::TheoremViolation, "idealizer is not closed under products");
#else
    (void)basis, (void)m, (void)f;
#endif
}

inline std::vector<Matrix> unvec(const Subspace& s, const Field& f, std::size_t r, std::size_t c) {
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < s.dim(); ++i) out.emplace_back(f, r, c, s.vector(i));
    return out;
}

}  // namespace detail

/// F_q-basis of {X in F_q^{m x m} : X A in C for all A in C}.
inline std::vector<Matrix> left_idealizer(const MatrixCode& C) {
    const Field& f = C.field();
    const std::size_t m = C.rows(), n = C.cols();
    const Subspace ann = C.span().annihilator();
    const auto basis = C.basis();
    // unknown X[a][c] at index a*m + c; constraint nu . vec(X A) = 0
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < ann.dim(); ++r) {
        const Vec nu = ann.vector(r);
        for (const Matrix& A : basis) {
            Vec row(m * m, 0);
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t c = 0; c < m; ++c) {
                    Code s = 0;
                    for (std::size_t b = 0; b < n; ++b)
                        if (nu[a * n + b] && A(c, b)) s = f.add(s, f.mul(nu[a * n + b], A(c, b)));
                    row[a * m + c] = s;
                }
            rows.push_back(std::move(row));
        }
    }
    const Subspace sol = rows.empty() ? Subspace::full(f, m * m) : kernel(Matrix::from_rows(f, rows, m * m));
    auto out = detail::unvec(sol, f, m, m);
    detail::check_unital_algebra(out, m, f);
    return out;
}

/// Left idealizer of a polynomial code, as linearized polynomials h with h o C in C.
inline std::vector<LinPoly> left_idealizer(const PolyCode& C) {
    std::vector<LinPoly> out;
    for (const Matrix& X : left_idealizer(matrix_view(C))) out.push_back(from_matrix(X, C.ext_ptr()));
    return out;
}

/// F_q-basis of {X : X A = A X for all A in C}, C square.
inline std::vector<Matrix> centralizer(const MatrixCode& C) {
    if (C.rows() != C.cols()) fail(ErrorKind::NotSquare, "centralizer needs square matrices");
    const Field& f = C.field();
    const std::size_t m = C.rows();
    std::vector<Vec> rows;
    for (const Matrix& A : C.basis())
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                // (XA - AX)[i][j] = sum_k X[i][k] A[k][j] - A[i][k] X[k][j]
                Vec row(m * m, 0);
                for (std::size_t k = 0; k < m; ++k) {
                    row[i * m + k] = f.add(row[i * m + k], A(k, j));
                    row[k * m + j] = f.sub(row[k * m + j], A(i, k));
                }
                rows.push_back(std::move(row));
            }
    const Subspace sol = rows.empty() ? Subspace::full(f, m * m) : kernel(Matrix::from_rows(f, rows, m * m));
    return detail::unvec(sol, f, m, m);
}

inline std::vector<LinPoly> centralizer(const PolyCode& C) {
    if (C.nvars() != 1) fail(ErrorKind::NotSquare, "centralizer needs a univariate code");
    std::vector<LinPoly> out;
    for (const Matrix& X : centralizer(matrix_view(C))) out.push_back(from_matrix(X, C.ext_ptr()));
    return out;
}

struct FieldSearch {
    std::optional<Matrix> element;  // generates a field of order q^degree
    Poly min_poly;
    bool exhaustive = false;  // true when every element of the algebra was examined
};

/// Looks for A in span(algebra) whose minimal polynomial over F_q is irreducible of the given degree.
/// Order: basis elements, seeded random combinations, then everything when the algebra has at most
/// exhaustive_limit elements.
inline FieldSearch find_field_element(const std::vector<Matrix>& algebra, const Field& f, std::size_t size, std::size_t degree,
                                      std::uint64_t seed = 0, std::size_t random_tries = 1000,
                                      std::uint64_t exhaustive_limit = std::uint64_t{1} << 16) {
    FieldSearch res;
    auto test = [&](const Matrix& A) {
        Poly mp = minimal_polynomial(A);
        if (rankdiv::degree(mp) == degree && poly_is_irreducible(f, mp)) {
            res.element = A;
            res.min_poly = std::move(mp);
            return true;
        }
        return false;
    };
    for (auto& A : algebra)
        if (test(A)) return res;
    if (algebra.empty()) {
        res.exhaustive = true;
        return res;
    }
    Rng rng(seed);
    for (std::size_t t = 0; t < random_tries; ++t) {
        Matrix A(f, size, size);
        for (auto& B : algebra) A = A + B.scaled(rng.element(f));
        if (test(A)) return res;
    }
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < algebra.size(); ++i) {
        if (total > exhaustive_limit / f.order()) return res;
        total *= f.order();
    }
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        Matrix A(f, size, size);
        std::uint64_t t = idx;
        for (auto& B : algebra) {
            const Code c = static_cast<Code>(t % f.order());
            t /= f.order();
            if (c) A = A + B.scaled(c);
        }
        if (test(A)) return res;
    }
    res.exhaustive = true;
    return res;
}

inline FieldSearch find_field_in_idealizer(const MatrixCode& C, std::size_t degree, std::uint64_t seed = 0) {
    return find_field_element(left_idealizer(C), C.field(), C.rows(), degree, seed);
}

/// Matrix of x -> alpha x in the basis of ext.
inline Matrix multiplication_matrix(Code alpha, const Extension& ext) {
    return to_matrix(LinPoly::monomial(share(ext), 0, alpha));
}

struct Normalized {
    Matrix H;         // C' = H^{-1} C
    MatrixCode code;  // contains the standard multiplication algebra in its idealizer
};

/// Conjugates the field F_q[A] inside L(C) onto {multiplication by alpha} in the basis of ext.
inline Normalized normalize_linearity(const MatrixCode& C, const Matrix& A, const Extension& ext) {
    const Field& f = C.field();
    const std::size_t m = C.rows();
    if (ext.m() != m || !(ext.base() == f)) fail(ErrorKind::DimensionMismatch, "extension degree must equal the row count");
    const Code theta = ext.big().primitive_element();
    const Matrix S = multiplication_matrix(theta, ext);
    const Poly mu = minimal_polynomial(S);
    const Poly muA = minimal_polynomial(A);
    if (rankdiv::degree(muA) != m || !poly_is_irreducible(f, muA)) fail(ErrorKind::ConjugationFailed, "element does not generate F_{q^m}");
    // G = r(A) with mu(G) = 0, searched over r of degree < m
    std::vector<Matrix> powers{Matrix::identity(f, m)};
    for (std::size_t i = 1; i < m; ++i) powers.push_back(powers.back() * A);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= f.order();
    // prefer G = S so that an already standard code is left alone
    std::optional<Matrix> G;
    for (std::uint64_t idx = 1; idx < total && !(G && *G == S); ++idx) {
        Matrix cand(f, m, m);
        std::uint64_t t = idx;
        for (std::size_t i = 0; i < m; ++i) {
            const Code c = static_cast<Code>(t % f.order());
            t /= f.order();
            if (c) cand = cand + powers[i].scaled(c);
        }
        if ((!G || cand == S) && poly_eval(mu, cand).is_zero()) G = cand;
    }
    if (!G) fail(ErrorKind::ConjugationFailed, "no conjugate of the standard generator in F_q[A]");
    // G H = H S, unknown H[a][b] at a*m + b
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Vec row(m * m, 0);
            for (std::size_t k = 0; k < m; ++k) {
                row[k * m + j] = f.add(row[k * m + j], (*G)(i, k));
                row[i * m + k] = f.sub(row[i * m + k], S(k, j));
            }
            rows.push_back(std::move(row));
        }
    const Subspace sol = kernel(Matrix::from_rows(f, rows, m * m));
    for (std::size_t i = 0; i < sol.dim(); ++i) {
        Matrix H(f, m, m, sol.vector(i));
        if (rank(H) != m) continue;
        const Matrix Hinv = inverse(H);
        std::vector<Matrix> gens;
        for (const Matrix& B : C.basis()) gens.push_back(Hinv * B);
        return {H, MatrixCode(f, m, C.cols(), gens).with_cache(C.cache())};
    }
    fail(ErrorKind::ConjugationFailed, "no invertible intertwiner");
}

/// Gamma^{-1} of a code whose idealizer contains the standard multiplication algebra of ext.
inline VectorCode vector_view(const MatrixCode& C, const ExtPtr& ext) {
    if (C.rows() != ext->m() || !(C.field() == ext->base())) fail(ErrorKind::DimensionMismatch, "code shape does not match the extension");
    std::vector<Vec> rows;
    for (const Matrix& B : C.basis()) rows.push_back(gamma_inv(B, *ext));
    VectorCode V(ext, Matrix::from_rows(ext->big(), rows, C.cols()));
    if (V.dim() * ext->m() != C.dim()) fail(ErrorKind::NotFqmLinear, "code is not closed under the standard F_{q^m}-action");
    return V.with_cache(C.cache());
}

/// All invertible n x n matrices over f, in a fixed order.
inline void for_each_invertible(const Field& f, std::size_t n, const std::function<bool(const Matrix&)>& visit) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n * n; ++i) total *= f.order();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Matrix M(f, n, n);
        std::uint64_t t = idx;
        for (std::size_t i = 0; i < n * n; ++i) {
            M(i / n, i % n) = static_cast<Code>(t % f.order());
            t /= f.order();
        }
        if (rank(M) == n && !visit(M)) return;
    }
}

inline std::uint64_t gl_order(std::uint64_t q, std::size_t n) {
    std::uint64_t qn = 1;
    for (std::size_t i = 0; i < n; ++i) qn *= q;
    std::uint64_t r = 1, qi = 1;
    for (std::size_t i = 0; i < n; ++i) {
        r *= qn - qi;
        qi *= q;
    }
    return r;
}

struct Equivalence {
    bool equivalent = false;
    std::optional<Matrix> X, Y;  // D = X C Y
};

inline constexpr std::uint64_t kEquivalenceBudget = 10'000'000;

/// Linear equivalence D = X C Y, by search over X in GL(m) and the invertible solutions Y of a linear system.
inline Equivalence code_equivalent(const MatrixCode& C, const MatrixCode& D) {
    const Field& f = C.field();
    const std::size_t m = C.rows(), n = C.cols();
    if (!(f == D.field()) || m != D.rows() || n != D.cols()) return {};
    if (m * n > 16) fail(ErrorKind::SearchSpaceTooLarge, "equivalence search is limited to mn <= 16");
    const std::uint64_t gm = gl_order(f.order(), m), gn = gl_order(f.order(), n);
    if (gm > kEquivalenceBudget / gn) fail(ErrorKind::SearchSpaceTooLarge, "|GL(m)| * |GL(n)| exceeds 10^7");
    if (C.dim() != D.dim()) return {};
    if (C.spectrum() != D.spectrum()) return {};
    const Subspace annD = D.span().annihilator();
    const auto basis = C.basis();
    Equivalence res;
    for_each_invertible(f, m, [&](const Matrix& X) {
        // Y with nu . vec(X A Y) = 0 for every annihilator row nu of D and basis element A of C
        std::vector<Vec> rows;
        for (const Matrix& A : basis) {
            const Matrix XA = X * A;
            for (std::size_t r = 0; r < annD.dim(); ++r) {
                const Vec nu = annD.vector(r);
                Vec row(n * n, 0);
                // vec(XA Y)[a*n + b] = sum_c XA[a][c] Y[c][b]
                for (std::size_t a = 0; a < m; ++a)
                    for (std::size_t b = 0; b < n; ++b) {
                        if (!nu[a * n + b]) continue;
                        for (std::size_t c = 0; c < n; ++c)
                            row[c * n + b] = f.add(row[c * n + b], f.mul(nu[a * n + b], XA(a, c)));
                    }
                rows.push_back(std::move(row));
            }
        }
        const Subspace ys = rows.empty() ? Subspace::full(f, n * n) : kernel(Matrix::from_rows(f, rows, n * n));
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < ys.dim(); ++i) total *= f.order();
        for (std::uint64_t idx = 1; idx < total; ++idx) {
            Vec v(n * n, 0);
            std::uint64_t t = idx;
            for (std::size_t i = 0; i < ys.dim(); ++i) {
                const Code c = static_cast<Code>(t % f.order());
                t /= f.order();
                if (!c) continue;
                const Vec b = ys.vector(i);
                for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.add(v[j], f.mul(c, b[j]));
            }
            Matrix Y(f, n, n, v);
            if (rank(Y) == n) {
                res = {true, X, Y};
                return false;
            }
        }
        return true;
    });
    return res;
}

}  // namespace rankdiv
