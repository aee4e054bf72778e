#pragma once

// Generators for the code families: block repetitions, alternating matrices, the S_1 x S_2 family, scrambles.

#include <optional>

#include "codes.hpp"
#include "qsystem.hpp"
#include "random.hpp"

namespace rankdiv {

/// diag(A, ..., A) with e copies of every member.
inline MatrixCode block_repetition(const MatrixCode& C, std::size_t e) {
    if (C.rows() != C.cols()) fail(ErrorKind::NotSquare, "block repetition needs square matrices");
    if (e == 0) fail(ErrorKind::BadParams, "e must be positive");
    const std::size_t m = C.rows();
    std::vector<Matrix> gens;
    for (const Matrix& A : C.basis()) {
        Matrix D(C.field(), e * m, e * m);
        for (std::size_t b = 0; b < e; ++b) D.set_block(b * m, b * m, A);
        gens.push_back(D);
    }
    return MatrixCode(C.field(), e * m, e * m, gens);
}

/// Span of E_ij - E_ji for i < j.
inline MatrixCode alternating_code(std::size_t m, const Field& f) {
    if (m < 2) fail(ErrorKind::BadParams, "alternating code needs m >= 2");
    std::vector<Matrix> gens;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Matrix A(f, m, m);
            A(i, j) = 1;
            A(j, i) = f.neg(1);
            gens.push_back(A);
        }
    return MatrixCode(f, m, m, gens);
}

struct CounterexampleParams {
    std::uint64_t q = 2;
    std::uint32_t t = 3, l = 3, e = 2, g = 3;

    std::uint32_t m() const { return t * l; }
    /// Whether e does not divide tl, the case in which the code cannot arise over F_{q^e}.
    bool obstructed() const { return m() % e != 0; }

    void validate() const {
        if (!t || !l || !e || !g) fail(ErrorKind::BadParams, "t, l, e, g must be positive");
        prime_power(q);
        if (e >= t) fail(ErrorKind::BadParams, "e must be less than t");
        if (std::uint64_t{g} * e > std::uint64_t{t} * l) fail(ErrorKind::BadParams, "ge exceeds tl");
        if ((std::uint64_t{g} * e) % t)
            fail(ErrorKind::BadParams, "ge = " + std::to_string(g * e) + " is not a multiple of t = " + std::to_string(t) +
                                           ", so no F_{q^t}-subspace has that F_q-dimension");
    }
};

/// The pieces of U = S_1 x S_2 inside F_{q^{tl}}^2.
struct Counterexample {
    CounterexampleParams params;
    Extension lower;  // F_{q^t} / F_q
    Extension upper;  // F_{q^{tl}} / F_{q^t}
    std::vector<Code> s1;  // F_q-basis of S_1, in F_{q^t}
    std::vector<Code> s2;  // F_{q^t}-basis of S_2, in F_{q^{tl}}
    QSystem system;
};

/// S_1 defaults to the first e power-basis elements of F_{q^t}; S_2 to the F_{q^t}-span of the first ge/t basis elements.
inline Counterexample counterexample(const CounterexampleParams& prm, std::optional<std::vector<Code>> s1 = {},
                                     std::optional<std::vector<Code>> s2 = {}) {
    prm.validate();
    const auto [p, h] = prime_power(prm.q);
    const ExtPtr ext = share(make_extension(p, h, prm.m()));
    auto [lower, upper] = split_extension(*ext, prm.t);
    const Field& mid = lower.big();
    const Field& B = ext->big();
    if (!s1) s1 = std::vector<Code>(lower.basis().begin(), lower.basis().begin() + prm.e);
    if (!s2) s2 = std::vector<Code>(upper.basis().begin(), upper.basis().begin() + prm.g * prm.e / prm.t);

    std::vector<Vec> c1;
    bool has_one = false;
    for (Code x : *s1) {
        if (x >= mid.order()) fail(ErrorKind::BadParams, "S_1 element outside F_{q^t}");
        has_one = has_one || x == 1;
        c1.push_back(lower.coords(x));
    }
    const Subspace S1(lower.base(), prm.t, c1);
    if (S1.dim() != prm.e) fail(ErrorKind::BadParams, "S_1 must have F_q-dimension e");
    if (!has_one && !S1.contains(lower.coords(1))) fail(ErrorKind::BadParams, "S_1 must contain 1");

    std::vector<Vec> rows;
    for (Code x : *s1) rows.push_back(Vec{upper.up(x), 0});
    std::vector<Vec> c2;
    for (Code d : *s2) {
        if (d >= B.order()) fail(ErrorKind::BadParams, "S_2 element outside F_{q^{tl}}");
        c2.push_back(upper.coords(d));
        for (Code c : lower.basis()) rows.push_back(Vec{0, B.mul(upper.up(c), d)});
    }
    if (Subspace(upper.base(), prm.l, c2).dim() != s2->size() || s2->size() * prm.t != std::size_t{prm.g} * prm.e)
        fail(ErrorKind::BadParams, "S_2 must have F_q-dimension ge");
    return {prm, lower, upper, *s1, *s2, make_system(ext, 2, rows)};
}

inline QSystem counterexample_system(const CounterexampleParams& prm) { return counterexample(prm).system; }

/// The [e+ge, 2] code whose generator columns are the basis of U.
inline VectorCode counterexample_code(const CounterexampleParams& prm) { return code_of_system(counterexample_system(prm)); }

struct Scrambled {
    MatrixCode code;
    Matrix X, Y;
};

/// X C Y for seeded invertible X and Y.
inline Scrambled random_equivalence(const MatrixCode& C, std::uint64_t seed) {
    Rng rng(seed);
    Matrix X = rng.invertible(C.field(), C.rows()), Y = rng.invertible(C.field(), C.cols());
    std::vector<Matrix> gens;
    for (const Matrix& A : C.basis()) gens.push_back(X * A * Y);
    return {MatrixCode(C.field(), C.rows(), C.cols(), gens), std::move(X), std::move(Y)};
}

/// G[i][j] = b_j^{q^i} on the first n basis elements.
inline VectorCode gabidulin_like(std::size_t n, std::size_t k, const ExtPtr& ext) {
    if (k == 0 || k > n || n > ext->m()) fail(ErrorKind::BadParams, "need 1 <= k <= n <= m");
    Matrix G(ext->big(), k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) G(i, j) = ext->frob(ext->basis()[j], static_cast<std::uint32_t>(i));
    return VectorCode(ext, G);
}

}  // namespace rankdiv
