#pragma once

// Canonical forms for F_{q^m}-linear codes and the decision whether an e-divisible code arises over F_{q^e}.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "codes.hpp"
#include "error.hpp"
#include "linpoly.hpp"
#include "random.hpp"

namespace rankdiv {

inline constexpr std::uint64_t kInvertibleExhaustiveLimit = std::uint64_t{1} << 20;
inline constexpr std::size_t kRandomTries = 1000;

namespace detail {

inline std::optional<std::uint64_t> bounded_power(std::uint64_t base, std::size_t exp, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (r > limit / base) return std::nullopt;
        r *= base;
    }
    return r;
}

inline MultiLinPoly combination(const std::vector<MultiLinPoly>& gens, const std::vector<Code>& c) {
    MultiLinPoly s(gens[0].ext_ptr(), gens[0].nvars());
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (c[i]) s = s + gens[i].scaled(c[i]);
    return s;
}

/// Visits coefficient vectors: unit vectors, seeded random ones, then all of them when within the limit.
template <class Test>
bool search_combinations(std::size_t k, const Field& F, std::uint64_t seed, Test&& test, bool& exhaustive) {
    exhaustive = false;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Code> c(k, 0);
        c[i] = 1;
        if (test(c)) return true;
    }
    Rng rng(seed);
    for (std::size_t t = 0; t < kRandomTries; ++t) {
        std::vector<Code> c(k);
        for (Code& x : c) x = rng.element(F);
        if (test(c)) return true;
    }
    const auto total = bounded_power(F.order(), k, kInvertibleExhaustiveLimit);
    if (!total) return false;
    for (std::uint64_t idx = 1; idx < *total; ++idx) {
        std::vector<Code> c(k);
        std::uint64_t t = idx;
        for (Code& x : c) x = static_cast<Code>(t % F.order()), t /= F.order();
        if (test(c)) return true;
    }
    exhaustive = true;
    return false;
}

}  // namespace detail

struct InvertibleSearch {
    std::optional<LinPoly> element;
    bool exhaustive = false;
};

/// An invertible member of a univariate code.
inline InvertibleSearch find_invertible(const PolyCode& C, std::uint64_t seed = 0) {
    if (C.nvars() != 1) fail(ErrorKind::NotSquare, "invertible elements need a univariate code");
    InvertibleSearch res;
    if (C.dim() == 0) {
        res.exhaustive = true;
        return res;
    }
    detail::search_combinations(
        C.dim(), C.ext().big(), seed,
        [&](const std::vector<Code>& c) {
            const LinPoly f = detail::combination(C.gens(), c).part(0);
            if (poly_rank(f) != C.ext().m()) return false;
            res.element = f;
            return true;
        },
        res.exhaustive);
    return res;
}

/// e = m - (second largest weight) for a 2-dimensional univariate code with an invertible member.
inline std::uint32_t second_weight_divisor(const PolyCode& C, std::uint64_t cap = kDefaultMaxEnum) {
    if (C.dim() != 2) fail(ErrorKind::WrongDimension, "code must be 2-dimensional");
    if (!find_invertible(C).element) fail(ErrorKind::NoInvertibleElement, "code has no invertible member");
    const std::uint32_t m = C.ext().m();
    const auto weights = C.spectrum(cap).nonzero_weights();
    std::size_t second = 0;
    for (std::size_t w : weights)
        if (w < m) second = std::max(second, w);
    const auto e = static_cast<std::uint32_t>(m - second);
    if (m % e) fail(ErrorKind::TheoremViolation, "e does not divide m");
    for (std::size_t w : weights)
        if (w % e) fail(ErrorKind::TheoremViolation, "a weight is not divisible by e");
    return e;
}

struct SquareForm {
    PolyCode code;  // C o f_1^{-1} = <x, g_2, ..., g_k>
    LinPoly f1, f1_inv;
};

inline SquareForm canonical_form_square(const PolyCode& C, std::uint64_t seed = 0) {
    const auto inv = find_invertible(C, seed);
    if (!inv.element)
        fail(ErrorKind::NoInvertibleElement, inv.exhaustive ? "code has no invertible member" : "no invertible member found under budget");
    const LinPoly f1 = *inv.element, f1_inv = invert(f1);
    std::vector<LinPoly> gens{LinPoly::identity(C.ext_ptr())};
    for (auto& g : C.gens()) gens.push_back(compose(g.part(0), f1_inv));
    SquareForm out{PolyCode(C.ext_ptr(), gens), f1, f1_inv};
#ifdef RANKDIV_CHECKED
    if (C.dim() * C.ext().big().degree() <= 16 && !(out.code.spectrum() == C.spectrum()))
        fail(ErrorKind::TheoremViolation, "canonical form changed the weight spectrum");
#endif
    return out;
}

struct DisjointKernelBasis {
    std::vector<MultiLinPoly> g;  // g = A f
    Matrix A;
};

namespace detail {

inline Matrix stacked_matrix(const std::vector<MultiLinPoly>& fs) {
    const std::uint32_t m = fs[0].m();
    Matrix out(fs[0].ext().base(), m * fs.size(), m * fs[0].nvars());
    for (std::size_t i = 0; i < fs.size(); ++i) out.set_block(i * m, 0, mto_matrix(fs[i]));
    return out;
}

}  // namespace detail

/// l members of C, l = number of variables, whose kernels meet trivially.
inline DisjointKernelBasis disjoint_kernel_basis(const PolyCode& C, std::uint64_t seed = 0) {
    const std::size_t l = C.nvars(), k = C.dim();
    const std::uint32_t m = C.ext().m();
    if (k == 0 || rank(detail::stacked_matrix(C.gens())) != l * m) fail(ErrorKind::CommonKernelNonzero, "generators share a nonzero kernel vector");
    const Field& F = C.ext().big();
    std::optional<DisjointKernelBasis> found;
    auto test_rows = [&](const std::vector<std::vector<Code>>& rows) {
        std::vector<MultiLinPoly> g;
        for (auto& r : rows) g.push_back(detail::combination(C.gens(), r));
        if (rank(detail::stacked_matrix(g)) != l * m) return false;
        found = DisjointKernelBasis{g, Matrix::from_rows(F, rows, k)};
        return true;
    };
    std::vector<std::vector<Code>> first(l, std::vector<Code>(k, 0));
    for (std::size_t i = 0; i < l && i < k; ++i) first[i][i] = 1;
    if (test_rows(first)) return *found;
    Rng rng(seed);
    for (std::size_t t = 0; t < kRandomTries; ++t) {
        std::vector<std::vector<Code>> rows(l, std::vector<Code>(k));
        for (auto& r : rows)
            for (Code& x : r) x = rng.element(F);
        if (test_rows(rows)) return *found;
    }
    const auto total = detail::bounded_power(F.order(), l * k, kInvertibleExhaustiveLimit);
    if (!total) fail(ErrorKind::SearchBudgetExceeded, "no disjoint-kernel basis found under budget");
    for (std::uint64_t idx = 1; idx < *total; ++idx) {
        std::vector<std::vector<Code>> rows(l, std::vector<Code>(k));
        std::uint64_t t = idx;
        for (auto& r : rows)
            for (Code& x : r) x = static_cast<Code>(t % F.order()), t /= F.order();
        if (test_rows(rows)) return *found;
    }
    fail(ErrorKind::TheoremViolation, "exhaustive search found no disjoint-kernel basis");
}

struct RectForm {
    PolyCode code;  // C o phi^{-1} = <x_1, ..., x_l, g_{l+1}, ..., g_k>
    std::vector<MultiLinPoly> phi, phi_inv;
};

inline RectForm canonical_form_rect(const PolyCode& C, std::uint64_t seed = 0) {
    const auto basis = disjoint_kernel_basis(C, seed);
    const std::size_t l = C.nvars();
    auto phi_inv = mtuple_invert(basis.g);
    std::vector<MultiLinPoly> gens;
    for (std::size_t j = 0; j < l; ++j) gens.push_back(MultiLinPoly::variable(C.ext_ptr(), l, j));
    for (auto& f : C.gens()) gens.push_back(mcompose(f, phi_inv));
    return {PolyCode(C.ext_ptr(), l, gens), basis.g, std::move(phi_inv)};
}

enum class Verdict { Yes, No, Undecided };

inline const char* to_string(Verdict v) { return v == Verdict::Yes ? "true" : v == Verdict::No ? "false" : "undecided"; }

struct ArisesWitness {
    std::optional<Matrix> H;                // matrix input: the F_{q^m}-action was conjugated by H
    std::vector<MultiLinPoly> transform;    // f_1, or the tuple phi
    PolyCode canonical;
    Extension sub;                          // F_{q^e} / F_q used by Em
    MatrixCode small;                       // code over F_{q^e}
    Matrix X, Y;                            // input = X Em(small) Y
};

struct RecognitionResult {
    Verdict verdict = Verdict::Undecided;
    std::uint32_t e = 1;
    std::string reason;
    std::optional<std::size_t> divisibility_index;
    std::optional<ArisesWitness> witness;
    bool arises() const { return verdict == Verdict::Yes; }
};

struct RecognizeOptions {
    std::uint64_t seed = 0;
    std::uint64_t max_enum = kDefaultMaxEnum;
};

namespace detail {

/// Composite F_q-basis d_i c_r of F_{q^m} (index i*e + r) with the two halves of the tower.
struct SplitBasis {
    Extension lower, upper, composite;
};

inline SplitBasis split_basis(const Extension& ext, std::uint32_t e) {
    auto [lower, upper] = split_extension(ext, e);
    std::vector<Code> basis;
    for (Code d : upper.basis())
        for (Code c : lower.basis()) basis.push_back(ext.big().mul(d, upper.up(c)));
    return {lower, upper, ext.with_basis(basis)};
}

/// Matrix over F_{q^e} of an F_{q^e}-linear g, column t*(m/e) + j = image of d_j in slot t.
inline Matrix small_matrix(const MultiLinPoly& g, const Extension& upper) {
    const std::uint32_t me = upper.m();
    Matrix out(upper.base(), me, me * g.nvars());
    for (std::size_t t = 0; t < g.nvars(); ++t)
        for (std::uint32_t j = 0; j < me; ++j) {
            Vec a(g.nvars(), 0);
            a[t] = upper.basis()[j];
            const auto c = upper.coords(g(a));
            for (std::uint32_t i = 0; i < me; ++i) out(i, t * me + j) = c[i];
        }
    return out;
}

inline Matrix block_diagonal(const Matrix& P, std::size_t copies) {
    Matrix out(P.field(), P.rows() * copies, P.cols() * copies);
    for (std::size_t i = 0; i < copies; ++i) out.set_block(i * P.rows(), i * P.cols(), P);
    return out;
}

inline MatrixCode transform_code(const MatrixCode& C, const Matrix& X, const Matrix& Y) {
    std::vector<Matrix> gens;
    for (auto& A : C.basis()) gens.push_back(X * A * Y);
    return MatrixCode(C.field(), X.rows(), Y.cols(), gens);
}

/// input_matrix = H * matrix_view(poly), canonical = poly o T.
inline RecognitionResult decide(const PolyCode& poly, const MatrixCode& input_matrix, const std::optional<Matrix>& H, std::uint32_t e,
                                const RecognizeOptions& opt) {
    RecognitionResult res;
    res.e = e;
    const Extension& ext = poly.ext();
    const std::uint32_t m = ext.m();
    const std::size_t l = poly.nvars();
    try {
        res.divisibility_index = divisibility_index(input_matrix.spectrum(opt.max_enum));
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::TooLarge && err.kind() != ErrorKind::ZeroCode) throw;
    }
    if (m % e) {
        res.verdict = Verdict::No;
        res.reason = "e does not divide m";
        return res;
    }
    PolyCode canonical;
    std::vector<MultiLinPoly> transform;
    Matrix T;
    if (l == 1) {
        const auto inv = find_invertible(poly, opt.seed);
        if (!inv.element) {
            if (inv.exhaustive) fail(ErrorKind::NoInvertibleElement, "code has no invertible member");
            res.reason = "no invertible element found under budget";
            return res;
        }
        const LinPoly f1_inv = invert(*inv.element);
        std::vector<LinPoly> gens{LinPoly::identity(poly.ext_ptr())};
        for (auto& g : poly.gens()) gens.push_back(compose(g.part(0), f1_inv));
        canonical = PolyCode(poly.ext_ptr(), gens);
        transform = {MultiLinPoly::from(*inv.element)};
        T = to_matrix(f1_inv);
    } else {
        auto form = canonical_form_rect(poly, opt.seed);
        canonical = std::move(form.code);
        T = tuple_matrix(form.phi_inv);
        transform = std::move(form.phi);
    }
    for (std::size_t i = 0; i < canonical.dim(); ++i)
        if (!is_subfield_linear(canonical.gen(i), e)) {
            if (l > 1 && ext.q() == 2) {
                if (res.divisibility_index && *res.divisibility_index % e) {
                    res.verdict = Verdict::No;
                    res.reason = "code is not e-divisible";
                } else {
                    res.reason = "theorem hypothesis q>2 not met";
                }
                return res;
            }
            res.verdict = Verdict::No;
            res.reason = "non-subfield-linear generator";
            return res;
        }
    // witness: the F_{q^e}-code read off the canonical generators, re-embedded and mapped back to the input
    const SplitBasis sb = split_basis(ext, e);
    std::vector<Matrix> small;
    for (auto& g : canonical.gens())
        for (Code b : sb.composite.basis()) small.push_back(small_matrix(g.scaled(b), sb.upper));
    const MatrixCode small_code(sb.upper.base(), m / e, l * m / e, small);
    Matrix P(ext.base(), m, m);
    for (std::uint32_t c = 0; c < m; ++c) {
        const auto col = ext.coords(sb.composite.basis()[c]);
        for (std::uint32_t r = 0; r < m; ++r) P(r, c) = col[r];
    }
    const Matrix X = H ? *H * P : P;
    const Matrix Y = inverse(T * block_diagonal(P, l));
    const MatrixCode back = transform_code(em_embed(small_code, sb.lower), X, Y);
    if (!(back == input_matrix)) fail(ErrorKind::TheoremViolation, "re-embedded witness does not reproduce the input");
    res.verdict = Verdict::Yes;
    res.witness = ArisesWitness{H, std::move(transform), std::move(canonical), sb.lower, small_code, X, Y};
    return res;
}

template <class CodeT>
RecognitionResult indivisible(const CodeT& C, std::uint32_t e, const RecognizeOptions& opt) {
    RecognitionResult res;
    res.e = e;
    res.verdict = Verdict::No;
    res.reason = "e does not divide m";
    try {
        res.divisibility_index = divisibility_index(C.spectrum(opt.max_enum));
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::TooLarge && err.kind() != ErrorKind::ZeroCode) throw;
    }
    return res;
}

}  // namespace detail

inline RecognitionResult arises_over(const PolyCode& C, std::uint32_t e, const RecognizeOptions& opt = {}) {
    if (e == 0) fail(ErrorKind::BadParams, "e must be positive");
    return detail::decide(C, matrix_view(C), std::nullopt, e, opt);
}

inline RecognitionResult arises_over(const VectorCode& C, std::uint32_t e, const RecognizeOptions& opt = {}) {
    if (e == 0) fail(ErrorKind::BadParams, "e must be positive");
    if (C.ext().m() % e) return detail::indivisible(C, e, opt);
    return detail::decide(poly_view(C), matrix_view(C), std::nullopt, e, opt);
}

/// Matrix codes are first checked for F_{q^m}-linearity, m = number of rows.
inline RecognitionResult arises_over(const MatrixCode& C, std::uint32_t e, const RecognizeOptions& opt = {}) {
    if (e == 0) fail(ErrorKind::BadParams, "e must be positive");
    const std::size_t m = C.rows();
    if (C.cols() % m) fail(ErrorKind::DimensionMismatch, "columns must be a multiple of rows");
    if (m % e) return detail::indivisible(C, e, opt);
    const Field& f = C.field();
    const ExtPtr ext = share(Extension(default_field(f.characteristic(), f.degree() * static_cast<std::uint32_t>(m)), f));
    const auto hit = find_field_in_idealizer(C, m, opt.seed);
    if (!hit.element)
        fail(ErrorKind::NotFqmLinear, hit.exhaustive ? "idealizer contains no copy of F_{q^m}" : "no copy of F_{q^m} found in the idealizer under budget");
    const Normalized N = normalize_linearity(C, *hit.element, *ext);
    const PolyCode poly = poly_view(vector_view(N.code, ext));
    return detail::decide(poly, C, N.H, e, opt);
}

/// The canonical form as F_q-matrices in the basis d_i c_r of F_{q^m}; equals Em of the witness code.
inline MatrixCode canonical_in_subfield_basis(const ArisesWitness& w) {
    const Extension& ext = w.canonical.ext();
    const std::uint32_t m = ext.m();
    const detail::SplitBasis sb = detail::split_basis(ext, w.sub.m());
    Matrix P(ext.base(), m, m);
    for (std::uint32_t c = 0; c < m; ++c) {
        const auto col = ext.coords(sb.composite.basis()[c]);
        for (std::uint32_t r = 0; r < m; ++r) P(r, c) = col[r];
    }
    return detail::transform_code(matrix_view(w.canonical), inverse(P), detail::block_diagonal(P, w.canonical.nvars()));
}

/// One result per divisor e > 1 of the divisibility index.
template <class CodeT>
std::vector<RecognitionResult> arises_over_all(const CodeT& C, const RecognizeOptions& opt = {}) {
    const std::size_t d = divisibility_index(C.spectrum(opt.max_enum));
    std::vector<RecognitionResult> out;
    for (std::uint32_t e = 2; e <= d; ++e)
        if (d % e == 0) out.push_back(arises_over(C, e, opt));
    return out;
}

}  // namespace rankdiv
