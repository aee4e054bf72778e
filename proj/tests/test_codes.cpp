#include <gtest/gtest.h>

#include <random>

#include <rankdiv/codes.hpp>
#include <rankdiv/random.hpp>
#include <rankdiv/textio.hpp>

#include "support.hpp"

using namespace rankdiv;
using testsupport::kind_of;

namespace {

MatrixCode alternating3() {
    const Field f = default_field(2, 1);
    std::vector<Matrix> gens;
    for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
        Matrix a(f, 3, 3);
        a(i, j) = a(j, i) = 1;
        gens.push_back(a);
    }
    return MatrixCode(f, 3, 3, gens);
}

Vec random_vec(const Field& f, std::size_t n, Rng& rng) {
    Vec v(n);
    for (Code& c : v) c = rng.element(f);
    return v;
}

}  // namespace

TEST(Gamma, Examples) {
    const Extension ext = make_extension(2, 1, 2);
    EXPECT_EQ(gamma({1, 2}, ext), Matrix::identity(ext.base(), 2));
    EXPECT_TRUE(gamma({0, 0, 0}, ext).is_zero());
    EXPECT_EQ(rank(gamma({3, 3, 3}, ext)), 1u);
    EXPECT_EQ(gamma_inv(gamma({3, 1, 2}, ext), ext), (Vec{3, 1, 2}));
}

TEST(Gamma, IsometryExhaustive) {
    for (auto [p, m] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
        const Extension ext = make_extension(p, 1, m);
        const Code N = ext.big().order();
        for (Code a = 0; a < N; ++a)
            for (Code b = 0; b < N; ++b) {
                const Vec v{a, b};
                const std::size_t w = testsupport::naive_weight(v, ext);
                ASSERT_EQ(rank(gamma(v, ext)), w);
                ASSERT_EQ(rank_weight(v, ext), w);
                ASSERT_EQ(gamma_inv(gamma(v, ext), ext), v);
            }
    }
}

TEST(Gamma, IsometryNonPrimeBase) {
    const Extension ext = make_extension(2, 2, 2);
    Rng rng(3);
    for (int t = 0; t < 300; ++t) {
        const Vec v = random_vec(ext.big(), 3, rng);
        ASSERT_EQ(rank_weight(v, ext), testsupport::naive_weight(v, ext));
        ASSERT_EQ(rank(gamma(v, ext)), rank_weight(v, ext));
    }
}

TEST(Ev, Examples) {
    const ExtPtr ext = share(make_extension(2, 1, 2));
    const PolyCode C(ext, {parse_poly(ext, "X"), parse_poly(ext, "X^q")});
    const VectorCode V = ev_basis(C);
    EXPECT_EQ(V.generator(), Matrix::from_rows(ext->big(), {{1, 2}, {1, 3}}, 2));
    const PolyCode one(ext, {parse_poly(ext, "X")});
    EXPECT_EQ(one.spectrum(), (WeightSpectrum{{{0, 1}, {2, 3}}}));
    EXPECT_EQ(PolyCode(ext, {parse_poly(ext, "0")}).dim(), 0u);
    EXPECT_EQ(kind_of([&] { ev_basis(one, {{1}, {1}}); }), ErrorKind::NotABasis);
}

TEST(Ev, PreservesRank) {
    Rng rng(11);
    for (std::uint32_t m = 2; m <= 4; ++m) {
        const ExtPtr ext = share(make_extension(2, 1, m));
        for (int t = 0; t < 250; ++t) {
            std::vector<Code> c(m);
            for (Code& x : c) x = rng.element(ext->big());
            const LinPoly f(ext, c);
            const PolyCode C(ext, {f});
            if (!C.dim()) continue;
            const VectorCode V = ev_basis(C);
            ASSERT_EQ(rank_weight(V.generator().row(0), *ext), poly_rank(f));
        }
    }
}

TEST(Ev, ViewsAgree) {
    const ExtPtr ext = share(make_extension(3, 1, 2));
    const PolyCode C(ext, 2, {parse_multi_poly(ext, "X1 + X2^q", 2)});
    const VectorCode V = ev_basis(C);
    EXPECT_EQ(poly_view(V), C);
    const MatrixCode M = matrix_view(C);
    EXPECT_EQ(M, matrix_view(V));
    EXPECT_EQ(testsupport::naive_spectrum(M), V.spectrum().counts);
}

TEST(Spectrum, Examples) {
    const Field f2 = default_field(2, 1);
    EXPECT_EQ(MatrixCode(f2, 2, 2).spectrum(), (WeightSpectrum{{{0, 1}}}));
    EXPECT_EQ(alternating3().spectrum(), (WeightSpectrum{{{0, 1}, {2, 7}}}));
    EXPECT_EQ(divisibility_index(alternating3()), 2u);
    EXPECT_EQ(divisibility_index(MatrixCode(f2, 2, 2, Subspace::full(f2, 4))), 1u);
    EXPECT_EQ(kind_of([&] { divisibility_index(MatrixCode(f2, 2, 2)); }), ErrorKind::ZeroCode);
    EXPECT_EQ(kind_of([&] { MatrixCode(f2, 5, 5, Subspace::full(f2, 25)).spectrum(1 << 20); }), ErrorKind::TooLarge);
}

TEST(Spectrum, MatchesNaiveEnumeration) {
    Rng rng(5);
    for (auto [p, h] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
        const Field f = default_field(p, h);
        for (int t = 0; t < 20; ++t) {
            const std::size_t m = 2 + rng.below(2), n = 2 + rng.below(2), k = 1 + rng.below(p == 2 && h == 1 ? 4 : 2);
            std::vector<Matrix> gens;
            for (std::size_t i = 0; i < k; ++i) gens.push_back(rng.matrix(f, m, n));
            const MatrixCode C(f, m, n, gens);
            EXPECT_EQ(C.spectrum().counts, testsupport::naive_spectrum(C));
            EXPECT_EQ(C.spectrum().total(), [&] {
                std::uint64_t s = 1;
                for (std::size_t i = 0; i < C.dim(); ++i) s *= f.order();
                return s;
            }());
        }
    }
}

TEST(Spectrum, VectorViewMatchesMatrixView) {
    Rng rng(8);
    const ExtPtr ext = share(make_extension(2, 1, 3));
    for (int t = 0; t < 10; ++t) {
        const VectorCode V(ext, rng.matrix(ext->big(), 2, 3));
        const MatrixCode M = matrix_view(V);
        EXPECT_EQ(M.dim(), V.dim() * 3);
        EXPECT_EQ(testsupport::naive_spectrum(M), V.spectrum().counts);
    }
}

TEST(Spectrum, CacheIsShared) {
    const ExtPtr ext = share(make_extension(2, 1, 3));
    const VectorCode V(ext, Matrix::from_rows(ext->big(), {{1, 2, 4}}, 3));
    const MatrixCode M = matrix_view(V);
    EXPECT_EQ(M.cache(), V.cache());
    const auto s = M.spectrum();
    ASSERT_TRUE(V.cache()->value.has_value());
    EXPECT_EQ(*V.cache()->value, s);
}

TEST(Em, Examples) {
    const Extension ext = make_extension(2, 1, 2);
    const MatrixCode C(ext.big(), 1, 1, std::vector<Matrix>{Matrix::from_rows(ext.big(), {{2}}, 1)});
    const MatrixCode E = em_embed(C, ext);
    const Field f2 = ext.base();
    EXPECT_EQ(E, MatrixCode(f2, 2, 2, {Matrix::from_rows(f2, {{0, 1}, {1, 1}}, 2), Matrix::identity(f2, 2)}));
    EXPECT_EQ(E.spectrum(), (WeightSpectrum{{{0, 1}, {2, 3}}}));
    EXPECT_EQ(em_embed(MatrixCode(ext.big(), 1, 1), ext).dim(), 0u);
    EXPECT_EQ(kind_of([&] { em_embed(MatrixCode(f2, 1, 1), ext); }), ErrorKind::FieldMismatch);
}

TEST(Em, MultipliesRanksExhaustive) {
    for (auto [p, h, e, r, c] : {std::tuple{2u, 1u, 2u, 2u, 2u}, {2u, 1u, 3u, 1u, 3u}, {3u, 1u, 2u, 2u, 1u}, {2u, 1u, 4u, 1u, 2u}}) {
        const Extension ext = make_extension(p, h, e);
        const Field& F = ext.big();
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < r * c; ++i) total *= F.order();
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            Matrix A(F, r, c);
            std::uint64_t t = idx;
            for (std::size_t i = 0; i < r * c; ++i, t /= F.order()) A(i / c, i % c) = static_cast<Code>(t % F.order());
            ASSERT_EQ(rank(em_matrix(A, ext, ext)), e * rank(A));
        }
    }
}

TEST(Em, CodesAreDivisible) {
    Rng rng(21);
    const Extension ext = make_extension(2, 1, 2);
    const Extension alt = ext.with_basis({3, 2});
    for (int t = 0; t < 10; ++t) {
        const MatrixCode C(ext.big(), 2, 2, {rng.matrix(ext.big(), 2, 2), rng.matrix(ext.big(), 2, 2)});
        for (const Extension* cols : {&ext, &alt}) {
            const MatrixCode E = em_embed(C, ext, *cols);
            EXPECT_EQ(E.dim(), 2 * C.dim());
            std::map<std::size_t, std::uint64_t> doubled;
            for (auto [w, n] : C.spectrum().counts) doubled[2 * w] = n;
            EXPECT_EQ(E.spectrum().counts, doubled);
            EXPECT_EQ(divisibility_index(E) % 2, 0u);
        }
    }
}

TEST(Nondegenerate, Examples) {
    const ExtPtr ext = share(make_extension(2, 1, 2));
    const Field& F = ext->big();
    EXPECT_TRUE(is_nondegenerate(VectorCode(ext, Matrix::identity(F, 2))));
    EXPECT_FALSE(is_nondegenerate(VectorCode(ext, Matrix::from_rows(F, {{1, 1}}, 2))));
    EXPECT_FALSE(is_nondegenerate(VectorCode(ext, Matrix::from_rows(F, {{1, 2, 3}}, 3))));
    EXPECT_TRUE(is_nondegenerate(VectorCode(ext, Matrix::from_rows(F, {{1, 2}}, 2))));
}

TEST(CodeEqual, CanonicalSpan) {
    const Field f = default_field(3, 1);
    const Matrix a = Matrix::from_rows(f, {{1, 2}, {0, 1}}, 2), b = Matrix::from_rows(f, {{0, 1}, {1, 1}}, 2);
    EXPECT_TRUE(code_equal(MatrixCode(f, 2, 2, {a, b}), MatrixCode(f, 2, 2, {a + b, a.scaled(2), b})));
    EXPECT_FALSE(code_equal(MatrixCode(f, 2, 2, std::vector<Matrix>{a}), MatrixCode(f, 2, 2, std::vector<Matrix>{b})));
}
