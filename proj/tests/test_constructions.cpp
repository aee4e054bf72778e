#include <gtest/gtest.h>

#include <rankdiv/analysis.hpp>
#include <rankdiv/constructions.hpp>
#include <rankdiv/recognize.hpp>

#include "support.hpp"

using namespace rankdiv;
using testsupport::kind_of;

namespace {

WeightSpectrum spectrum_of(std::initializer_list<std::pair<const std::size_t, std::uint64_t>> c) {
    WeightSpectrum s;
    s.counts = c;
    return s;
}

MatrixCode random_code(const Field& f, std::size_t r, std::size_t c, std::size_t k, Rng& rng) {
    std::vector<Matrix> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(rng.matrix(f, r, c));
    return MatrixCode(f, r, c, gens);
}

Subspace span_of(const std::vector<Matrix>& ms, const Field& f, std::size_t size) {
    std::vector<Vec> rows;
    for (auto& X : ms) rows.push_back(X.entries());
    return Subspace(f, size, rows);
}

}  // namespace

TEST(BlockRepetition, Examples) {
    const Field f = default_field(2, 1);
    const MatrixCode I(f, 2, 2, std::vector<Matrix>{Matrix::identity(f, 2)});
    const MatrixCode B = block_repetition(I, 2);
    EXPECT_EQ(B.rows(), 4u);
    EXPECT_EQ(B.spectrum(), spectrum_of({{0, 1}, {4, 1}}));
    EXPECT_EQ(block_repetition(MatrixCode(f, 2, 2), 3).dim(), 0u);
    EXPECT_EQ(kind_of([&] { block_repetition(MatrixCode(f, 2, 3), 2); }), ErrorKind::NotSquare);
}

TEST(BlockRepetition, ScalesSpectrum) {
    Rng rng(5);
    for (auto [p, m, e] : {std::tuple{2u, 2u, 2u}, {3u, 2u, 3u}, {2u, 3u, 2u}}) {
        const Field f = default_field(p, 1);
        for (int t = 0; t < 10; ++t) {
            const MatrixCode C = random_code(f, m, m, 1 + rng.below(3), rng);
            const auto s = testsupport::naive_spectrum(C);
            WeightSpectrum scaled;
            for (auto [w, n] : s) scaled.counts[w * e] = n;
            EXPECT_EQ(block_repetition(C, e).spectrum(), scaled);
        }
    }
}

TEST(BlockRepetition, IdealizerIsDiagonal) {
    Rng rng(7);
    const Field f = default_field(2, 1);
    for (int t = 0; t < 20; ++t) {
        std::vector<Matrix> gens{rng.invertible(f, 2)};
        if (rng.below(2)) gens.push_back(rng.matrix(f, 2, 2));
        const MatrixCode C(f, 2, 2, gens);
        std::vector<Matrix> diag;
        for (auto& A : left_idealizer(C)) {
            Matrix D(f, 4, 4);
            D.set_block(0, 0, A);
            D.set_block(2, 2, A);
            diag.push_back(D);
        }
        EXPECT_EQ(span_of(left_idealizer(block_repetition(C, 2)), f, 16), span_of(diag, f, 16));
    }
}

TEST(Alternating, Examples) {
    const Field f = default_field(2, 1);
    const MatrixCode A2 = alternating_code(2, f);
    EXPECT_EQ(A2.spectrum(), spectrum_of({{0, 1}, {2, 1}}));
    EXPECT_EQ(A2.basis()[0], Matrix::from_rows(f, {{0, 1}, {1, 0}}, 2));
    const MatrixCode A3 = alternating_code(3, f);
    EXPECT_EQ(A3.spectrum(), spectrum_of({{0, 1}, {2, 7}}));
    EXPECT_EQ(arises_over(A3, 2).reason, "e does not divide m");
    EXPECT_EQ(kind_of([&] { alternating_code(1, f); }), ErrorKind::BadParams);
}

TEST(Alternating, EvenRanks) {
    for (std::uint32_t p : {2u, 3u})
        for (std::size_t m = 2; m <= 4; ++m) {
            const Field f = default_field(p, 1);
            const MatrixCode C = alternating_code(m, f);
            EXPECT_EQ(C.dim(), m * (m - 1) / 2);
            for (const Matrix& A : testsupport::naive_members(f, m, m, C.basis())) {
                EXPECT_EQ(A.transpose(), A.scaled(f.neg(1)));
                for (std::size_t i = 0; i < m; ++i) EXPECT_EQ(A(i, i), 0u);
                EXPECT_EQ(rank(A) % 2, 0u);
            }
        }
}

TEST(Counterexample, SystemExamples) {
    const CounterexampleParams prm{2, 3, 3, 2, 3};
    const QSystem S = counterexample_system(prm);
    EXPECT_EQ(S.n(), 8u);
    EXPECT_EQ(S.ext->big().order(), 512u);
    std::uint64_t total = 0;
    std::set<std::size_t> dims;
    const auto pattern = intersection_pattern(S);
    EXPECT_EQ(pattern.size(), 513u);
    for (auto& [P, d] : pattern) {
        dims.insert(d);
        total += (std::uint64_t{1} << d) - 1;
    }
    EXPECT_EQ(dims, (std::set<std::size_t>{0, 2, 6}));
    EXPECT_EQ(total, 255u);
    EXPECT_EQ(kind_of([] { counterexample_system({2, 3, 3, 3, 3}); }), ErrorKind::BadParams);
    EXPECT_EQ(kind_of([] { counterexample_system({2, 3, 1, 2, 1}); }), ErrorKind::BadParams);
    EXPECT_EQ(kind_of([] { counterexample_system({2, 3, 1, 2, 3}); }), ErrorKind::BadParams);
}

TEST(Counterexample, CustomPieces) {
    const CounterexampleParams prm{2, 3, 2, 1, 3};
    const auto ce = counterexample(prm, std::vector<Code>{1});
    EXPECT_EQ(ce.system.n(), 4u);
    EXPECT_EQ(kind_of([&] { counterexample(prm, std::vector<Code>{2}); }), ErrorKind::BadParams);
    EXPECT_EQ(kind_of([&] { counterexample(prm, std::vector<Code>{1, 2}); }), ErrorKind::BadParams);
}

TEST(Counterexample, IntersectionLaw) {
    for (CounterexampleParams prm : {CounterexampleParams{2, 3, 2, 2, 3}, {2, 4, 1, 2, 2}, {3, 2, 2, 1, 2}, {2, 3, 2, 1, 3}, {2, 5, 1, 2, 2}}) {
        if (kind_of([&] { prm.validate(); }) == ErrorKind::BadParams) continue;
        const QSystem S = counterexample_system(prm);
        std::uint64_t total = 0, full = 1;
        for (std::size_t i = 0; i < S.n(); ++i) full *= prm.q;
        for (auto& [P, d] : intersection_pattern(S)) {
            EXPECT_TRUE(d == 0 || d == prm.e || d == prm.g * prm.e) << d;
            std::uint64_t qd = 1;
            for (std::size_t i = 0; i < d; ++i) qd *= prm.q;
            total += qd - 1;
        }
        EXPECT_EQ(total, full - 1);
    }
}

TEST(Counterexample, CodeIsDivisibleButDoesNotArise) {
    const VectorCode C = counterexample_code({2, 3, 3, 2, 3});
    EXPECT_EQ(C.length(), 8u);
    EXPECT_EQ(C.dim(), 2u);
    EXPECT_TRUE(is_nondegenerate(C));
    const WeightSpectrum s = C.spectrum();
    EXPECT_EQ(s.total(), std::uint64_t{1} << 18);
    for (std::size_t w : s.nonzero_weights()) EXPECT_TRUE(w == 2 || w == 6 || w == 8) << w;
    EXPECT_EQ(divisibility_index(s), 2u);
    const auto r = arises_over(C, 2);
    EXPECT_EQ(r.verdict, Verdict::No);
    EXPECT_EQ(r.reason, "e does not divide m");
}

TEST(Counterexample, WeightsFollowPattern) {
    const CounterexampleParams prm{2, 4, 1, 2, 2};
    const VectorCode C = counterexample_code(prm);
    for (std::size_t w : C.spectrum().nonzero_weights()) EXPECT_TRUE(w == 2 || w == 4 || w == 6) << w;
}

TEST(RandomEquivalence, RoundTrip) {
    Rng rng(9);
    const Field f = default_field(3, 1);
    const MatrixCode C = random_code(f, 2, 3, 2, rng);
    const Scrambled s = random_equivalence(C, 42);
    EXPECT_EQ(s.code.spectrum().counts, testsupport::naive_spectrum(C));
    std::vector<Matrix> back;
    for (auto& A : s.code.basis()) back.push_back(inverse(s.X) * A * inverse(s.Y));
    EXPECT_EQ(MatrixCode(f, 2, 3, back), C);
    EXPECT_EQ(random_equivalence(C, 42).X, s.X);
    EXPECT_EQ(random_equivalence(MatrixCode(f, 2, 3), 1).code.dim(), 0u);
}

TEST(GabidulinLike, Examples) {
    const ExtPtr e8 = share(make_extension(2, 1, 3));
    EXPECT_EQ(gabidulin_like(1, 1, e8).spectrum(), spectrum_of({{0, 1}, {1, 7}}));
    EXPECT_EQ(gabidulin_like(3, 1, e8).spectrum(), spectrum_of({{0, 1}, {3, 7}}));
    const ExtPtr e4 = share(make_extension(2, 1, 2));
    const VectorCode G = gabidulin_like(2, 2, e4);
    EXPECT_EQ(G.spectrum().counts, testsupport::naive_spectrum(matrix_view(G)));
    EXPECT_EQ(G.spectrum(), spectrum_of({{0, 1}, {1, 9}, {2, 6}}));
    EXPECT_TRUE(is_nondegenerate(gabidulin_like(3, 2, e8)));
    EXPECT_EQ(kind_of([&] { gabidulin_like(4, 2, e8); }), ErrorKind::BadParams);
    EXPECT_EQ(kind_of([&] { gabidulin_like(2, 3, e8); }), ErrorKind::BadParams);
}
