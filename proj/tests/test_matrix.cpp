#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include <rankdiv/matrix.hpp>
#include <rankdiv/tower.hpp>

using namespace rankdiv;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::ParseError;
}

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<Code>(rng() % f.order());
    return m;
}

// Rank as log_q of the size of the row space, by enumerating all combinations.
std::size_t brute_rank(const Matrix& m) {
    const Field& f = m.field();
    std::set<Vec> span;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) total *= f.order();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Vec v(m.cols(), 0);
        std::uint64_t t = idx;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const Code c = static_cast<Code>(t % f.order());
            t /= f.order();
            for (std::size_t j = 0; j < m.cols(); ++j) v[j] = f.add(v[j], f.mul(c, m(i, j)));
        }
        span.insert(v);
    }
    std::size_t r = 0;
    for (std::size_t s = span.size(); s > 1; s /= f.order()) ++r;
    return r;
}

}  // namespace

TEST(Matrix, RankExamples) {
    Field f2 = default_field(2, 1);
    EXPECT_EQ(rank(Matrix::identity(f2, 3)), 3u);
    EXPECT_EQ(rank(Matrix(f2, 3, 4)), 0u);
    EXPECT_EQ(rank(Matrix(f2, 2, 2, {0, 1, 1, 1})), 2u);
}

TEST(Matrix, KernelExamples) {
    Field f2 = default_field(2, 1);
    EXPECT_EQ(kernel(Matrix::identity(f2, 3)).dim(), 0u);
    EXPECT_EQ(kernel(Matrix(f2, 2, 3)), Subspace::full(f2, 3));
    Subspace k = kernel(Matrix(f2, 2, 2, {1, 1, 0, 0}));
    EXPECT_EQ(k, Subspace(f2, 2, {{1, 1}}));
}

TEST(Matrix, IntersectExamples) {
    Field f2 = default_field(2, 1);
    Subspace a(f2, 2, {{1, 0}, {0, 1}}), b(f2, 2, {{1, 1}});
    EXPECT_EQ(a.intersect(a), a);
    EXPECT_EQ(a.intersect(Subspace(f2, 2)).dim(), 0u);
    EXPECT_EQ(a.intersect(b), b);
    EXPECT_EQ(kind_of([&] { a.intersect(Subspace(f2, 3)); }), ErrorKind::AmbientMismatch);
}

TEST(Matrix, RestrictScalarsExamples) {
    Extension ext = make_extension(2, 1, 2);
    Subspace line(ext.big(), 2, {{1, 2}});
    Subspace r = restrict_scalars(line, ext);
    EXPECT_EQ(r.dim(), 2u);
    EXPECT_EQ(r.ambient(), 4u);
    EXPECT_EQ(r, Subspace(ext.base(), 4, {{1, 0, 0, 1}, {0, 1, 1, 1}}));
    EXPECT_EQ(restrict_scalars(Subspace(ext.big(), 2), ext).dim(), 0u);
}

TEST(Matrix, RankNullityExhaustive) {
    for (std::uint32_t p : {2u, 3u})
        for (std::size_t n : {2u, 3u}) {
            Field f = default_field(p, 1);
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < n * n; ++i) total *= p;
            for (std::uint64_t idx = 0; idx < total; ++idx) {
                Matrix m(f, n, n);
                std::uint64_t t = idx;
                for (std::size_t i = 0; i < n * n; ++i) {
                    m(i / n, i % n) = static_cast<Code>(t % p);
                    t /= p;
                }
                const std::size_t r = rank(m);
                const Subspace k = kernel(m);
                ASSERT_EQ(r + k.dim(), n);
                ASSERT_EQ(r, brute_rank(m));
                ASSERT_EQ(r, rank(m.transpose()));
                for (std::size_t i = 0; i < k.dim(); ++i) {
                    const Vec z = m * k.vector(i);
                    ASSERT_TRUE(std::all_of(z.begin(), z.end(), [](Code c) { return c == 0; }));
                }
            }
        }
}

TEST(Matrix, RankInequalitiesRandomized) {
    std::mt19937_64 rng(7);
    for (auto [p, h] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {2, 3}, {3, 2}}) {
        Field f = default_field(p, h);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t r = 1 + rng() % 6, k = 1 + rng() % 6, c = 1 + rng() % 6;
            Matrix a = random_matrix(f, r, k, rng), b = random_matrix(f, k, c, rng);
            if (trial % 3 == 0) b = random_matrix(f, k, 1, rng) * random_matrix(f, 1, c, rng);
            ASSERT_LE(rank(a * b), std::min(rank(a), rank(b)));
            Matrix a2 = random_matrix(f, r, k, rng);
            ASSERT_LE(rank(a + a2), rank(a) + rank(a2));
        }
    }
}

TEST(Matrix, InverseRoundTrip) {
    std::mt19937_64 rng(11);
    Field f = default_field(3, 2);
    int found = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Matrix a = random_matrix(f, 4, 4, rng);
        if (rank(a) < 4) {
            EXPECT_EQ(kind_of([&] { inverse(a); }), ErrorKind::NotInvertible);
            continue;
        }
        ++found;
        EXPECT_EQ(a * inverse(a), Matrix::identity(f, 4));
    }
    EXPECT_GT(found, 50);
}

TEST(Subspace, CanonicalAndGrassmann) {
    std::mt19937_64 rng(3);
    Field f = default_field(2, 1);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        Subspace a(random_matrix(f, rng() % (n + 1), n, rng));
        Subspace b(random_matrix(f, rng() % (n + 1), n, rng));
        ASSERT_EQ(a.dim() + b.dim(), a.sum(b).dim() + a.intersect(b).dim());
        ASSERT_TRUE(a.contains(a.intersect(b)));
        ASSERT_TRUE(b.contains(a.intersect(b)));
        // a different spanning set gives bit-identical bases
        Matrix g(f, a.dim(), n);
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j)
                if (j <= i)
                    for (std::size_t c = 0; c < n; ++c) g(i, c) = f.add(g(i, c), a.basis()(j, c));
        ASSERT_EQ(Subspace(g), a);
        ASSERT_EQ(a.annihilator().annihilator(), a);
    }
}
