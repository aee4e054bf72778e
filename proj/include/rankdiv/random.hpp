#pragma once

#include <cstdint>
#include <random>

#include "field.hpp"
#include "matrix.hpp"

namespace rankdiv {

/// Seeded generator that can fork independent, reproducible streams.
class Rng {
   public:
    explicit Rng(std::uint64_t seed = 0) : seed_(seed), eng_(mix(seed)) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next() { return eng_(); }
    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_); }
    Code element(const Field& f) { return static_cast<Code>(below(f.order())); }
    Code nonzero(const Field& f) { return static_cast<Code>(1 + below(f.order() - 1)); }

    /// Stream i of this generator; does not advance it.
    Rng split(std::uint64_t i) const { return Rng(mix(seed_ ^ mix(i + 0x632be59bd9b4e019ULL))); }

    Matrix matrix(const Field& f, std::size_t r, std::size_t c) {
        Matrix m(f, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = element(f);
        return m;
    }
    Matrix invertible(const Field& f, std::size_t n) {
        for (;;) {
            Matrix m = matrix(f, n, n);
            if (rank(m) == n) return m;
        }
    }

    /// Span of dim random vectors; may come out smaller.
    Subspace subspace(const Field& f, std::size_t ambient, std::size_t dim) {
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < dim; ++i) rows.push_back(matrix(f, 1, ambient).row(0));
        return Subspace(f, ambient, rows);
    }

    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return next(); }

   private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace rankdiv
