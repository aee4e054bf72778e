#pragma once

// Batch checks of the direction, point-set, weight-dual and S_1 x S_2 statements.

#include <map>

#include "constructions.hpp"
#include "qsystem.hpp"
#include "random.hpp"
#include "textio.hpp"

namespace rankdiv {

struct Tally {
    std::uint64_t instances = 0, passed = 0;
    std::map<std::string, std::uint64_t> counts;
    std::vector<std::string> failures;  // first few only

    bool ok() const { return instances == passed; }
    void record(bool pass, const std::string& what) {
        ++instances;
        if (pass) ++passed;
        else if (failures.size() < 10) failures.push_back(what);
    }
};

namespace detail {

inline void tally_direction(Tally& t, const std::vector<Code>& f, const Field& F, const std::string& label) {
    try {
        const DirectionReport r = verify_direction_theorem(f, F);
        ++t.counts["branch " + std::to_string(r.branch)];
        bool ok = true;
        if (r.s > 2) ok = r.subfield_linear.has_value();
        t.record(ok, label + ": s > 2 without subfield linearity");
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::TheoremViolation) throw;
        t.record(false, label + ": " + e.what());
    }
}

}  // namespace detail

/// Random function tables F -> F.
inline Tally check_directions_random(const Field& F, std::uint64_t trials, std::uint64_t seed) {
    Tally t;
    Rng rng(seed);
    std::vector<Code> f(F.order());
    for (std::uint64_t i = 0; i < trials; ++i) {
        for (auto& y : f) y = rng.element(F);
        detail::tally_direction(t, f, F, "table " + std::to_string(i));
    }
    return t;
}

/// Every q-polynomial over F_{q^m}, as a function table.
inline Tally check_directions_qpolys(const ExtPtr& ext) {
    Tally t;
    const Field& F = ext->big();
    const std::uint32_t m = ext->m();
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        if (total > (std::uint64_t{1} << 24) / F.order()) fail(ErrorKind::TooLarge, "too many q-polynomials to enumerate");
        total *= F.order();
    }
    std::vector<Code> c(m), table(F.order());
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t r = idx;
        for (auto& x : c) x = static_cast<Code>(r % F.order()), r /= F.order();
        const LinPoly g(ext, c);
        for (Code x = 0; x < F.order(); ++x) table[x] = g(x);
        detail::tally_direction(t, table, F, format_poly(g));
    }
    return t;
}

/// Graphs of random functions F^{n-1} -> F in AG(n, F).
inline Tally check_point_sets_random(const Field& F, std::size_t n, std::uint64_t trials, std::uint64_t seed) {
    if (n < 3) fail(ErrorKind::BadParams, "point-set check needs n >= 3");
    Tally t;
    Rng rng(seed);
    std::uint64_t pts = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) pts *= F.order();
    for (std::uint64_t i = 0; i < trials; ++i) {
        std::vector<Vec> S;
        for (std::uint64_t x = 0; x < pts; ++x) {
            Vec v(n);
            std::uint64_t r = x;
            for (std::size_t j = 0; j + 1 < n; ++j) v[j] = static_cast<Code>(r % F.order()), r /= F.order();
            v[n - 1] = rng.element(F);
            S.push_back(v);
        }
        try {
            const PointSetReport r = verify_point_set_theorem(S, F);
            ++t.counts[r.hypothesis_met ? "hypothesis met" : "hypothesis not met"];
            t.record(true, "");
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::TheoremViolation) throw;
            t.record(false, "set " + std::to_string(i) + ": " + e.what());
        }
    }
    return t;
}

/// Random U (over F_q) and W (over F_{q^m}) in F_{q^m}^k.
inline Tally check_weight_dual_random(const Extension& ext, std::size_t k, std::uint64_t trials, std::uint64_t seed) {
    Tally t;
    Rng rng(seed);
    const std::size_t km = k * ext.m();
    for (std::uint64_t i = 0; i < trials; ++i) {
        const Subspace U = rng.subspace(ext.base(), km, rng.below(km + 1));
        const Subspace W = rng.subspace(ext.big(), k, rng.below(k + 1));
        const WeightDualCheck r = check_weight_dual(U, W, ext);
        t.record(r.holds(), "pair " + std::to_string(i) + ": " + std::to_string(r.lhs) + " != " + std::to_string(r.rhs));
    }
    return t;
}

/// Intersection dimensions of U = S_1 x S_2 with every point of PG(1, q^{tl}).
inline Tally check_counterexample_pattern(const CounterexampleParams& prm) {
    Tally t;
    const QSystem S = counterexample_system(prm);
    std::uint64_t sum = 0, full = 1;
    for (std::size_t i = 0; i < S.n(); ++i) full *= prm.q;
    for (auto& [P, d] : intersection_pattern(S)) {
        ++t.counts["dim " + std::to_string(d)];
        std::uint64_t qd = 1;
        for (std::size_t i = 0; i < d; ++i) qd *= prm.q;
        sum += qd - 1;
        t.record(d == 0 || d == prm.e || d == std::size_t{prm.g} * prm.e, "point with intersection dimension " + std::to_string(d));
    }
    t.record(sum == full - 1, "point counts sum to " + std::to_string(sum) + ", expected " + std::to_string(full - 1));
    return t;
}

}  // namespace rankdiv
