#pragma once

#include <map>
#include <set>
#include <vector>

#include <rankdiv/codes.hpp>
#include <rankdiv/error.hpp>

namespace testsupport {

using namespace rankdiv;

inline ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::ParseError;
}

/// dim over F_q of the F_q-span of the entries of v, by building the span as a set.
inline std::size_t naive_weight(const Vec& v, const Extension& ext) {
    const Field& B = ext.big();
    std::set<Code> span{0};
    for (Code x : v) {
        std::set<Code> next;
        for (Code s : span)
            for (Code c = 0; c < ext.base().order(); ++c) next.insert(B.add(s, B.mul(ext.up(c), x)));
        span = std::move(next);
    }
    std::size_t w = 0;
    for (std::size_t n = span.size(); n > 1; n /= ext.base().order()) ++w;
    return w;
}

/// All F_q-combinations of the generators, in odometer order.
inline std::vector<Matrix> naive_members(const Field& f, std::size_t r, std::size_t c, const std::vector<Matrix>& gens) {
    std::vector<Matrix> out{Matrix(f, r, c)};
    for (const Matrix& g : gens) {
        std::vector<Matrix> next;
        for (const Matrix& a : out)
            for (Code s = 0; s < f.order(); ++s) next.push_back(a + g.scaled(s));
        out = std::move(next);
    }
    return out;
}

/// Weight counts over the distinct members of the F_q-span of gens.
inline std::map<std::size_t, std::uint64_t> naive_spectrum(const MatrixCode& C) {
    std::set<std::vector<Code>> seen;
    std::map<std::size_t, std::uint64_t> counts;
    for (const Matrix& a : naive_members(C.field(), C.rows(), C.cols(), C.basis()))
        if (seen.insert(a.entries()).second) ++counts[rank(a)];
    return counts;
}

}  // namespace testsupport
