#pragma once

// Text formats shared by the CLI and the code files:
//   field     p^h:c0,c1,...,ch     (or p^h for the default modulus)
//   element   c0.c1...c_{h-1}      coordinates in the power basis
//   matrix    rows split by ';', entries by ','
//   q-poly    c*X + c*X^q + c*X^q2 ...   multivariate: X1, X2^q3, ...

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "linpoly.hpp"
#include "matrix.hpp"

namespace rankdiv {

namespace detail {

inline std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            out.push_back(strip(s.substr(start, i - start)));
            start = i + 1;
        }
    return out;
}

inline std::uint64_t parse_uint(std::string_view s, const char* what) {
    s = strip(s);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        fail(ErrorKind::ParseError, std::string("bad ") + what + ": '" + std::string(s) + "'");
    return v;
}

}  // namespace detail

inline Field parse_field(std::string_view spec) {
    spec = detail::strip(spec);
    const auto colon = spec.find(':');
    const std::string_view head = spec.substr(0, colon);
    const auto caret = head.find('^');
    const auto p = static_cast<std::uint32_t>(detail::parse_uint(head.substr(0, caret), "characteristic"));
    const auto h = caret == std::string_view::npos ? 1u : static_cast<std::uint32_t>(detail::parse_uint(head.substr(caret + 1), "degree"));
    if (colon == std::string_view::npos) return default_field(p, h);
    std::vector<std::uint32_t> mod;
    for (auto tok : detail::split(spec.substr(colon + 1), ','))
        mod.push_back(static_cast<std::uint32_t>(detail::parse_uint(tok, "modulus coefficient")));
    if (mod.size() != h + 1) fail(ErrorKind::ParseError, "modulus must have h+1 coefficients");
    return make_field(p, mod);
}

inline std::string format_field(const Field& f) { return f.spec_string(); }

inline Code parse_element(const Field& f, std::string_view s) {
    std::vector<std::uint32_t> digits;
    for (auto tok : detail::split(s, '.')) digits.push_back(static_cast<std::uint32_t>(detail::parse_uint(tok, "coordinate")));
    return f.from_digits(digits);
}

inline std::string format_element(const Field& f, Code c) {
    std::string s;
    for (std::uint32_t i = 0; i < f.degree(); ++i) {
        if (i) s += '.';
        s += std::to_string(f.digit(c, i));
    }
    return s;
}

inline Matrix parse_matrix(const Field& f, std::string_view s) {
    std::vector<Vec> rows;
    for (auto r : detail::split(s, ';')) {
        Vec row;
        for (auto e : detail::split(r, ',')) row.push_back(parse_element(f, e));
        rows.push_back(std::move(row));
    }
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    return Matrix::from_rows(f, rows, cols);
}

inline std::string format_matrix(const Matrix& m) {
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += " ; ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ",";
            s += format_element(m.field(), m(i, j));
        }
    }
    return s;
}

/// Parses a sum of terms c*X^qi (or X_j^qi for multivariate input); a bare coefficient means c*X.
inline MultiLinPoly parse_multi_poly(const ExtPtr& ext, std::string_view s, std::size_t nvars) {
    MultiLinPoly f(ext, nvars);
    const Field& F = ext->big();
    s = detail::strip(s);
    if (s == "0") return f;
    for (auto term : detail::split(s, '+')) {
        if (term.empty()) fail(ErrorKind::ParseError, "empty term");
        Code coeff = 1;
        std::string_view mono = term;
        const auto star = term.find('*');
        if (star != std::string_view::npos) {
            coeff = parse_element(F, term.substr(0, star));
            mono = detail::strip(term.substr(star + 1));
        } else if (term.front() != 'X' && term.front() != 'x') {
            coeff = parse_element(F, term);
            mono = "X";
        }
        if (mono.empty() || (mono.front() != 'X' && mono.front() != 'x')) fail(ErrorKind::ParseError, "expected X in '" + std::string(term) + "'");
        mono.remove_prefix(1);
        const auto caret = mono.find('^');
        const std::string_view var = mono.substr(0, caret);
        std::size_t j = 0;
        if (!var.empty()) j = detail::parse_uint(var, "variable index") - 1;
        else if (nvars != 1) fail(ErrorKind::ParseError, "multivariate terms need X1, X2, ...");
        if (j >= nvars) fail(ErrorKind::ArityMismatch, "variable index out of range in '" + std::string(term) + "'");
        std::uint32_t i = 0;
        if (caret != std::string_view::npos) {
            std::string_view ex = mono.substr(caret + 1);
            if (ex.empty() || (ex.front() != 'q' && ex.front() != 'Q')) fail(ErrorKind::ParseError, "exponent must be q or qN");
            ex.remove_prefix(1);
            if (!ex.empty() && ex.front() == '^') ex.remove_prefix(1);
            i = ex.empty() ? 1 : static_cast<std::uint32_t>(detail::parse_uint(ex, "q-degree"));
        }
        if (i >= ext->m()) fail(ErrorKind::ParseError, "q-degree must be below m");
        LinPoly& part = f.part(j);
        std::vector<Code> c = part.coeffs();
        c[i] = F.add(c[i], coeff);
        part = LinPoly(ext, c);
    }
    return f;
}

inline LinPoly parse_poly(const ExtPtr& ext, std::string_view s) { return parse_multi_poly(ext, s, 1).part(0); }

inline std::string format_poly(const MultiLinPoly& f) {
    std::string s;
    const Field& F = f.field();
    for (std::size_t j = 0; j < f.nvars(); ++j)
        for (std::uint32_t i = 0; i < f.m(); ++i) {
            const Code c = f.coeff(j, i);
            if (!c) continue;
            if (!s.empty()) s += " + ";
            if (c != 1) s += format_element(F, c) + "*";
            s += "X";
            if (f.nvars() > 1) s += std::to_string(j + 1);
            if (i == 1) s += "^q";
            else if (i > 1) s += "^q" + std::to_string(i);
        }
    return s.empty() ? "0" : s;
}

inline std::string format_poly(const LinPoly& f) { return format_poly(MultiLinPoly::from(f)); }

}  // namespace rankdiv
