#pragma once

// Code files and JSON reports.

#include <fstream>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "analysis.hpp"
#include "recognize.hpp"
#include "textio.hpp"

namespace rankdiv {

using json = nlohmann::json;
using AnyCode = std::variant<MatrixCode, VectorCode, PolyCode>;

namespace detail {

inline const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorKind::ParseError, std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::string require_string(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_string()) fail(ErrorKind::ParseError, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

inline bool is_size(const json& v) { return v.is_number_integer() && v.get<std::int64_t>() >= 0; }

inline std::size_t require_size(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!is_size(v)) fail(ErrorKind::ParseError, std::string("field '") + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

inline std::vector<std::string> generator_strings(const json& j) {
    const json& g = require(j, "generators");
    if (!g.is_array()) fail(ErrorKind::ParseError, "'generators' must be an array");
    std::vector<std::string> out;
    for (auto& s : g) {
        if (!s.is_string()) fail(ErrorKind::ParseError, "generators must be strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

inline ExtPtr extension_of(const json& j) {
    const Field base = parse_field(require_string(j, "field"));
    if (j.contains("big")) return share(Extension(parse_field(require_string(j, "big")), base));
    const auto m = static_cast<std::uint32_t>(require_size(j, "m"));
    if (m == 0) fail(ErrorKind::ParseError, "m must be positive");
    return share(Extension(default_field(base.characteristic(), base.degree() * m), base));
}

}  // namespace detail

inline std::string view_name(const AnyCode& c) {
    static const char* names[] = {"matrix", "vector", "poly"};
    return names[c.index()];
}

inline AnyCode code_from_json(const json& j) {
    const std::string view = detail::require_string(j, "view");
    if (view == "matrix") {
        const Field f = parse_field(detail::require_string(j, "field"));
        const json& shape = detail::require(j, "shape");
        if (!shape.is_array() || shape.size() != 2 || !detail::is_size(shape[0]) || !detail::is_size(shape[1]))
            fail(ErrorKind::ParseError, "'shape' must be [rows, cols]");
        const auto m = shape[0].get<std::size_t>(), n = shape[1].get<std::size_t>();
        std::vector<Matrix> gens;
        for (auto& s : detail::generator_strings(j)) {
            Matrix A = parse_matrix(f, s);
            if (A.rows() != m || A.cols() != n) fail(ErrorKind::DimensionMismatch, "generator '" + s + "' does not have the declared shape");
            gens.push_back(std::move(A));
        }
        return MatrixCode(f, m, n, gens);
    }
    if (view == "vector") {
        const ExtPtr ext = detail::extension_of(j);
        const std::size_t n = detail::require_size(j, "length");
        const auto rows = detail::generator_strings(j);
        Matrix G(ext->big(), rows.size(), n);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Matrix r = parse_matrix(ext->big(), rows[i]);
            if (r.rows() != 1 || r.cols() != n) fail(ErrorKind::DimensionMismatch, "generator row '" + rows[i] + "' does not have the declared length");
            for (std::size_t c = 0; c < n; ++c) G(i, c) = r(0, c);
        }
        return VectorCode(ext, G);
    }
    if (view == "poly") {
        const ExtPtr ext = detail::extension_of(j);
        const std::size_t l = j.contains("nvars") ? detail::require_size(j, "nvars") : 1;
        if (l == 0) fail(ErrorKind::ParseError, "nvars must be positive");
        std::vector<MultiLinPoly> gens;
        for (auto& s : detail::generator_strings(j)) gens.push_back(parse_multi_poly(ext, s, l));
        return PolyCode(ext, l, gens);
    }
    fail(ErrorKind::ParseError, "unknown view '" + view + "'");
}

inline AnyCode load_code(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::ParseError, path + ": " + e.what());
    }
    return code_from_json(j);
}

inline json extension_json(const Extension& ext) {
    json b = json::array();
    for (Code c : ext.basis()) b.push_back(format_element(ext.big(), c));
    return {{"big", format_field(ext.big())}, {"base", format_field(ext.base())}, {"base_generator_image", format_element(ext.big(), ext.embedding().image_of_root())},
            {"basis", b}};
}

inline json code_to_json(const MatrixCode& C) {
    json g = json::array();
    for (auto& A : C.basis()) g.push_back(format_matrix(A));
    return {{"view", "matrix"}, {"field", format_field(C.field())}, {"shape", {C.rows(), C.cols()}}, {"generators", g}};
}

inline json code_to_json(const VectorCode& C) {
    json g = json::array();
    const Matrix& G = C.generator();
    for (std::size_t i = 0; i < G.rows(); ++i) g.push_back(format_matrix(G.block(i, 0, 1, G.cols())));
    return {{"view", "vector"}, {"field", format_field(C.ext().base())}, {"big", format_field(C.ext().big())}, {"length", C.length()}, {"generators", g}};
}

inline json code_to_json(const PolyCode& C) {
    json g = json::array();
    for (auto& f : C.gens()) g.push_back(format_poly(f));
    return {{"view", "poly"}, {"field", format_field(C.ext().base())}, {"big", format_field(C.ext().big())}, {"nvars", C.nvars()}, {"generators", g}};
}

inline json code_to_json(const AnyCode& C) {
    return std::visit([](const auto& c) { return code_to_json(c); }, C);
}

inline MatrixCode as_matrix_code(const AnyCode& C) {
    return std::visit(
        [](const auto& c) -> MatrixCode {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, MatrixCode>) return c;
            else return matrix_view(c);
        },
        C);
}

inline json spectrum_json(const WeightSpectrum& s) {
    json out = json::object();
    for (auto [w, n] : s.counts) out[std::to_string(w)] = n;
    return out;
}

inline std::string poly_string(const Field& f, const Poly& p) {
    std::string s;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (!p[i]) continue;
        if (!s.empty()) s += " + ";
        if (p[i] != 1 || i == 0) s += format_element(f, p[i]);
        if (i) s += std::string(p[i] != 1 ? "*" : "") + "Z" + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s.empty() ? "0" : s;
}

/// The report for a code: view, field, shape, k, spectrum, divisibility, idealizer and F_{q^m}-linearity.
inline json analyze_json(const AnyCode& input, std::uint64_t max_enum, std::uint64_t seed) {
    const MatrixCode C = as_matrix_code(input);
    json r;
    r["view"] = view_name(input);
    r["field"] = format_field(C.field());
    r["shape"] = {C.rows(), C.cols()};
    r["k"] = C.dim();
    if (input.index() != 0) {
        const Extension& ext = std::visit([](const auto& c) -> const Extension& {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, MatrixCode>) throw std::logic_error("unreachable");
            else return c.ext();
        }, input);
        r["extension"] = extension_json(ext);
        r["k_over_big"] = std::visit([](const auto& c) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, VectorCode>) return c.dim();
            else if constexpr (std::is_same_v<std::decay_t<decltype(c)>, PolyCode>) return c.dim();
            else return 0;
        }, input);
    }
    try {
        const WeightSpectrum s = C.spectrum(max_enum);
        r["spectrum"] = spectrum_json(s);
        try {
            r["divisibility_index"] = divisibility_index(s);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ZeroCode) throw;
            r["divisibility_index"] = nullptr;
            r["divisibility_error"] = "zero code";
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::TooLarge) throw;
        r["spectrum"] = nullptr;
        r["divisibility_index"] = nullptr;
        r["divisibility_error"] = std::string(e.what()) + "; raise --max-enum to enumerate";
    }
    r["idealizer_dim"] = left_idealizer(C).size();
    const FieldSearch hit = find_field_in_idealizer(C, static_cast<std::uint32_t>(C.rows()), seed);
    json lin = {{"value", static_cast<bool>(hit.element)}, {"degree", C.rows()}, {"search_exhaustive", hit.exhaustive}};
    if (hit.element) lin["min_poly"] = poly_string(C.field(), hit.min_poly);
    else lin["min_poly"] = nullptr;
    r["fqm_linear"] = lin;
    return r;
}

inline json polys_json(const std::vector<MultiLinPoly>& fs) {
    json out = json::array();
    for (auto& f : fs) out.push_back(format_poly(f));
    return out;
}

inline json recognition_json(const RecognitionResult& res) {
    json r;
    if (res.verdict == Verdict::Undecided) r["arises"] = "undecided";
    else r["arises"] = res.verdict == Verdict::Yes;
    r["e"] = res.e;
    if (!res.reason.empty()) r["reason"] = res.reason;
    if (res.divisibility_index) r["divisibility_index"] = *res.divisibility_index;
    else r["divisibility_index"] = nullptr;
    if (res.witness) {
        const ArisesWitness& w = *res.witness;
        json wj;
        wj["H"] = w.H ? json(format_matrix(*w.H)) : json(nullptr);
        wj[w.transform.size() == 1 && w.transform[0].nvars() == 1 ? "f1" : "phi"] = polys_json(w.transform);
        wj["canonical_form"] = code_to_json(w.canonical);
        wj["subfield"] = extension_json(w.sub);
        wj["small_code"] = code_to_json(w.small);
        wj["X"] = format_matrix(w.X);
        wj["Y"] = format_matrix(w.Y);
        r["witness"] = wj;
    }
    return r;
}

/// Flattens nested JSON to path,value lines.
inline std::string to_csv(const json& j) {
    std::ostringstream out;
    out << "key,value\n";
    auto walk = [&](auto&& self, const json& v, const std::string& path) -> void {
        if (v.is_object()) {
            for (auto& [k, x] : v.items()) self(self, x, path.empty() ? k : path + "." + k);
        } else if (v.is_array()) {
            for (std::size_t i = 0; i < v.size(); ++i) self(self, v[i], path + "[" + std::to_string(i) + "]");
        } else {
            std::string s = v.is_string() ? v.get<std::string>() : v.dump();
            if (s.find_first_of(",\"\n") != std::string::npos) {
                std::string q = "\"";
                for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
                s = q + "\"";
            }
            out << path << "," << s << "\n";
        }
    };
    walk(walk, j, "");
    return out.str();
}

}  // namespace rankdiv
