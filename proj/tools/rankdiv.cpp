#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include <rankdiv/rankdiv.hpp>

using namespace rankdiv;

namespace {

constexpr int kExitFalse = 2, kExitUndecided = 3, kExitInput = 4, kExitBudget = 5;

struct Globals {
    std::string field;
    std::uint64_t seed = 0;
    std::uint64_t max_enum = kDefaultMaxEnum;
    std::string out;
    std::string format = "json";
};

struct CodeInput {
    std::string file, inline_json;

    void add_to(CLI::App* app) {
        app->add_option("--code", file, "code file (JSON)");
        app->add_option("--inline", inline_json, "code as an inline JSON string");
    }
    AnyCode load() const {
        if (file.empty() == inline_json.empty()) fail(ErrorKind::ParseError, "give exactly one of --code and --inline");
        if (!file.empty()) return load_code(file);
        try {
            return code_from_json(json::parse(inline_json));
        } catch (const json::parse_error& e) {
            fail(ErrorKind::ParseError, e.what());
        }
    }
};

Field field_or(const Globals& g, std::uint32_t p, std::uint32_t h) { return g.field.empty() ? default_field(p, h) : parse_field(g.field); }

json provenance(const Globals& g, const std::vector<Field>& fields) {
    json f = json::array();
    for (auto& x : fields) f.push_back(format_field(x));
    return {{"tool", "rankdiv"}, {"version", "0.1.0"}, {"seed", g.seed}, {"max_enum", g.max_enum}, {"fields", f}};
}

std::vector<Field> fields_of(const AnyCode& c) {
    return std::visit([](const auto& x) -> std::vector<Field> {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, MatrixCode>) return {x.field()};
        else return {x.ext().base(), x.ext().big()};
    }, c);
}

void emit(const Globals& g, const json& report) {
    const std::string text = g.format == "csv" ? to_csv(report) : report.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f) fail(ErrorKind::ParseError, "cannot write " + g.out);
    f << text;
}

json construction(const Globals& g, const std::string& name, json params, const AnyCode& code) {
    json r;
    r["command"] = "construct";
    r["construction"] = name;
    r["params"] = std::move(params);
    r["code"] = code_to_json(code);
    r["report"] = analyze_json(code, g.max_enum, g.seed);
    r["provenance"] = provenance(g, fields_of(code));
    return r;
}

json tally_json(const Tally& t) {
    return {{"instances", t.instances}, {"passed", t.passed}, {"counts", t.counts}, {"failures", t.failures}, {"ok", t.ok()}};
}

int exit_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::TooLarge:
        case ErrorKind::SearchSpaceTooLarge:
        case ErrorKind::SearchBudgetExceeded: return kExitBudget;
        case ErrorKind::TheoremViolation: return kExitFalse;
        default: return kExitInput;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Divisible rank-metric codes: construct, analyze, recognize, verify"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--field", g.field, "field spec p^h[:modulus coefficients]");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--max-enum", g.max_enum, "cap on enumerated codewords")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "output path (default stdout)");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    int status = 0;
    std::function<void()> action;

    // construct
    auto* construct = app.add_subcommand("construct", "build a code from a family");
    construct->require_subcommand(1);
    construct->fallthrough();

    CodeInput em_in;
    std::string em_base;
    auto* em = construct->add_subcommand("em", "F_q-embedding of a code over F_{q^e}");
    em_in.add_to(em);
    em->add_option("--base", em_base, "subfield F_q (default: prime field)");
    em->callback([&] {
        action = [&] {
            const MatrixCode C = as_matrix_code(em_in.load());
            const Field base = em_base.empty() ? default_field(C.field().characteristic(), 1) : parse_field(em_base);
            const Extension ext(C.field(), base);
            json r = construction(g, "em", {{"e", ext.m()}, {"basis", extension_json(ext)}}, em_embed(C, ext));
            emit(g, r);
        };
    });

    CodeInput br_in;
    std::size_t br_e = 2;
    auto* br = construct->add_subcommand("block-rep", "block-diagonal repetition diag(A, ..., A)");
    br_in.add_to(br);
    br->add_option("--e", br_e, "number of copies")->check(CLI::PositiveNumber);
    br->callback([&] { action = [&] { emit(g, construction(g, "block-rep", {{"e", br_e}}, block_repetition(as_matrix_code(br_in.load()), br_e))); }; });

    std::size_t alt_m = 3;
    auto* alt = construct->add_subcommand("alternating", "alternating m x m matrices");
    alt->add_option("--m", alt_m, "matrix size")->required();
    alt->callback([&] { action = [&] { emit(g, construction(g, "alternating", {{"m", alt_m}}, alternating_code(alt_m, field_or(g, 2, 1)))); }; });

    CounterexampleParams ce;
    auto add_ce = [&](CLI::App* a) {
        a->add_option("--q", ce.q, "base field order")->required();
        a->add_option("--t", ce.t, "degree of F_{q^t}")->required();
        a->add_option("--l", ce.l, "degree of F_{q^{tl}} over F_{q^t}")->required();
        a->add_option("--e", ce.e, "dimension of S_1")->required();
        a->add_option("--g", ce.g, "S_2 has F_q-dimension ge")->required();
    };
    auto ce_params = [&] { return json{{"q", ce.q}, {"t", ce.t}, {"l", ce.l}, {"e", ce.e}, {"g", ce.g}}; };
    auto* cx = construct->add_subcommand("counterexample", "the S_1 x S_2 family of e-divisible two-dimensional codes");
    add_ce(cx);
    cx->callback([&] {
        action = [&] {
            const Counterexample c = counterexample(ce);
            json r = construction(g, "counterexample", ce_params(), code_of_system(c.system));
            json s1 = json::array(), s2 = json::array();
            for (Code x : c.s1) s1.push_back(format_element(c.lower.big(), x));
            for (Code x : c.s2) s2.push_back(format_element(c.upper.big(), x));
            r["params"]["S1"] = s1;
            r["params"]["S2_over_F_q^t"] = s2;
            r["params"]["tower"] = {extension_json(c.lower), extension_json(c.upper)};
            r["params"]["e_divides_tl"] = !ce.obstructed();
            emit(g, r);
        };
    });

    std::size_t gab_n = 2, gab_k = 1;
    std::uint32_t gab_m = 2;
    auto* gab = construct->add_subcommand("gabidulin", "evaluation code of x, x^q, ..., x^{q^{k-1}}");
    gab->add_option("--n", gab_n, "length")->required();
    gab->add_option("--k", gab_k, "dimension")->required();
    gab->add_option("--m", gab_m, "extension degree over --field")->required()->check(CLI::PositiveNumber);
    gab->callback([&] {
        action = [&] {
            const Field base = field_or(g, 2, 1);
            const ExtPtr ext = share(Extension(default_field(base.characteristic(), base.degree() * gab_m), base));
            emit(g, construction(g, "gabidulin", {{"n", gab_n}, {"k", gab_k}, {"m", gab_m}}, gabidulin_like(gab_n, gab_k, ext)));
        };
    });

    CodeInput sc_in;
    auto* sc = construct->add_subcommand("scramble", "X C Y for seeded invertible X, Y");
    sc_in.add_to(sc);
    sc->callback([&] {
        action = [&] {
            const Scrambled s = random_equivalence(as_matrix_code(sc_in.load()), g.seed);
            emit(g, construction(g, "scramble", {{"X", format_matrix(s.X)}, {"Y", format_matrix(s.Y)}}, s.code));
        };
    });

    // analyze
    CodeInput an_in;
    auto* analyze = app.add_subcommand("analyze", "spectrum, divisibility, idealizer and F_{q^m}-linearity");
    an_in.add_to(analyze);
    analyze->callback([&] {
        action = [&] {
            const AnyCode C = an_in.load();
            json r = analyze_json(C, g.max_enum, g.seed);
            r["command"] = "analyze";
            r["provenance"] = provenance(g, fields_of(C));
            emit(g, r);
            if (r["spectrum"].is_null()) {
                std::cerr << "error: spectrum exceeds the enumeration cap; raise --max-enum\n";
                status = kExitBudget;
            }
        };
    });

    // recognize
    CodeInput rc_in;
    std::uint32_t rc_e = 0;
    bool rc_all = false;
    auto* recognize = app.add_subcommand("recognize", "decide whether an e-divisible code arises over F_{q^e}");
    rc_in.add_to(recognize);
    auto* rc_e_opt = recognize->add_option("--e", rc_e, "subfield degree")->check(CLI::PositiveNumber);
    recognize->add_flag("--all", rc_all, "every divisor of the divisibility index")->excludes(rc_e_opt);
    recognize->callback([&] {
        action = [&] {
            if (!rc_all && !rc_e) fail(ErrorKind::BadParams, "give --e or --all");
            const AnyCode C = rc_in.load();
            const RecognizeOptions opt{g.seed, g.max_enum};
            json r;
            r["command"] = "recognize";
            r["provenance"] = provenance(g, fields_of(C));
            if (rc_all) {
                json all = json::array();
                std::visit([&](const auto& c) {
                    for (auto& res : arises_over_all(c, opt)) all.push_back(recognition_json(res));
                }, C);
                r["results"] = all;
                emit(g, r);
                return;
            }
            const RecognitionResult res = std::visit([&](const auto& c) { return arises_over(c, rc_e, opt); }, C);
            r.update(recognition_json(res));
            emit(g, r);
            status = res.verdict == Verdict::Yes ? 0 : res.verdict == Verdict::No ? kExitFalse : kExitUndecided;
        };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "check theorem statements on many instances");
    verify->require_subcommand(1);
    verify->fallthrough();
    auto finish = [&](const std::string& name, json params, const Tally& t, const std::vector<Field>& fields) {
        json r;
        r["command"] = "verify";
        r["theorem"] = name;
        r["params"] = std::move(params);
        r["result"] = tally_json(t);
        r["provenance"] = provenance(g, fields);
        emit(g, r);
        if (!t.ok()) status = kExitFalse;
    };

    std::uint64_t trials = 10000;
    bool qpolys = false;
    auto* vd = verify->add_subcommand("directions", "direction counts of graphs of functions F_Q -> F_Q");
    vd->add_option("--trials", trials, "random function tables");
    vd->add_flag("--q-polys", qpolys, "instead enumerate every p-polynomial over --field");
    vd->callback([&] {
        action = [&] {
            const Field F = field_or(g, 2, 3);
            if (qpolys) {
                const ExtPtr ext = share(Extension(F, default_field(F.characteristic(), 1)));
                finish("directions", {{"mode", "q-polynomials"}}, check_directions_qpolys(ext), {F});
            } else {
                finish("directions", {{"mode", "random"}, {"trials", trials}}, check_directions_random(F, trials, g.seed), {F});
            }
        };
    });

    std::size_t ps_n = 3;
    std::uint64_t ps_trials = 100;
    auto* vp = verify->add_subcommand("point-set", "direction bound and linearity for point sets of size Q^{n-1} in AG(n, Q)");
    vp->add_option("--n", ps_n, "affine dimension (>= 3)");
    vp->add_option("--trials", ps_trials, "random graphs");
    vp->callback([&] {
        action = [&] {
            const Field F = field_or(g, 2, 2);
            finish("point-set", {{"n", ps_n}, {"trials", ps_trials}}, check_point_sets_random(F, ps_n, ps_trials, g.seed), {F});
        };
    });

    std::uint32_t wd_m = 3;
    std::size_t wd_k = 2;
    std::uint64_t wd_trials = 1000;
    auto* vw = verify->add_subcommand("weight-dual", "dimension identity for U^perp' and W^perp");
    vw->add_option("--m", wd_m, "extension degree over --field")->check(CLI::PositiveNumber);
    vw->add_option("--k", wd_k, "ambient dimension over F_{q^m}")->check(CLI::PositiveNumber);
    vw->add_option("--trials", wd_trials, "random pairs");
    vw->callback([&] {
        action = [&] {
            const Field base = field_or(g, 2, 1);
            const Extension ext(default_field(base.characteristic(), base.degree() * wd_m), base);
            finish("weight-dual", {{"m", wd_m}, {"k", wd_k}, {"trials", wd_trials}}, check_weight_dual_random(ext, wd_k, wd_trials, g.seed),
                   {ext.base(), ext.big()});
        };
    });

    auto* v5 = verify->add_subcommand("prop-5.1", "intersection dimensions of S_1 x S_2 with every point");
    add_ce(v5);
    v5->callback([&] { action = [&] { finish("prop-5.1", ce_params(), check_counterexample_pattern(ce), {}); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }
    try {
        if (action) action();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.kind() == ErrorKind::TooLarge) std::cerr << "hint: raise --max-enum\n";
        return exit_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return status;
}
