#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "flipk/errors.hpp"
#include "flipk/expr.hpp"
#include "flipk/functors.hpp"
#include "flipk/jsonio.hpp"
#include "flipk/kunneth.hpp"
#include "flipk/resolutions.hpp"
#include "flipk/smith.hpp"

using namespace flipk;

namespace {

struct Ctx {
    std::string format = "text";
    std::size_t max_dim = 64;

    bool json_out() const { return format == "json"; }
    void emit(const std::string& verb, const json& result, const std::string& text) const {
        if (json_out())
            std::cout << json{{"tool", "flipk"}, {"verb", verb}, {"result", result}}.dump(2)
                      << "\n";
        else
            std::cout << text;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON input");
    return j;
}

// inline JSON if the argument starts with the opening token, else a file path
std::string inline_or_file(const std::string& arg, char opening) {
    std::size_t i = 0;
    while (i < arg.size() && arg[i] == ' ') ++i;
    if (i < arg.size() && arg[i] == opening) return arg;
    return slurp(arg);
}

void check_cap(std::size_t rows, std::size_t cols, std::size_t cap) {
    if (rows > cap || cols > cap)
        throw ResourceLimitError("presentation " + std::to_string(rows) + "x" +
                                 std::to_string(cols) + " exceeds the " + std::to_string(cap) +
                                 "x" + std::to_string(cap) + " limit (--max-dim)");
}

IntMatrix read_matrix(const std::string& arg, std::size_t cap) {
    IntMatrix m = matrix_from_json(parse_json_text(inline_or_file(arg, '[')));
    check_cap(m.rows(), m.cols(), cap);
    return m;
}

PresentationMatrix fg_presentation(const std::string& expr, std::size_t cap) {
    PresentationMatrix M = presentation_of(parse_group_expr(expr));
    check_cap(M.relations(), M.generators(), cap);
    return M;
}

GradedGroup read_graded_doc(const std::string& arg) {
    return graded_from_json(parse_json_text(inline_or_file(arg, '{')));
}

std::string moduli_text(const IntVec& v) {
    if (v.empty()) return "(none)";
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].str();
    return s;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

int run_snf(const Ctx& ctx, const std::string& arg) {
    IntMatrix m = read_matrix(arg, ctx.max_dim);
    SmithForm s = smith_normal_form(m);
    std::ostringstream t;
    t << "invariant factors: " << moduli_text(s.diagonal()) << "\n"
      << "rank: " << s.rank() << "\n"
      << "D: " << s.D.to_string() << "\n"
      << "U: " << s.U.to_string() << "\n"
      << "V: " << s.V.to_string() << "\n";
    json r = smith_to_json(s);
    r["input"] = matrix_to_json(m);
    ctx.emit("snf", r, t.str());
    return 0;
}

// Accepts a presentation matrix (inline JSON or file) or a group expression;
// expressions are simply re-canonicalized.
int run_decompose(const Ctx& ctx, const std::string& arg) {
    std::size_t i = 0;
    while (i < arg.size() && arg[i] == ' ') ++i;
    bool looks_like_matrix = (i < arg.size() && arg[i] == '[') ||
                             std::filesystem::exists(arg);
    Decomposition d =
        looks_like_matrix
            ? decompose(PresentationMatrix{read_matrix(arg, ctx.max_dim)})
            : parse_group_expr(arg);
    ctx.emit("decompose", json{{"group", decomposition_to_json(d)}},
             format_decomposition(d) + "\n");
    return 0;
}

int run_pairing(const Ctx& ctx, const std::string& verb, const std::string& la,
                const std::string& rb) {
    Decomposition a = parse_group_expr(la), b = parse_group_expr(rb);
    Decomposition v = verb == "tensor" ? tensor(a, b) : tor(a, b);
    json r{{"left", decomposition_to_json(a)},
           {"right", decomposition_to_json(b)},
           {"value", decomposition_to_json(v)}};
    std::string op = verb == "tensor" ? "tensor" : "Tor";
    ctx.emit(verb, r,
             op + "(" + format_decomposition(a) + ", " + format_decomposition(b) +
                 ") = " + format_decomposition(v) + "\n");
    return 0;
}

int run_oracle_compare(const Ctx& ctx, const std::string& la, const std::string& rb) {
    Decomposition a = parse_group_expr(la), b = parse_group_expr(rb);
    PresentationMatrix A = fg_presentation(la, ctx.max_dim), B = fg_presentation(rb, ctx.max_dim);
    Decomposition t_table = tensor(a, b), t_oracle = oracle_tensor(A, B);
    Decomposition r_table = tor(a, b), r_oracle = oracle_tor(A, B);
    bool t_ok = t_table == t_oracle, r_ok = r_table == r_oracle;
    std::ostringstream t;
    t << "tensor (table):  " << format_decomposition(t_table) << "\n"
      << "tensor (oracle): " << format_decomposition(t_oracle) << "\n"
      << "tensor agreement: " << yesno(t_ok) << "\n"
      << "Tor (table):  " << format_decomposition(r_table) << "\n"
      << "Tor (oracle): " << format_decomposition(r_oracle) << "\n"
      << "Tor agreement: " << yesno(r_ok) << "\n";
    json r{{"left", decomposition_to_json(a)},
           {"right", decomposition_to_json(b)},
           {"tensor_table", decomposition_to_json(t_table)},
           {"tensor_oracle", decomposition_to_json(t_oracle)},
           {"tensor_agreement", t_ok},
           {"tor_table", decomposition_to_json(r_table)},
           {"tor_oracle", decomposition_to_json(r_oracle)},
           {"tor_agreement", r_ok}};
    ctx.emit("oracle-compare", r, t.str());
    if (!t_ok || !r_ok)
        throw InternalError("table and presentation oracle disagree on (" + la + ", " + rb + ")");
    return 0;
}

int run_resolve(const Ctx& ctx, const std::string& arg) {
    std::size_t i = 0;
    while (i < arg.size() && arg[i] == ' ') ++i;
    PresentationMatrix M = (i < arg.size() && arg[i] == '[')
                               ? PresentationMatrix{read_matrix(arg, ctx.max_dim)}
                               : fg_presentation(arg, ctx.max_dim);
    FreeResolution r = free_resolution(M);
    std::ostringstream t;
    t << "group: " << format_decomposition(decompose(M)) << "\n"
      << "P rank: " << r.P_rank() << "\n"
      << "Q rank: " << r.Q_rank() << "\n"
      << "inclusion: " << r.inclusion.to_string() << "\n";
    ctx.emit("resolve", resolution_to_json(r), t.str());
    return 0;
}

int run_kernel(const Ctx& ctx, const std::string& verb, const std::string& la,
               const std::string& rb) {
    PresentationMatrix A = fg_presentation(la, ctx.max_dim), B = fg_presentation(rb, ctx.max_dim);
    const bool left = verb == "ltor";
    Decomposition value;
    IntVec moduli;
    if (left) {
        LeftTor lt = ltor(A, B);
        value = lt.value();
        moduli = lt.kernel.moduli();
    } else {
        RightTor rt = rtor(A, B);
        value = rt.value();
        moduli = rt.kernel.moduli();
    }
    std::ostringstream t;
    t << (left ? "LTor(" : "RTor(") << la << ", " << rb << ") = " << format_decomposition(value)
      << "\n"
      << "generator moduli: " << moduli_text(moduli) << "\n";
    json r{{"left", la},
           {"right", rb},
           {"value", decomposition_to_json(value)},
           {"moduli", vec_to_json(moduli)}};
    ctx.emit(verb, r, t.str());
    return 0;
}

int run_eta(const Ctx& ctx, const std::string& la, const std::string& rb, std::uint64_t seed) {
    PresentationMatrix A = fg_presentation(la, ctx.max_dim), B = fg_presentation(rb, ctx.max_dim);
    TorMatrix e = eta(A, B, seed);
    std::ostringstream t;
    t << "eta: LTor(" << la << ", " << rb << ") -> LTor(" << rb << ", " << la << ")\n"
      << "matrix: " << e.mat.to_string() << "\n"
      << "row moduli: " << moduli_text(e.row_moduli) << "\n"
      << "identity: " << yesno(tor_matrix_is_identity(e)) << "\n";
    json r = tor_matrix_to_json(e);
    r["left"] = la;
    r["right"] = rb;
    r["seed"] = seed;
    ctx.emit("eta", r, t.str());
    return 0;
}

int run_kunneth(const Ctx& ctx, const GradedGroup& a, const std::string& with) {
    GradedGroup b = with.empty() ? a : read_graded_doc(with);
    KunnethGroup k = kunneth(a, b);
    std::ostringstream t;
    for (const KunnethComponent& c : k.components)
        t << part_kind_name(c.kind) << "(" << c.i << "," << c.j << ") -> degree " << c.degree()
          << ": " << format_decomposition(c.value) << "\n";
    GradedGroup coll = collapse(k);
    t << "K0 = " << format_decomposition(coll.g0) << "\n"
      << "K1 = " << format_decomposition(coll.g1) << "\n";
    ctx.emit("kunneth", kunneth_to_json(k), t.str());
    return 0;
}

int run_flip(const Ctx& ctx, const GradedGroup& a) {
    std::vector<SwapTerm> terms = flip_action(a);
    FlipVerdict v = flip_is_identity(a);
    std::ostringstream t;
    for (const SwapTerm& s : terms)
        t << part_kind_name(s.kind) << "(" << s.i << "," << s.j << ") sign "
          << (s.sign > 0 ? "+1" : "-1") << ": " << format_decomposition(s.source_value) << "\n";
    t << "identity: " << yesno(v.identity) << "\n";
    json r{{"terms", swap_terms_to_json(terms)}, {"verdict", flip_verdict_to_json(v)}};
    ctx.emit("flip", r, t.str());
    return 0;
}

int run_check_flip(const Ctx& ctx, const GradedGroup& a) {
    FlipVerdict v = flip_is_identity(a);
    std::ostringstream t;
    t << "identity: " << yesno(v.identity) << "\n";
    for (const FlipViolation& f : v.violations)
        t << "violation: " << part_kind_name(f.part) << (f.diagonal ? " diagonal " : " pair ")
          << atom_name(f.atom_a) << " (grade " << f.grade_a << ") / " << atom_name(f.atom_b)
          << " (grade " << f.grade_b << "): " << format_decomposition(f.value) << "\n";
    ctx.emit("check-flip", flip_verdict_to_json(v), t.str());
    return 0;
}

int run_classify(const Ctx& ctx, const GradedGroup& a) {
    ClassifyVerdict v = classify(a);
    std::ostringstream t;
    if (v.admissible) {
        t << "admissible: yes (" << (v.kind == AdmissibleKind::ZeroCase ? "zero" : "qn")
          << " case)\n";
        if (v.m) t << "m = " << v.m->to_string() << "\n";
        if (v.n) t << "n = " << v.n->to_string() << "\n";
    } else {
        t << "admissible: no\n"
          << "failed clause: " << v.failed_clause << "\n";
    }
    t << "detail: " << v.detail << "\n";
    ctx.emit("classify", classify_to_json(v), t.str());
    return 0;
}

int run_necessary(const Ctx& ctx, const GradedGroup& a, const std::vector<std::uint64_t>& primes,
                  unsigned depth) {
    std::set<std::uint64_t> P(primes.begin(), primes.end());
    NecessaryResult r = necessary_check(a, P, depth);
    std::ostringstream t;
    for (const NecessaryStage& st : r.trace) {
        t << "stage '" << st.label << "': " << (st.ok ? "ok" : "FAIL");
        if (!st.note.empty()) t << " (" << st.note << ")";
        t << "\n";
    }
    t << "necessary conditions: " << (r.ok ? "pass" : "fail") << "\n";
    ctx.emit("necessary", necessary_to_json(r), t.str());
    return 0;
}

int run_colimit_verify(const Ctx& ctx, std::size_t stages) {
    ColimitOptions opts;
    opts.budget = stages;
    json checks = json::array();
    std::ostringstream t;
    bool all_ok = true;
    for (const ColimitCheck& c : colimit_table_checks()) {
        Decomposition got = colimit(c.system, opts);
        bool ok = got == c.expected;
        all_ok = all_ok && ok;
        t << (ok ? "ok   " : "FAIL ") << c.description
          << (ok ? "" : " (computed " + format_decomposition(got) + ")") << "\n";
        checks.push_back(json{{"description", c.description},
                              {"expected", decomposition_to_json(c.expected)},
                              {"computed", decomposition_to_json(got)},
                              {"ok", ok}});
    }
    t << "all entries verified: " << yesno(all_ok) << "\n";
    ctx.emit("colimit-verify", json{{"checks", checks}, {"all_ok", all_ok}}, t.str());
    if (!all_ok) throw InternalError("colimit oracle disagrees with the closed-form tables");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"flipk: exact calculator for graded abelian groups of the K-theory class\n"
                 "(tensor/Tor tables, resolutions, swap isomorphisms, product-flip analysis).\n"
                 "JSON output conforms to schemas/output.schema.json."};
    app.require_subcommand(1);

    Ctx ctx;
    int rc = 0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", ctx.format, "output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        sub->add_option("--max-dim", ctx.max_dim, "presentation size cap")
            ->capture_default_str();
        return sub;
    };

    // matrix verbs
    static std::string mat_arg;
    auto* snf = common(app.add_subcommand("snf", "Smith normal form of an integer matrix"));
    snf->add_option("matrix", mat_arg, "JSON matrix (inline or file path)")->required();
    snf->callback([&] { rc = run_snf(ctx, mat_arg); });

    static std::string decomp_arg;
    auto* dec = common(app.add_subcommand("decompose", "structure of Z^n modulo relation rows"));
    dec->add_option("matrix", decomp_arg, "JSON relation matrix (inline or file path)")
        ->required();
    dec->callback([&] { rc = run_decompose(ctx, decomp_arg); });

    // pairing verbs on group expressions
    static std::string pa, pb;
    for (const std::string verb : {"tensor", "tor"}) {
        auto* sub = common(app.add_subcommand(
            verb, verb == "tensor" ? "tensor product of two groups" : "torsion product of two groups"));
        sub->add_option("left", pa, "group expression")->required();
        sub->add_option("right", pb, "group expression")->required();
        sub->callback([&ctx, &rc, verb] { rc = run_pairing(ctx, verb, pa, pb); });
    }

    static std::string oa, ob;
    auto* oc = common(app.add_subcommand(
        "oracle-compare", "check the closed-form tables against the presentation oracles"));
    oc->add_option("left", oa, "finitely generated group expression")->required();
    oc->add_option("right", ob, "finitely generated group expression")->required();
    oc->callback([&] { rc = run_oracle_compare(ctx, oa, ob); });

    static std::string res_arg;
    auto* res = common(app.add_subcommand("resolve", "two-term free resolution of a presentation"));
    res->add_option("input", res_arg, "group expression or JSON relation matrix")->required();
    res->callback([&] { rc = run_resolve(ctx, res_arg); });

    static std::string ka, kb;
    for (const std::string verb : {"ltor", "rtor"}) {
        auto* sub = common(app.add_subcommand(
            verb, verb == "ltor" ? "torsion product resolving the left argument"
                                 : "torsion product resolving the right argument"));
        sub->add_option("left", ka, "finitely generated group expression")->required();
        sub->add_option("right", kb, "finitely generated group expression")->required();
        sub->callback([&ctx, &rc, verb] { rc = run_kernel(ctx, verb, ka, kb); });
    }

    static std::string ea, eb;
    static std::uint64_t seed = 0;
    auto* et = common(app.add_subcommand("eta", "swap isomorphism LTor(G,H) -> LTor(H,G)"));
    et->add_option("left", ea, "finitely generated group expression")->required();
    et->add_option("right", eb, "finitely generated group expression")->required();
    et->add_option("--seed", seed, "randomize the internal lift choices")->capture_default_str();
    et->callback([&] { rc = run_eta(ctx, ea, eb, seed); });

    // graded-group verbs
    static std::string k0 = "0", k1 = "0", with_doc;
    auto graded_opts = [&](CLI::App* sub) {
        sub->add_option("--k0", k0, "grade-0 group expression")->capture_default_str();
        sub->add_option("--k1", k1, "grade-1 group expression")->capture_default_str();
        return sub;
    };

    auto* kun = graded_opts(common(
        app.add_subcommand("kunneth", "graded product group of (--k0,--k1) with a second factor")));
    kun->add_option("with", with_doc,
                    "second graded group as JSON {\"K0\":...,\"K1\":...} (inline or file); "
                    "defaults to the square");
    kun->callback([&] { rc = run_kunneth(ctx, parse_graded(k0, k1), with_doc); });

    auto* fl = graded_opts(
        common(app.add_subcommand("flip", "signed component action of the factor exchange")));
    fl->callback([&] { rc = run_flip(ctx, parse_graded(k0, k1)); });

    auto* cf = graded_opts(
        common(app.add_subcommand("check-flip", "is the factor exchange the identity?")));
    cf->callback([&] { rc = run_check_flip(ctx, parse_graded(k0, k1)); });

    auto* cl = graded_opts(
        common(app.add_subcommand("classify", "membership in the realizable admissible class")));
    cl->callback([&] { rc = run_classify(ctx, parse_graded(k0, k1)); });

    static std::vector<std::uint64_t> primes;
    static unsigned depth = 2;
    auto* nec = graded_opts(
        common(app.add_subcommand("necessary", "battery of closure obstructions with a trace")));
    nec->add_option("--primes", primes, "test primes (default: supports plus 2,3,5)")
        ->delimiter(',');
    nec->add_option("--depth", depth, "iterated squaring depth")->capture_default_str();
    nec->callback([&] { rc = run_necessary(ctx, parse_graded(k0, k1), primes, depth); });

    static std::size_t stages = 12;
    auto* cv = common(app.add_subcommand(
        "colimit-verify", "re-derive every infinite-atom table entry from directed systems"));
    cv->add_option("--stages", stages, "stage budget per system")->capture_default_str();
    cv->callback([&] { rc = run_colimit_verify(ctx, stages); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "flipk: parse error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedInputError& e) {
        std::cerr << "flipk: unsupported input: " << e.what() << "\n";
        return 3;
    } catch (const ResourceLimitError& e) {
        std::cerr << "flipk: resource limit: " << e.what() << "\n";
        return 4;
    } catch (const InternalError& e) {
        std::cerr << "flipk: internal error: " << e.what() << "\n";
        std::vector<std::string> args(argv, argv + argc);
        std::cerr << json{{"bug_report",
                           {{"type", "internal_invariant_breach"},
                            {"message", e.what()},
                            {"argv", args}}}}
                         .dump(2)
                  << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "flipk: unexpected error: " << e.what() << "\n";
        return 5;
    }
    return rc;
}
