#include "flipk/jsonio.hpp"

#include <limits>
#include <variant>

#include "flipk/errors.hpp"
#include "flipk/expr.hpp"

namespace flipk {

json int_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (v >= lo && v <= hi) return static_cast<std::int64_t>(v);
    return v.str();
}

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (s.size() == start) throw ParseError("not an integer literal: '" + s + "'");
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw ParseError("not an integer literal: '" + s + "'");
        return Int(s);
    }
    throw ParseError("expected an integer (number or decimal string), got " + j.dump());
}

json vec_to_json(const IntVec& v) {
    json out = json::array();
    for (const Int& x : v) out.push_back(int_to_json(x));
    return out;
}

json matrix_to_json(const IntMatrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(int_to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

IntMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("matrix must be a JSON array of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    if (rows > 0) {
        if (!j[0].is_array()) throw ParseError("matrix rows must be JSON arrays");
        cols = j[0].size();
    }
    IntMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw ParseError("matrix rows must all have the same length");
        for (std::size_t c = 0; c < cols; ++c) out(r, c) = int_from_json(j[r][c]);
    }
    return out;
}

json atom_to_json(const Atom& a) {
    json out;
    out["name"] = atom_name(a);
    if (std::holds_alternative<FreeZ>(a)) {
        out["kind"] = "free";
    } else if (const auto* c = std::get_if<Cyclic>(&a)) {
        out["kind"] = "cyclic";
        out["p"] = c->p;
        out["exp"] = c->a;
    } else if (const auto* pr = std::get_if<Prufer>(&a)) {
        out["kind"] = "prufer";
        out["p"] = pr->p;
    } else {
        const auto& q = std::get<QLoc>(a);
        out["kind"] = "qloc";
        out["primes"] = q.primes;
    }
    return out;
}

json decomposition_to_json(const Decomposition& d) {
    json atoms = json::array();
    for (const Atom& a : d) atoms.push_back(atom_to_json(a));
    return json{{"expr", format_decomposition(d)},
                {"atoms", std::move(atoms)},
                {"torsion_free_rank", d.torsion_free_rank()},
                {"finitely_generated", d.finitely_generated()}};
}

json graded_to_json(const GradedGroup& g) {
    return json{{"K0", decomposition_to_json(g.g0)}, {"K1", decomposition_to_json(g.g1)}};
}

GradedGroup graded_from_json(const json& j) {
    if (!j.is_object() || !j.contains("K0") || !j.contains("K1"))
        throw ParseError("graded group document must be {\"K0\": \"<expr>\", \"K1\": \"<expr>\"}");
    if (!j["K0"].is_string() || !j["K1"].is_string())
        throw ParseError("graded group entries must be group expression strings");
    return parse_graded(j["K0"].get<std::string>(), j["K1"].get<std::string>());
}

json smith_to_json(const SmithForm& s) {
    return json{{"D", matrix_to_json(s.D)},           {"U", matrix_to_json(s.U)},
                {"V", matrix_to_json(s.V)},           {"Uinv", matrix_to_json(s.Uinv)},
                {"Vinv", matrix_to_json(s.Vinv)},     {"rank", s.rank()},
                {"invariant_factors", vec_to_json(s.diagonal())}};
}

json resolution_to_json(const FreeResolution& r) {
    return json{{"P_rank", r.P_rank()},
                {"Q_rank", r.Q_rank()},
                {"inclusion", matrix_to_json(r.inclusion)},
                {"group", decomposition_to_json(decompose(r.group))}};
}

json tor_matrix_to_json(const TorMatrix& m) {
    return json{{"matrix", matrix_to_json(m.mat)},
                {"row_moduli", vec_to_json(m.row_moduli)},
                {"col_moduli", vec_to_json(m.col_moduli)},
                {"identity", tor_matrix_is_identity(m)}};
}

json swap_terms_to_json(const std::vector<SwapTerm>& terms) {
    json out = json::array();
    for (const SwapTerm& t : terms) {
        int degree = (t.kind == PartKind::TensorPart ? t.i + t.j : t.i + t.j + 1) & 1;
        out.push_back(json{{"part", part_kind_name(t.kind)},
                           {"i", t.i},
                           {"j", t.j},
                           {"degree", degree},
                           {"sign", t.sign},
                           {"value", decomposition_to_json(t.source_value)}});
    }
    return out;
}

json flip_verdict_to_json(const FlipVerdict& v) {
    json viols = json::array();
    for (const FlipViolation& f : v.violations)
        viols.push_back(json{{"part", part_kind_name(f.part)},
                             {"diagonal", f.diagonal},
                             {"grade_a", f.grade_a},
                             {"grade_b", f.grade_b},
                             {"index_a", f.index_a},
                             {"index_b", f.index_b},
                             {"atom_a", atom_name(f.atom_a)},
                             {"atom_b", atom_name(f.atom_b)},
                             {"value", decomposition_to_json(f.value)}});
    return json{{"identity", v.identity}, {"violations", std::move(viols)}};
}

json necessary_to_json(const NecessaryResult& r) {
    json trace = json::array();
    for (const NecessaryStage& st : r.trace)
        trace.push_back(json{{"label", st.label},
                             {"ok", st.ok},
                             {"group", graded_to_json(st.group)},
                             {"note", st.note}});
    return json{{"ok", r.ok}, {"trace", std::move(trace)}};
}

json classify_to_json(const ClassifyVerdict& v) {
    json out{{"admissible", v.admissible},
             {"kind", v.kind == AdmissibleKind::NotAdmissible
                          ? "not_admissible"
                          : (v.kind == AdmissibleKind::ZeroCase ? "zero" : "qn")},
             {"detail", v.detail}};
    if (v.m) out["m"] = v.m->to_string();
    if (v.n) out["n"] = v.n->to_string();
    if (!v.failed_clause.empty()) out["failed_clause"] = v.failed_clause;
    return out;
}

json kunneth_to_json(const KunnethGroup& k) {
    json comps = json::array();
    for (const KunnethComponent& c : k.components)
        comps.push_back(json{{"part", part_kind_name(c.kind)},
                             {"i", c.i},
                             {"j", c.j},
                             {"degree", c.degree()},
                             {"value", decomposition_to_json(c.value)}});
    return json{{"components", std::move(comps)}, {"collapsed", graded_to_json(collapse(k))}};
}

} // namespace flipk
