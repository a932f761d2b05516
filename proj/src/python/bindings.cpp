// Python bindings for the flipk core: graded abelian-group K-theory algebra.
// Groups cross the boundary as expression strings ("Z/4+QZ[2^inf]"), integers
// as arbitrary-precision Python ints, and structured results as plain dicts,
// so the module needs no wrapper classes on the Python side.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <set>
#include <string>
#include <vector>

#include "flipk/errors.hpp"
#include "flipk/expr.hpp"
#include "flipk/functors.hpp"
#include "flipk/kunneth.hpp"
#include "flipk/resolutions.hpp"
#include "flipk/smith.hpp"

namespace py = pybind11;
using namespace flipk;

namespace {

py::object py_int(const Int& v) {
    const std::string s = v.str();
    PyObject* obj = PyLong_FromString(s.c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::object>(obj);
}

Int int_from_py(py::handle h) {
    return Int(py::str(h).cast<std::string>());
}

py::list vec_to_py(const IntVec& v) {
    py::list out;
    for (const Int& x : v) out.append(py_int(x));
    return out;
}

py::list matrix_to_py(const IntMatrix& m) {
    py::list out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        py::list row;
        for (std::size_t j = 0; j < m.cols(); ++j) row.append(py_int(m(i, j)));
        out.append(row);
    }
    return out;
}

IntMatrix matrix_from_py(const py::sequence& rows) {
    std::vector<IntVec> data;
    for (py::handle r : rows) {
        IntVec row;
        for (py::handle x : py::cast<py::sequence>(r)) row.push_back(int_from_py(x));
        if (!data.empty() && row.size() != data.front().size())
            throw ParseError("matrix rows must all have the same length");
        data.push_back(std::move(row));
    }
    IntMatrix m(data.size(), data.empty() ? 0 : data.front().size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = data[i][j];
    return m;
}

std::string fmt(const Decomposition& d) { return format_decomposition(d); }

GradedGroup graded(const std::string& k0, const std::string& k1) {
    return parse_graded(k0, k1);
}

py::dict graded_to_py(const GradedGroup& g) {
    py::dict out;
    out["K0"] = fmt(g.g0);
    out["K1"] = fmt(g.g1);
    return out;
}

py::dict smith_py(const py::sequence& rows) {
    SmithForm s = smith_normal_form(matrix_from_py(rows));
    py::dict out;
    out["D"] = matrix_to_py(s.D);
    out["U"] = matrix_to_py(s.U);
    out["V"] = matrix_to_py(s.V);
    out["rank"] = s.rank();
    out["invariant_factors"] = vec_to_py(s.diagonal());
    return out;
}

std::string decompose_py(const py::sequence& rows) {
    return fmt(decompose(PresentationMatrix{matrix_from_py(rows)}));
}

py::dict kunneth_py(const std::string& k0a, const std::string& k1a,
                    const std::string& k0b, const std::string& k1b) {
    KunnethGroup k = kunneth(graded(k0a, k1a), graded(k0b, k1b));
    py::list comps;
    for (const KunnethComponent& c : k.components) {
        py::dict e;
        e["part"] = part_kind_name(c.kind);
        e["i"] = c.i;
        e["j"] = c.j;
        e["degree"] = c.degree();
        e["value"] = fmt(c.value);
        comps.append(e);
    }
    py::dict out = graded_to_py(collapse(k));
    out["components"] = comps;
    return out;
}

py::list flip_signs_py(const std::string& k0, const std::string& k1) {
    py::list out;
    for (const SwapTerm& t : flip_action(graded(k0, k1))) {
        py::dict e;
        e["part"] = part_kind_name(t.kind);
        e["i"] = t.i;
        e["j"] = t.j;
        e["degree"] = (t.kind == PartKind::TensorPart ? t.i + t.j : t.i + t.j + 1) & 1;
        e["sign"] = t.sign;
        e["value"] = fmt(t.source_value);
        out.append(e);
    }
    return out;
}

bool flip_identity_py(const std::string& k0, const std::string& k1) {
    return flip_is_identity(graded(k0, k1)).identity;
}

py::dict classify_py(const std::string& k0, const std::string& k1) {
    ClassifyVerdict v = classify(graded(k0, k1));
    py::dict out;
    out["admissible"] = v.admissible;
    out["kind"] = v.kind == AdmissibleKind::NotAdmissible
                      ? "not_admissible"
                      : (v.kind == AdmissibleKind::ZeroCase ? "zero" : "qn");
    out["m"] = v.m ? py::object(py::str(v.m->to_string())) : py::none();
    out["n"] = v.n ? py::object(py::str(v.n->to_string())) : py::none();
    out["failed_clause"] = v.failed_clause;
    out["detail"] = v.detail;
    return out;
}

py::dict necessary_py(const std::string& k0, const std::string& k1,
                      const std::vector<std::uint64_t>& primes, unsigned depth) {
    NecessaryResult r = necessary_check(
        graded(k0, k1), std::set<std::uint64_t>(primes.begin(), primes.end()), depth);
    py::list trace;
    for (const NecessaryStage& s : r.trace) {
        py::dict e;
        e["label"] = s.label;
        e["ok"] = s.ok;
        e["group"] = graded_to_py(s.group);
        e["note"] = s.note;
        trace.append(e);
    }
    py::dict out;
    out["ok"] = r.ok;
    out["trace"] = trace;
    return out;
}

py::dict eta_py(const std::string& g, const std::string& h, std::uint64_t seed) {
    TorMatrix t = eta(presentation_of(parse_group_expr(g)),
                      presentation_of(parse_group_expr(h)), seed);
    py::dict out;
    out["matrix"] = matrix_to_py(t.mat);
    out["row_moduli"] = vec_to_py(t.row_moduli);
    out["col_moduli"] = vec_to_py(t.col_moduli);
    out["identity"] = tor_matrix_is_identity(t);
    return out;
}

std::size_t verify_colimit_tables_py(std::size_t stages) {
    ColimitOptions opts;
    opts.budget = stages;
    std::size_t n = 0;
    for (const ColimitCheck& c : colimit_table_checks()) {
        Decomposition got = colimit(c.system, opts);
        if (got != c.expected)
            throw InternalError("colimit disagrees with the pairing table for " +
                                c.description + ": got " + fmt(got) + ", expected " +
                                fmt(c.expected));
        ++n;
    }
    return n;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact algebra on countable abelian groups: canonical decompositions, "
              "Smith normal form, tensor/Tor pairings with presentation-level oracles, "
              "graded Kunneth assembly, the factor-exchange flip, and the "
              "admissibility classifier.";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<UnsupportedInputError>(m, "UnsupportedInputError",
                                                  PyExc_ValueError);
    py::register_exception<ResourceLimitError>(m, "ResourceLimitError",
                                               PyExc_RuntimeError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

    m.def(
        "canonical", [](const std::string& e) { return fmt(parse_group_expr(e)); },
        py::arg("expr"),
        "Parse a group expression and return its canonical form.");
    m.def(
        "torsion_free_rank",
        [](const std::string& e) { return parse_group_expr(e).torsion_free_rank(); },
        py::arg("expr"), "Number of Z summands in the canonical decomposition.");
    m.def(
        "tensor",
        [](const std::string& a, const std::string& b) {
            return fmt(tensor(parse_group_expr(a), parse_group_expr(b)));
        },
        py::arg("a"), py::arg("b"), "Tensor product, by the atom pairing table.");
    m.def(
        "tor",
        [](const std::string& a, const std::string& b) {
            return fmt(tor(parse_group_expr(a), parse_group_expr(b)));
        },
        py::arg("a"), py::arg("b"), "Torsion product, by the atom pairing table.");
    m.def(
        "oracle_tensor",
        [](const std::string& a, const std::string& b) {
            return fmt(oracle_tensor(presentation_of(parse_group_expr(a)),
                                     presentation_of(parse_group_expr(b))));
        },
        py::arg("a"), py::arg("b"),
        "Tensor product computed from presentations (finitely generated inputs only).");
    m.def(
        "oracle_tor",
        [](const std::string& a, const std::string& b) {
            return fmt(oracle_tor(presentation_of(parse_group_expr(a)),
                                  presentation_of(parse_group_expr(b))));
        },
        py::arg("a"), py::arg("b"),
        "Torsion product computed from free resolutions (finitely generated inputs only).");
    m.def("smith", &smith_py, py::arg("matrix"),
          "Smith normal form; returns dict with D, U, V, rank, invariant_factors "
          "satisfying U*M*V = D.");
    m.def("decompose_presentation", &decompose_py, py::arg("matrix"),
          "Canonical decomposition of the cokernel of a relation matrix "
          "(rows are relations).");
    m.def("kunneth", &kunneth_py, py::arg("k0a"), py::arg("k1a"), py::arg("k0b"),
          py::arg("k1b"),
          "Graded pairing of two Z/2-graded groups; returns collapsed K0/K1 plus "
          "the eight tensor/Tor components.");
    m.def("flip_signs", &flip_signs_py, py::arg("k0"), py::arg("k1"),
          "Sign of the factor-exchange flip on each component of the square.");
    m.def("flip_is_identity", &flip_identity_py, py::arg("k0"), py::arg("k1"),
          "Whether the factor-exchange flip acts as the identity on the square.");
    m.def("classify", &classify_py, py::arg("k0"), py::arg("k1"),
          "Decide membership in the realizable class; witnesses m (and n) are "
          "supernatural-number strings.");
    m.def("necessary", &necessary_py, py::arg("k0"), py::arg("k1"),
          py::arg("primes") = std::vector<std::uint64_t>{}, py::arg("depth") = 2u,
          "Closure battery of necessary conditions; returns ok plus a stage trace.");
    m.def("eta", &eta_py, py::arg("g"), py::arg("h"), py::arg("seed") = 0,
          "Symmetry matrix on Tor(g, h) -> Tor(h, g) with its row/column moduli; "
          "independent of the lift choices drawn from seed.");
    m.def("verify_colimit_tables", &verify_colimit_tables_py, py::arg("stages") = 12,
          "Recompute every infinite-atom pairing-table entry as a directed-system "
          "colimit; returns the number of verified entries.");
}
