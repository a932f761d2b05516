#include "flipk/kunneth.hpp"

#include <algorithm>

#include "flipk/expr.hpp"

namespace flipk {

std::string part_kind_name(PartKind k) {
    return k == PartKind::TensorPart ? "tensor" : "Tor";
}

KunnethGroup kunneth(const GradedGroup& a, const GradedGroup& b) {
    auto grade = [](const GradedGroup& g, int i) -> const Decomposition& {
        return i == 0 ? g.g0 : g.g1;
    };
    KunnethGroup out;
    for (PartKind kind : {PartKind::TensorPart, PartKind::TorPart})
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Decomposition v = kind == PartKind::TensorPart ? tensor(grade(a, i), grade(b, j))
                                                               : tor(grade(a, i), grade(b, j));
                out.components.push_back(KunnethComponent{kind, i, j, std::move(v)});
            }
    return out;
}

GradedGroup collapse(const KunnethGroup& k) {
    GradedGroup out;
    for (const KunnethComponent& c : k.components)
        (c.degree() == 0 ? out.g0 : out.g1).add_all(c.value);
    return out;
}

GradedGroup kunneth_square(const GradedGroup& a) { return collapse(kunneth(a, a)); }

std::vector<SwapTerm> flip_action(const GradedGroup& a) {
    KunnethGroup k = kunneth(a, a);
    std::vector<SwapTerm> out;
    out.reserve(k.components.size());
    for (const KunnethComponent& c : k.components) {
        int sign = (c.i * c.j) % 2 == 0 ? 1 : -1;
        if (c.kind == PartKind::TorPart) sign = -sign;
        out.push_back(SwapTerm{c.kind, c.i, c.j, sign, c.value});
    }
    return out;
}

namespace {

struct Position {
    int grade;
    std::size_t index;
    const Atom* atom;
};

std::vector<Position> positions_of(const GradedGroup& a) {
    std::vector<Position> out;
    for (std::size_t i = 0; i < a.g0.size(); ++i) out.push_back({0, i, &a.g0[i]});
    for (std::size_t i = 0; i < a.g1.size(); ++i) out.push_back({1, i, &a.g1[i]});
    return out;
}

} // namespace

std::vector<RestrictionViolation> basic_restrictions_check(const GradedGroup& a) {
    std::vector<RestrictionViolation> out;
    auto pos = positions_of(a);
    for (std::size_t p = 0; p < pos.size(); ++p)
        for (std::size_t q = p + 1; q < pos.size(); ++q) {
            Decomposition t = tensor_atoms(*pos[p].atom, *pos[q].atom);
            Decomposition tr = tor_atoms(*pos[p].atom, *pos[q].atom);
            if (t.is_zero() && tr.is_zero()) continue;
            out.push_back(RestrictionViolation{pos[p].grade, pos[q].grade, pos[p].index,
                                               pos[q].index, *pos[p].atom, *pos[q].atom,
                                               std::move(t), std::move(tr)});
        }
    return out;
}

FlipVerdict flip_is_identity(const GradedGroup& a) {
    FlipVerdict out;
    // distinct summand positions: the exchange moves the pairing across summands,
    // so any nonzero pairing already breaks identity
    for (const RestrictionViolation& rv : basic_restrictions_check(a)) {
        if (!rv.tensor_value.is_zero())
            out.violations.push_back(FlipViolation{PartKind::TensorPart, false, rv.grade_a,
                                                   rv.grade_b, rv.index_a, rv.index_b, rv.atom_a,
                                                   rv.atom_b, rv.tensor_value});
        if (!rv.tor_value.is_zero())
            out.violations.push_back(FlipViolation{PartKind::TorPart, false, rv.grade_a,
                                                   rv.grade_b, rv.index_a, rv.index_b, rv.atom_a,
                                                   rv.atom_b, rv.tor_value});
    }
    // diagonal: the exchange fixes X ⊗ X and Tor(X, X) for rank-one atoms, so only
    // the Koszul sign matters; sign -1 demands exponent dividing two
    for (const Position& p : positions_of(a)) {
        if (p.grade == 1) {
            Decomposition t = tensor_atoms(*p.atom, *p.atom); // lands in ⊗(1,1), sign -1
            if (!exponent_divides_two(t))
                out.violations.push_back(FlipViolation{PartKind::TensorPart, true, 1, 1, p.index,
                                                       p.index, *p.atom, *p.atom, std::move(t)});
        } else {
            Decomposition tr = tor_atoms(*p.atom, *p.atom); // lands in Tor(0,0), sign -1
            if (!exponent_divides_two(tr))
                out.violations.push_back(FlipViolation{PartKind::TorPart, true, 0, 0, p.index,
                                                       p.index, *p.atom, *p.atom, std::move(tr)});
        }
    }
    out.identity = out.violations.empty();
    return out;
}

std::set<std::uint64_t> default_test_primes(const GradedGroup& a) {
    std::set<std::uint64_t> out{2, 3, 5};
    auto scan = [&](const Decomposition& d) {
        for (const Atom& x : d) {
            if (const auto* c = std::get_if<Cyclic>(&x)) out.insert(c->p);
            if (const auto* pr = std::get_if<Prufer>(&x)) out.insert(pr->p);
            if (const auto* q = std::get_if<QLoc>(&x)) out.insert(q->primes.begin(), q->primes.end());
        }
    };
    scan(a.g0);
    scan(a.g1);
    return out;
}

NecessaryResult necessary_check(const GradedGroup& a, const std::set<std::uint64_t>& primes,
                                unsigned depth) {
    NecessaryResult res;
    auto flip_stage = [&](const std::string& label, const GradedGroup& g) {
        NecessaryStage st;
        st.label = label;
        st.group = g;
        st.verdict = flip_is_identity(g);
        st.ok = st.verdict.identity;
        if (!st.ok) st.note = std::to_string(st.verdict.violations.size()) + " obstruction(s)";
        res.trace.push_back(std::move(st));
        if (!res.trace.back().ok) res.ok = false;
        return res.ok;
    };

    if (!flip_stage("flip", a)) return res;

    const std::size_t rank = a.g0.torsion_free_rank() + a.g1.torsion_free_rank();
    NecessaryStage rank_stage;
    rank_stage.label = "torsion-free rank";
    rank_stage.group = a;
    rank_stage.ok = rank <= 1;
    rank_stage.note = "total torsion-free rank " + std::to_string(rank) + ", bound 1";
    res.trace.push_back(std::move(rank_stage));
    if (rank > 1) {
        res.ok = false;
        return res;
    }

    GradedGroup cur = a;
    for (unsigned d = 1; d <= depth; ++d) {
        cur = kunneth_square(cur);
        if (!flip_stage("flip of square^" + std::to_string(d), cur)) return res;
    }

    std::set<std::uint64_t> P = primes.empty() ? default_test_primes(a) : primes;
    for (std::uint64_t p : P) {
        GradedGroup tp;
        tp.g1.add(make_prufer(p));
        GradedGroup product = collapse(kunneth(a, tp));
        if (!flip_stage("flip of product with (0, QZ[" + std::to_string(p) + "^inf])", product))
            return res;
    }
    return res;
}

ClassifyVerdict classify(const GradedGroup& a) {
    ClassifyVerdict out;

    std::vector<std::uint64_t> m_primes;
    for (const Atom& x : a.g1) {
        const auto* pr = std::get_if<Prufer>(&x);
        if (!pr) {
            out.failed_clause = "grade-1 shape";
            out.detail = "grade 1 contains " + atom_name(x) + ", not a Prufer group";
            return out;
        }
        m_primes.push_back(pr->p);
    }
    for (std::size_t i = 1; i < m_primes.size(); ++i)
        if (m_primes[i] == m_primes[i - 1]) {
            out.failed_clause = "grade-1 shape";
            out.detail = "grade 1 repeats the prime " + std::to_string(m_primes[i]);
            return out;
        }
    std::vector<SupernaturalNumber::Factor> mf;
    for (std::uint64_t p : m_primes) mf.emplace_back(p, Valuation::inf());
    SupernaturalNumber m = SupernaturalNumber::from_factors(std::move(mf));

    if (a.g0.is_zero()) {
        out.admissible = true;
        out.kind = AdmissibleKind::ZeroCase;
        out.m = m;
        out.detail = "0 in grade 0, Q[" + m.to_string() + "]/Z in grade 1";
        return out;
    }

    SupernaturalNumber n;
    if (a.g0.size() != 1) {
        out.failed_clause = "grade-0 shape";
        out.detail = "grade 0 has " + std::to_string(a.g0.size()) + " summands, need 0 or Q_n";
        return out;
    }
    if (std::holds_alternative<FreeZ>(a.g0[0])) {
        n = SupernaturalNumber::one();
    } else if (const auto* q = std::get_if<QLoc>(&a.g0[0])) {
        std::vector<SupernaturalNumber::Factor> nf;
        for (std::uint64_t p : q->primes) nf.emplace_back(p, Valuation::inf());
        n = SupernaturalNumber::from_factors(std::move(nf));
    } else {
        out.failed_clause = "grade-0 shape";
        out.detail = "grade 0 is " + atom_name(a.g0[0]) + ", not Z or a localization of Q";
        return out;
    }

    if (!m.divides(n)) {
        out.failed_clause = "divisibility";
        out.detail = "m = " + m.to_string() + " does not divide n = " + n.to_string();
        return out;
    }

    out.admissible = true;
    out.kind = AdmissibleKind::QnCase;
    out.m = m;
    out.n = n;
    out.detail = "Q[" + n.to_string() + "] in grade 0, Q[" + m.to_string() + "]/Z in grade 1";
    return out;
}

} // namespace flipk
