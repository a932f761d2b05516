#include "flipk/functors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "flipk/errors.hpp"
#include "flipk/expr.hpp"
#include "flipk/presented.hpp"
#include "flipk/resolutions.hpp"
#include "flipk/smith.hpp"

namespace flipk {

namespace {

IntMatrix scalar_matrix(const Int& v) {
    IntMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

Decomposition one(Atom a) {
    Decomposition d;
    d.add(std::move(a));
    return d;
}

bool in_primes(const std::vector<std::uint64_t>& sorted, std::uint64_t p) {
    return std::binary_search(sorted.begin(), sorted.end(), p);
}

} // namespace

Decomposition tensor_atoms(const Atom& a, const Atom& b) {
    if (a.index() > b.index()) return tensor_atoms(b, a);
    if (std::holds_alternative<FreeZ>(a)) return one(b);
    if (const auto* ca = std::get_if<Cyclic>(&a)) {
        if (const auto* cb = std::get_if<Cyclic>(&b))
            return ca->p == cb->p ? one(make_cyclic(ca->p, std::min(ca->a, cb->a)))
                                  : Decomposition{};
        if (std::holds_alternative<Prufer>(b)) return {};
        const auto& q = std::get<QLoc>(b);
        return in_primes(q.primes, ca->p) ? Decomposition{} : one(*ca);
    }
    if (const auto* pa = std::get_if<Prufer>(&a)) {
        if (std::holds_alternative<Prufer>(b)) return {};
        const auto& q = std::get<QLoc>(b);
        return in_primes(q.primes, pa->p) ? Decomposition{} : one(*pa);
    }
    const auto& qa = std::get<QLoc>(a);
    const auto& qb = std::get<QLoc>(b);
    std::set<std::uint64_t> u(qa.primes.begin(), qa.primes.end());
    u.insert(qb.primes.begin(), qb.primes.end());
    return one(make_qloc(u));
}

Decomposition tor_atoms(const Atom& a, const Atom& b) {
    if (a.index() > b.index()) return tor_atoms(b, a);
    if (std::holds_alternative<FreeZ>(a) || std::holds_alternative<QLoc>(a) ||
        std::holds_alternative<QLoc>(b))
        return {};
    if (const auto* ca = std::get_if<Cyclic>(&a)) {
        if (const auto* cb = std::get_if<Cyclic>(&b))
            return ca->p == cb->p ? one(make_cyclic(ca->p, std::min(ca->a, cb->a)))
                                  : Decomposition{};
        const auto& pb = std::get<Prufer>(b);
        return ca->p == pb.p ? one(*ca) : Decomposition{};
    }
    // remaining case: both Prufer
    const auto& pa = std::get<Prufer>(a);
    const auto& pb = std::get<Prufer>(b);
    return pa.p == pb.p ? one(pa) : Decomposition{};
}

namespace {

Decomposition bilinear(const Decomposition& a, const Decomposition& b,
                       Decomposition (*table)(const Atom&, const Atom&)) {
    Decomposition out;
    for (const Atom& x : a)
        for (const Atom& y : b) out.add_all(table(x, y));
    return out;
}

} // namespace

Decomposition tensor(const Decomposition& a, const Decomposition& b) {
    return bilinear(a, b, &tensor_atoms);
}

Decomposition tor(const Decomposition& a, const Decomposition& b) {
    return bilinear(a, b, &tor_atoms);
}

PresentationMatrix tensor_presentation(const PresentationMatrix& G, const PresentationMatrix& H) {
    const std::size_t g = G.generators(), h = H.generators();
    IntMatrix rels = kron(G.rel, IntMatrix::identity(h))
                         .vstack(kron(IntMatrix::identity(g), H.rel));
    return PresentationMatrix{std::move(rels)};
}

Decomposition oracle_tensor(const PresentationMatrix& G, const PresentationMatrix& H,
                            const OracleLimits& limits) {
    if (G.generators() * H.generators() > limits.max_generators)
        throw ResourceLimitError("tensor oracle: generator grid exceeds the configured limit");
    return decompose(tensor_presentation(G, H));
}

Decomposition oracle_tor(const PresentationMatrix& G, const PresentationMatrix& H,
                         const OracleLimits& limits) {
    FreeResolution res = free_resolution(G);
    const std::size_t g = G.generators(), h = H.generators(), r = res.P_rank();
    if (g * h > limits.max_generators || r * h > limits.max_generators)
        throw ResourceLimitError("tor oracle: generator grid exceeds the configured limit");
    IntMatrix F = kron(res.inclusion, IntMatrix::identity(h));
    IntMatrix target_rel = kron(IntMatrix::identity(g), H.rel.transposed());
    IntMatrix source_rel = kron(IntMatrix::identity(r), H.rel.transposed());
    IntMatrix K = preimage_lattice(F, target_rel);
    // quotient the kernel lattice by the source relations via coefficient columns
    SmithForm Ks = smith_normal_form(K);
    IntMatrix C(K.cols(), source_rel.cols());
    for (std::size_t j = 0; j < source_rel.cols(); ++j) {
        auto w = solve_cols(Ks, source_rel.col(j));
        if (!w) throw InternalError("tor oracle: relation escaped the kernel");
        C.set_col(j, *w);
    }
    return decompose(PresentationMatrix{C.transposed()});
}

DirectedSystem constant_system(PresentationMatrix M, std::string description) {
    const std::size_t n = M.generators();
    return DirectedSystem{
        [M = std::move(M)](std::size_t) { return M; },
        [n](std::size_t) { return IntMatrix::identity(n); },
        description.empty() ? "constant" : std::move(description)};
}

DirectedSystem prufer_tower(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("prufer_tower: p must be prime");
    return DirectedSystem{[p](std::size_t k) {
                              Int n = 1;
                              for (std::size_t i = 0; i <= k; ++i) n *= p;
                              return cyclic_presentation(n);
                          },
                          [p](std::size_t) { return scalar_matrix(Int(p)); },
                          "union of Z/" + std::to_string(p) + "^k"};
}

namespace {

Int truncated_order(const SupernaturalNumber& n, std::size_t k) {
    if (k == 0) return 1;
    return n.truncate(static_cast<std::uint32_t>(k)).to_integer();
}

} // namespace

DirectedSystem qloc_tower(const SupernaturalNumber& n) {
    return DirectedSystem{[](std::size_t) { return free_presentation(1); },
                          [n](std::size_t k) {
                              return scalar_matrix(truncated_order(n, k + 1) /
                                                   truncated_order(n, k));
                          },
                          "denominator tower for Q[" + n.to_string() + "]"};
}

DirectedSystem qmodz_tower(const SupernaturalNumber& m) {
    return DirectedSystem{[m](std::size_t k) { return cyclic_presentation(truncated_order(m, k + 1)); },
                          [m](std::size_t k) {
                              return scalar_matrix(truncated_order(m, k + 2) /
                                                   truncated_order(m, k + 1));
                          },
                          "torsion tower for QZ[" + m.to_string() + "]"};
}

DirectedSystem tensor_system(DirectedSystem a, DirectedSystem b) {
    DirectedSystem out;
    out.description = "(" + a.description + ") x (" + b.description + ")";
    out.stage = [a, b](std::size_t k) { return tensor_presentation(a.stage(k), b.stage(k)); };
    out.map = [a, b](std::size_t k) { return kron(a.map(k), b.map(k)); };
    return out;
}

DirectedSystem tor_system(DirectedSystem a, DirectedSystem b) {
    auto cache = std::make_shared<std::map<std::size_t, std::shared_ptr<LeftTor>>>();
    auto get = [cache, a, b](std::size_t k) {
        auto it = cache->find(k);
        if (it != cache->end()) return it->second;
        auto lt = std::make_shared<LeftTor>(ltor(a.stage(k), b.stage(k)));
        cache->emplace(k, lt);
        return lt;
    };
    DirectedSystem out;
    out.description = "Tor(" + a.description + ", " + b.description + ")";
    out.stage = [get](std::size_t k) { return diagonal_presentation(get(k)->kernel.moduli()); };
    out.map = [get, a, b](std::size_t k) {
        return tor_induced(*get(k), *get(k + 1), a.map(k), b.map(k));
    };
    return out;
}

namespace {

std::uint32_t valuation_of(Int v, std::uint64_t p) {
    std::uint32_t e = 0;
    while (v != 0 && v % p == 0) {
        v /= p;
        ++e;
    }
    return e;
}

struct PrimePart {
    std::vector<std::size_t> idx;
    std::vector<std::uint32_t> exp;
};

PrimePart prime_part(const DiagGroup& dg, std::uint64_t p) {
    PrimePart out;
    for (std::size_t i = 0; i < dg.moduli.size(); ++i) {
        std::uint32_t e = valuation_of(dg.moduli[i], p);
        if (e > 0) {
            out.idx.push_back(i);
            out.exp.push_back(e);
        }
    }
    return out;
}

// the p-primary component of the tail converges to `out` when a certificate applies
bool analyze_prime(std::uint64_t p, const std::vector<DiagGroup>& dg,
                   const std::vector<IntMatrix>& fhat, std::size_t t0, Decomposition& out) {
    const std::size_t last = dg.size() - 1;
    std::vector<PrimePart> parts;
    for (std::size_t k = t0; k <= last; ++k) parts.push_back(prime_part(dg[k], p));

    auto sorted_exps = [](const PrimePart& pp) {
        auto e = pp.exp;
        std::sort(e.begin(), e.end());
        return e;
    };

    // stabilized p-part moved by isomorphisms
    bool constant = true;
    for (std::size_t i = 1; i < parts.size(); ++i)
        if (sorted_exps(parts[i]) != sorted_exps(parts[0])) constant = false;
    if (constant) {
        bool isos = true;
        for (std::size_t k = t0; k < last && isos; ++k) {
            const PrimePart& src = parts[k - t0];
            const PrimePart& dst = parts[k - t0 + 1];
            IntMatrix sub(dst.idx.size(), src.idx.size());
            IntVec pmods(dst.idx.size());
            for (std::size_t r = 0; r < dst.idx.size(); ++r) {
                Int pe = 1;
                for (std::uint32_t i = 0; i < dst.exp[r]; ++i) pe *= p;
                pmods[r] = pe;
                for (std::size_t c = 0; c < src.idx.size(); ++c)
                    sub(r, c) = mod_reduce(fhat[k](dst.idx[r], src.idx[c]), pe);
            }
            isos = surjective_mod(sub, pmods);
        }
        if (isos) {
            for (std::uint32_t e : parts[0].exp) out.add(make_cyclic(p, e));
            return true;
        }
    }

    // single p-coordinate per stage with a uniform growth/valuation pattern
    for (const PrimePart& pp : parts)
        if (pp.idx.size() != 1) return false;
    std::vector<std::int64_t> a;
    for (const PrimePart& pp : parts) a.push_back(pp.exp[0]);
    const std::int64_t growth = a[1] - a[0];
    if (growth < 0) return false;
    for (std::size_t i = 1; i + 1 < a.size(); ++i)
        if (a[i + 1] - a[i] != growth) return false;

    std::size_t zero_count = 0;
    std::vector<std::uint32_t> vals;
    for (std::size_t k = t0; k < last; ++k) {
        Int entry = fhat[k](parts[k - t0 + 1].idx[0], parts[k - t0].idx[0]);
        std::uint32_t cap = static_cast<std::uint32_t>(a[k - t0 + 1]);
        if (entry == 0 || valuation_of(entry, p) >= cap)
            ++zero_count;
        else
            vals.push_back(valuation_of(entry, p));
    }
    if (zero_count == last - t0) return true; // every class eventually dies
    if (zero_count != 0) return false;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] != vals[0]) return false;
    const std::int64_t e0 = vals[0];
    // composite maps gain valuation e0 per step against capacity growth per step
    if (e0 > growth) return true;
    if (growth >= 1) {
        out.add(make_prufer(p));
        return true;
    }
    return false; // e0 == growth == 0 would have been an isomorphism above
}

} // namespace

Decomposition colimit(const DirectedSystem& sys, const ColimitOptions& opts) {
    const std::size_t W = opts.window, B = opts.budget;
    if (W == 0 || B < W + 1) throw std::invalid_argument("colimit: budget must exceed window");
    std::vector<DiagGroup> dg;
    dg.reserve(B);
    for (std::size_t k = 0; k < B; ++k) dg.push_back(diagonalize(sys.stage(k)));
    std::vector<IntMatrix> fhat;
    fhat.reserve(B - 1);
    for (std::size_t k = 0; k + 1 < B; ++k) fhat.push_back(diag_map(dg[k + 1], sys.map(k), dg[k]));
    const std::size_t t0 = B - (W + 1), last = B - 1;

    // stabilized tail: equal stage groups connected by isomorphisms
    bool stable = true;
    for (std::size_t k = t0; k < last && stable; ++k) stable = dg[k].dec == dg[k + 1].dec;
    if (stable) {
        bool isos = true;
        for (std::size_t k = t0; k < last && isos; ++k)
            isos = induces_isomorphism(fhat[k], dg[k + 1].moduli, dg[k].dec, dg[k + 1].dec);
        if (isos) return dg[last].dec;
    }

    // free rank one with a stable multiplier: union of (1/m^k) Z
    Decomposition just_z;
    just_z.add(FreeZ{});
    bool all_z = true;
    for (std::size_t k = t0; k <= last && all_z; ++k) all_z = dg[k].dec == just_z;
    if (all_z) {
        Int m = fhat[t0](0, 0);
        if (m < 0) m = -m;
        bool same = m != 0;
        for (std::size_t k = t0 + 1; k < last && same; ++k) {
            Int mk = fhat[k](0, 0);
            if (mk < 0) mk = -mk;
            same = mk == m;
        }
        if (same && m >= 2) {
            std::set<std::uint64_t> S;
            for (const auto& [p, e] : factorize(m)) S.insert(p);
            Decomposition out;
            out.add(make_qloc(S));
            return out;
        }
    }

    // all-torsion tail: handle each prime separately
    bool torsion = true;
    for (std::size_t k = t0; k <= last && torsion; ++k)
        for (const Int& mmod : dg[k].moduli)
            if (mmod == 0) torsion = false;
    if (torsion) {
        std::set<std::uint64_t> primes;
        for (std::size_t k = t0; k <= last; ++k)
            for (const Int& mmod : dg[k].moduli)
                for (const auto& [p, e] : factorize(mmod)) primes.insert(p);
        Decomposition out;
        bool ok = true;
        for (std::uint64_t p : primes)
            if (!analyze_prime(p, dg, fhat, t0, out)) {
                ok = false;
                break;
            }
        if (ok) return out;
    }

    throw InconclusiveColimitError("colimit: no stabilization certificate within budget " +
                                   std::to_string(B) + " (" + sys.description + ")");
}

DirectedSystem atom_system(const Atom& a) {
    if (std::holds_alternative<FreeZ>(a)) return constant_system(free_presentation(1), "Z");
    if (const auto* c = std::get_if<Cyclic>(&a)) {
        Int n = cyclic_order(*c);
        return constant_system(cyclic_presentation(n), atom_name(a));
    }
    if (const auto* pr = std::get_if<Prufer>(&a)) return prufer_tower(pr->p);
    const auto& q = std::get<QLoc>(a);
    std::vector<std::pair<std::uint64_t, Valuation>> factors;
    for (std::uint64_t p : q.primes) factors.emplace_back(p, Valuation::inf());
    return qloc_tower(SupernaturalNumber::from_factors(factors));
}

namespace {

ColimitCheck make_check(bool is_tor, const Atom& l, const Atom& r) {
    DirectedSystem sys = is_tor ? tor_system(atom_system(l), atom_system(r))
                                : tensor_system(atom_system(l), atom_system(r));
    Decomposition expected = is_tor ? tor_atoms(l, r) : tensor_atoms(l, r);
    std::string desc = (is_tor ? std::string("Tor(") : std::string("tensor(")) + atom_name(l) +
                       ", " + atom_name(r) + ") = " + format_decomposition(expected);
    return ColimitCheck{std::move(desc), is_tor, l, r, std::move(expected), std::move(sys)};
}

} // namespace

std::vector<ColimitCheck> colimit_table_checks() {
    const Atom z = FreeZ{};
    const Atom c23 = make_cyclic(2, 3); // Z/8
    const Atom c31 = make_cyclic(3, 1);
    const Atom p2 = make_prufer(2);
    const Atom p3 = make_prufer(3);
    const Atom q2 = make_qloc({2});
    const Atom q3 = make_qloc({3});
    std::vector<ColimitCheck> out;
    out.push_back(make_check(false, z, p2));
    out.push_back(make_check(false, z, q2));
    out.push_back(make_check(false, c23, p2));
    out.push_back(make_check(false, c23, p3));
    out.push_back(make_check(false, c23, q2));
    out.push_back(make_check(false, c23, q3));
    out.push_back(make_check(false, q2, c23));
    out.push_back(make_check(false, p2, p2));
    out.push_back(make_check(false, p2, p3));
    out.push_back(make_check(false, p2, q2));
    out.push_back(make_check(false, p2, q3));
    out.push_back(make_check(false, q2, q3));
    out.push_back(make_check(false, q2, q2));
    out.push_back(make_check(true, z, p2));
    out.push_back(make_check(true, q2, p2));
    out.push_back(make_check(true, q2, c23));
    out.push_back(make_check(true, p2, c23));
    out.push_back(make_check(true, c23, p2));
    out.push_back(make_check(true, p2, c31));
    out.push_back(make_check(true, p2, p2));
    out.push_back(make_check(true, p2, p3));
    return out;
}

} // namespace flipk
