#include "flipk/abelian.hpp"

#include <algorithm>
#include <stdexcept>

#include "flipk/errors.hpp"
#include "flipk/smith.hpp"

namespace flipk {

Atom make_cyclic(std::uint64_t p, std::uint32_t a) {
    if (!is_prime(p)) throw std::invalid_argument("Cyclic prime expected, got " + std::to_string(p));
    if (a < 1) throw std::invalid_argument("Cyclic exponent must be >= 1");
    return Cyclic{p, a};
}

Atom make_prufer(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("Prufer prime expected, got " + std::to_string(p));
    return Prufer{p};
}

Atom make_qloc(std::set<std::uint64_t> primes) {
    if (primes.empty()) return FreeZ{};
    for (std::uint64_t p : primes)
        if (!is_prime(p)) throw std::invalid_argument("QLoc prime expected, got " + std::to_string(p));
    return QLoc{std::vector<std::uint64_t>(primes.begin(), primes.end())};
}

bool atom_less(const Atom& x, const Atom& y) {
    if (x.index() != y.index()) return x.index() < y.index();
    switch (x.index()) {
        case 0: return false;
        case 1: {
            const auto &a = std::get<Cyclic>(x), &b = std::get<Cyclic>(y);
            return a.p != b.p ? a.p < b.p : a.a < b.a;
        }
        case 2: return std::get<Prufer>(x).p < std::get<Prufer>(y).p;
        default: return std::get<QLoc>(x).primes < std::get<QLoc>(y).primes;
    }
}

bool atom_is_finitely_generated(const Atom& x) {
    return std::holds_alternative<FreeZ>(x) || std::holds_alternative<Cyclic>(x);
}

Int cyclic_order(const Cyclic& c) {
    Int v = 1;
    for (std::uint32_t i = 0; i < c.a; ++i) v *= c.p;
    return v;
}

std::string atom_name(const Atom& x) {
    switch (x.index()) {
        case 0: return "Z";
        case 1: return "Z/" + cyclic_order(std::get<Cyclic>(x)).str();
        case 2: return "QZ[" + std::to_string(std::get<Prufer>(x).p) + "^inf]";
        default: {
            std::string s = "Q[";
            const auto& ps = std::get<QLoc>(x).primes;
            for (std::size_t i = 0; i < ps.size(); ++i) {
                if (i) s += '*';
                s += std::to_string(ps[i]) + "^inf";
            }
            return s + "]";
        }
    }
}

Decomposition::Decomposition(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end(), atom_less);
}

void Decomposition::add(Atom a) {
    auto it = std::upper_bound(atoms_.begin(), atoms_.end(), a, atom_less);
    atoms_.insert(it, std::move(a));
}

void Decomposition::add_all(const Decomposition& d) {
    for (const Atom& a : d) add(a);
}

Decomposition Decomposition::direct_sum(const Decomposition& a, const Decomposition& b) {
    Decomposition out = a;
    out.add_all(b);
    return out;
}

bool Decomposition::finitely_generated() const {
    return std::all_of(atoms_.begin(), atoms_.end(), atom_is_finitely_generated);
}

std::size_t Decomposition::torsion_free_rank() const {
    std::size_t n = 0;
    for (const Atom& a : atoms_)
        if (std::holds_alternative<FreeZ>(a) || std::holds_alternative<QLoc>(a)) ++n;
    return n;
}

bool exponent_divides_two(const Decomposition& d) {
    for (const Atom& a : d) {
        const Cyclic* c = std::get_if<Cyclic>(&a);
        if (!c || c->p != 2 || c->a != 1) return false;
    }
    return true;
}

PresentationMatrix cyclic_presentation(const Int& n) {
    IntMatrix m(1, 1);
    m(0, 0) = n;
    return PresentationMatrix(m);
}

PresentationMatrix free_presentation(std::size_t rank) {
    return PresentationMatrix(IntMatrix(0, rank));
}

PresentationMatrix diagonal_presentation(const IntVec& moduli) {
    std::size_t torsion = 0;
    for (const Int& m : moduli)
        if (m != 0) ++torsion;
    IntMatrix rel(torsion, moduli.size());
    std::size_t r = 0;
    for (std::size_t j = 0; j < moduli.size(); ++j)
        if (moduli[j] != 0) rel(r++, j) = moduli[j];
    return PresentationMatrix(rel);
}

PresentationMatrix presentation_of(const Decomposition& d) {
    IntVec moduli;
    for (const Atom& a : d) {
        if (std::holds_alternative<FreeZ>(a)) moduli.push_back(0);
        else if (const Cyclic* c = std::get_if<Cyclic>(&a)) moduli.push_back(cyclic_order(*c));
        else throw UnsupportedInputError("presentation requires a finitely generated group, got " + atom_name(a));
    }
    return diagonal_presentation(moduli);
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(const Int& d) {
    if (d < 1) throw std::invalid_argument("factorize expects a positive integer");
    Int n = d;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    const std::uint64_t trial_bound = 1000000;
    for (std::uint64_t p = 2; p <= trial_bound && Int(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        std::uint32_t e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) {
        // no factor below the bound: n is prime iff it fits below bound^2
        if (n >= Int(trial_bound) * trial_bound)
            throw ResourceLimitError("invariant factor " + d.str() + " exceeds the factorization bound");
        out.emplace_back(n.convert_to<std::uint64_t>(), 1);
    }
    return out;
}

Decomposition decompose(const PresentationMatrix& M) {
    SmithForm s = smith_normal_form(M.rel);
    Decomposition out;
    std::size_t rank = 0;
    for (const Int& d : s.diagonal()) {
        if (d == 0) continue;
        ++rank;
        if (d == 1) continue;
        for (auto [p, a] : factorize(d)) out.add(make_cyclic(p, a));
    }
    for (std::size_t i = rank; i < M.generators(); ++i) out.add(FreeZ{});
    return out;
}

} // namespace flipk
