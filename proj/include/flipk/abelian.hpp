#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "flipk/matrix.hpp"
#include "flipk/supernat.hpp"

namespace flipk {

// indecomposables of the class: Z, Z/p^a, Z(p^inf), and the localization Q_S
struct FreeZ {
    friend bool operator==(const FreeZ&, const FreeZ&) = default;
};
struct Cyclic {
    std::uint64_t p;
    std::uint32_t a;
    friend bool operator==(const Cyclic&, const Cyclic&) = default;
};
struct Prufer {
    std::uint64_t p;
    friend bool operator==(const Prufer&, const Prufer&) = default;
};
struct QLoc {
    std::vector<std::uint64_t> primes; // sorted, distinct, nonempty
    friend bool operator==(const QLoc&, const QLoc&) = default;
};

using Atom = std::variant<FreeZ, Cyclic, Prufer, QLoc>;

Atom make_cyclic(std::uint64_t p, std::uint32_t a);
Atom make_prufer(std::uint64_t p);
Atom make_qloc(std::set<std::uint64_t> primes); // empty set canonicalizes to FreeZ

bool atom_less(const Atom& x, const Atom& y);
bool atom_is_finitely_generated(const Atom& x); // FreeZ or Cyclic
Int cyclic_order(const Cyclic& c);              // p^a
std::string atom_name(const Atom& x);           // expression form, e.g. "Z/8"

// canonically sorted finite multiset of atoms; the zero group is the empty multiset
class Decomposition {
public:
    Decomposition() = default;
    explicit Decomposition(std::vector<Atom> atoms);

    void add(Atom a);
    void add_all(const Decomposition& d);
    static Decomposition direct_sum(const Decomposition& a, const Decomposition& b);

    bool is_zero() const { return atoms_.empty(); }
    std::size_t size() const { return atoms_.size(); }
    const Atom& operator[](std::size_t i) const { return atoms_[i]; }
    auto begin() const { return atoms_.begin(); }
    auto end() const { return atoms_.end(); }
    const std::vector<Atom>& atoms() const { return atoms_; }

    bool finitely_generated() const;
    std::size_t torsion_free_rank() const; // FreeZ + QLoc atom count

    friend bool operator==(const Decomposition&, const Decomposition&) = default;

private:
    std::vector<Atom> atoms_;
};

// multiset equality; sound and complete for this class of groups
inline bool is_isomorphic(const Decomposition& a, const Decomposition& b) { return a == b; }

// true iff 2*G = 0: every atom is Cyclic(2,1), or empty
bool exponent_divides_two(const Decomposition& d);

struct GradedGroup {
    Decomposition g0, g1;
    friend bool operator==(const GradedGroup&, const GradedGroup&) = default;
};

// each row is one relation among the generators; group = Z^generators / row-lattice
struct PresentationMatrix {
    IntMatrix rel;
    PresentationMatrix() = default;
    explicit PresentationMatrix(IntMatrix m) : rel(std::move(m)) {}
    std::size_t generators() const { return rel.cols(); }
    std::size_t relations() const { return rel.rows(); }
    friend bool operator==(const PresentationMatrix&, const PresentationMatrix&) = default;
};

PresentationMatrix cyclic_presentation(const Int& n);           // one generator, relation n*x = 0
PresentationMatrix free_presentation(std::size_t rank);         // no relations
PresentationMatrix diagonal_presentation(const IntVec& moduli); // modulus 0 means a free generator
// diagonal presentation of a finitely generated decomposition;
// throws UnsupportedInputError on infinite atoms
PresentationMatrix presentation_of(const Decomposition& d);

// prime factorization of d >= 1 by trial division (bounded; desk scale)
std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(const Int& d);

// structure theorem: invariant factors of the relation matrix, split into primary atoms
Decomposition decompose(const PresentationMatrix& M);

} // namespace flipk
