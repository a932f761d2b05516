#pragma once

#include <vector>

#include "flipk/abelian.hpp"
#include "flipk/smith.hpp"

namespace flipk {

// quotient K/R of a lattice K ⊆ Z^n (columns of a basis) by a sublattice R,
// with explicit generators: basis columns are ambient vectors, coords() writes an
// ambient member of K in those generators, reduced modulo each generator's modulus
class SubquotientGroup {
public:
    SubquotientGroup(IntMatrix kernel_basis, const IntMatrix& sub_gens);

    const Decomposition& value() const { return dec_; }
    const IntMatrix& basis() const { return basis_; }
    const IntVec& moduli() const { return moduli_; }
    std::size_t ambient_dim() const { return B1_.rows(); }
    std::size_t generator_count() const { return kept_.size(); }

    // throws InternalError when `ambient` is not in K
    IntVec coords(const IntVec& ambient) const;

private:
    IntMatrix B1_;
    SmithForm B1snf_;
    IntMatrix U_;
    std::vector<std::size_t> kept_;
    IntVec moduli_;  // parallel to kept_, 0 = free
    IntMatrix basis_;
    Decomposition dec_;
};

// a presented group rewritten on diagonal coordinates: retained coordinate i has
// modulus moduli[i] (>= 2 or 0 = free); to_diag/from_diag convert generator coords
struct DiagGroup {
    std::size_t gens = 0;
    IntVec moduli;
    std::vector<std::size_t> kept;
    IntMatrix to_diag;   // full gens×gens transform U
    IntMatrix from_diag; // U^{-1}
    Decomposition dec;
};

DiagGroup diagonalize(const PresentationMatrix& M);

// generator-coordinate map F rewritten between diagonal coordinate systems
IntMatrix diag_map(const DiagGroup& target, const IntMatrix& F, const DiagGroup& source);

// do the columns of F generate Z^k modulo the diagonal relations `target_moduli`?
bool surjective_mod(const IntMatrix& F, const IntVec& target_moduli);

// maps between isomorphic finitely generated groups are isos iff surjective (Hopfian)
bool induces_isomorphism(const IntMatrix& F, const IntVec& target_moduli,
                         const Decomposition& source_dec, const Decomposition& target_dec);

// F ≡ identity modulo the coordinate moduli (exact on free coordinates)
bool is_identity_mod(const IntMatrix& F, const IntVec& moduli);

Int mod_reduce(const Int& v, const Int& m); // canonical representative in [0, m); v itself if m = 0

} // namespace flipk
