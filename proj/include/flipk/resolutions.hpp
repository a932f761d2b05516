#pragma once

#include <cstdint>
#include <optional>

#include "flipk/abelian.hpp"
#include "flipk/presented.hpp"
#include "flipk/smith.hpp"

namespace flipk {

// two-term free resolution 0 -> Z^{P_rank} -> Z^{Q_rank} -> G -> 0 of a presented
// group: `inclusion` has injective columns spanning the relation lattice
struct FreeResolution {
    PresentationMatrix group;
    IntMatrix inclusion;
    SmithForm inclusion_snf;

    std::size_t P_rank() const { return inclusion.cols(); }
    std::size_t Q_rank() const { return inclusion.rows(); }
};

FreeResolution free_resolution(const PresentationMatrix& M);

// torsion product computed literally as the kernel of (inclusion ⊗ id H) on the
// presented groups P⊗H -> Q⊗H; ambient coordinates are row-major pairs (P index, H gen)
struct LeftTor {
    FreeResolution res; // resolution of the left argument
    PresentationMatrix left, right;
    SubquotientGroup kernel;

    const Decomposition& value() const { return kernel.value(); }
};

// mirrored variant resolving the right argument; ambient pairs (G gen, P index)
struct RightTor {
    FreeResolution res; // resolution of the right argument
    PresentationMatrix left, right;
    SubquotientGroup kernel;

    const Decomposition& value() const { return kernel.value(); }
};

LeftTor ltor(const PresentationMatrix& G, const PresentationMatrix& H);
RightTor rtor(const PresentationMatrix& G, const PresentationMatrix& H);

// a homomorphism written on the generators of two torsion-product groups
struct TorMatrix {
    IntMatrix mat;
    IntVec row_moduli, col_moduli;
};

TorMatrix compose(const TorMatrix& second, const TorMatrix& first);
bool tor_matrix_is_identity(const TorMatrix& m);

// comparison map LTor(G,H) -> RTor(G,H); throws InternalError if the
// double-complex chase fails to produce an isomorphism
TorMatrix ltor_rtor_iso(const PresentationMatrix& G, const PresentationMatrix& H);

// reusable state for repeated η chases on one (G, H) pair (e.g. across lift seeds)
struct EtaContext {
    PresentationMatrix G, H;
    LeftTor lt;      // LTor(G,H)
    LeftTor swapped; // LTor(H,G)
    IntMatrix AGIh, AHIg, source_rel;
    SmithForm MGt_snf;
};

EtaContext make_eta_context(const PresentationMatrix& G, const PresentationMatrix& H);
TorMatrix eta(const EtaContext& ctx, std::uint64_t lift_seed = 0);

// swap isomorphism LTor(G,H) -> LTor(H,G) via the transposition chase; lift_seed != 0
// perturbs every intermediate lift by random relation-lattice vectors (the class of
// the result must not depend on it)
TorMatrix eta(const PresentationMatrix& G, const PresentationMatrix& H,
              std::uint64_t lift_seed = 0);

// unique lift Z^{P(source)} -> Z^{P(target)} of a generator map f between the
// presented groups; throws InternalError when f does not respect the relations
IntMatrix lift_to_P(const FreeResolution& target, const FreeResolution& source,
                    const IntMatrix& f);

// functorial map LTor(G,H) -> LTor(G',H') induced by generator maps f: G -> G'
// and g: H -> H', written on the kernel generators
IntMatrix tor_induced(const LeftTor& source, const LeftTor& target,
                      const IntMatrix& f, const IntMatrix& g);

// helpers for block-structured solves against kron(I_n, B) and kron(B, I_n)
std::optional<IntVec> solve_kron_left(const SmithForm& B, std::size_t b_rows,
                                      std::size_t b_cols, const IntVec& v, std::size_t n);
std::optional<IntVec> solve_kron_right(const SmithForm& B, std::size_t b_rows,
                                       std::size_t b_cols, const IntVec& v, std::size_t n);

// reindex Z^{m·n} -> Z^{n·m}: entry (i·n + k) moves to (k·m + i)
IntVec transpose_factors(const IntVec& v, std::size_t m, std::size_t n);

} // namespace flipk
