#pragma once

#include <optional>

#include "flipk/matrix.hpp"

namespace flipk {

// U*M*V = D with U, V unimodular; D diagonal, nonnegative, d1 | d2 | ..., zeros trailing.
// Uinv/Vinv are maintained alongside so callers never invert.
struct SmithForm {
    IntMatrix U, V, D, Uinv, Vinv;
    std::size_t rank() const; // number of nonzero diagonal entries
    IntVec diagonal() const;
};

// deterministic: pivot is always the smallest-magnitude nonzero entry,
// earliest in row-major order on ties
SmithForm smith_normal_form(const IntMatrix& M);

// basis of the column lattice of A (column-style Hermite reduction);
// result has full column rank, possibly zero columns for the zero lattice
IntMatrix hnf_cols(const IntMatrix& A);

// basis of {x : A x = 0} as matrix columns (saturated, i.e. a direct summand basis)
IntMatrix kernel_cols(const IntMatrix& A);

// one integer solution of A x = b, std::nullopt if none;
// canonical: zero on the kernel coordinates of the SNF change of basis
std::optional<IntVec> solve_cols(const IntMatrix& A, const IntVec& b);
// same, reusing a precomputed SNF of A
std::optional<IntVec> solve_cols(const SmithForm& S, const IntVec& b);

// membership of v in the column lattice of L
bool in_lattice(const IntMatrix& L, const IntVec& v);

// solve A x ≡ b modulo the column lattice of L
std::optional<IntVec> solve_mod(const IntMatrix& A, const IntVec& b, const IntMatrix& L);

// basis of {x : A x ∈ column-lattice(L)}
IntMatrix preimage_lattice(const IntMatrix& A, const IntMatrix& L);

} // namespace flipk
