#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "flipk/abelian.hpp"
#include "flipk/supernat.hpp"

namespace flipk {

// closed-form tables on atoms; both functors are symmetric and extend bilinearly
Decomposition tensor_atoms(const Atom& a, const Atom& b);
Decomposition tor_atoms(const Atom& a, const Atom& b);

Decomposition tensor(const Decomposition& a, const Decomposition& b);
Decomposition tor(const Decomposition& a, const Decomposition& b);

struct OracleLimits {
    std::size_t max_generators = 4096;
};

// presentation of G ⊗ H on the generator grid, row-major pairs (G gen, H gen)
PresentationMatrix tensor_presentation(const PresentationMatrix& G, const PresentationMatrix& H);

// independent checks of the finitely generated part of the tables, straight from
// presentations: elementary-divisor collapse for ⊗, resolution kernel for Tor
Decomposition oracle_tensor(const PresentationMatrix& G, const PresentationMatrix& H,
                            const OracleLimits& limits = {});
Decomposition oracle_tor(const PresentationMatrix& G, const PresentationMatrix& H,
                         const OracleLimits& limits = {});

// directed system of presented groups over stage indices 0,1,2,...; map(k) sends
// generators of stage k to stage k+1
struct DirectedSystem {
    std::function<PresentationMatrix(std::size_t)> stage;
    std::function<IntMatrix(std::size_t)> map;
    std::string description;
};

struct ColimitOptions {
    std::size_t window = 3;  // stabilization certificates examine this many tail steps
    std::size_t budget = 12; // stages computed before giving up
};

// evaluates the colimit when a tail certificate applies (stabilized stages, a
// stable integer multiplier on Z, or prime-local growth patterns); throws
// InconclusiveColimitError when the budget is exhausted without a certificate
Decomposition colimit(const DirectedSystem& sys, const ColimitOptions& opts = {});

DirectedSystem constant_system(PresentationMatrix M, std::string description = "");
DirectedSystem prufer_tower(std::uint64_t p);
DirectedSystem qloc_tower(const SupernaturalNumber& n);
DirectedSystem qmodz_tower(const SupernaturalNumber& m);

// stagewise tensor/Tor of two systems with the induced maps
DirectedSystem tensor_system(DirectedSystem a, DirectedSystem b);
DirectedSystem tor_system(DirectedSystem a, DirectedSystem b);

// one directed-system realization per table entry involving an infinite atom
struct ColimitCheck {
    std::string description;
    bool is_tor = false;
    Atom left, right;
    Decomposition expected;
    DirectedSystem system;
};

std::vector<ColimitCheck> colimit_table_checks();

// directed system whose colimit realizes the atom (finitely generated atoms are
// constant systems)
DirectedSystem atom_system(const Atom& a);

} // namespace flipk
