#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flipk/abelian.hpp"
#include "flipk/functors.hpp"
#include "flipk/supernat.hpp"

namespace flipk {

enum class PartKind { TensorPart, TorPart };

std::string part_kind_name(PartKind k);

// one summand A_i ⊗ B_j (degree i+j) or Tor(A_i, B_j) (degree i+j+1), mod 2
struct KunnethComponent {
    PartKind kind;
    int i = 0, j = 0;
    Decomposition value;

    int degree() const { return (kind == PartKind::TensorPart ? i + j : i + j + 1) & 1; }
};

struct KunnethGroup {
    std::vector<KunnethComponent> components; // fixed order: ⊗(0,0),(0,1),(1,0),(1,1), then Tor
};

KunnethGroup kunneth(const GradedGroup& a, const GradedGroup& b);
GradedGroup collapse(const KunnethGroup& k);
GradedGroup kunneth_square(const GradedGroup& a);

// the swap composed with the factor exchange acts on K(A,A) componentwise:
// A_i ⊗ A_j -> A_j ⊗ A_i with sign (-1)^{ij}, Tor(A_i,A_j) -> Tor(A_j,A_i)
// with sign (-1)^{1+ij}
struct SwapTerm {
    PartKind kind;
    int i = 0, j = 0; // source component; lands in (j, i)
    int sign = 1;
    Decomposition source_value;
};

std::vector<SwapTerm> flip_action(const GradedGroup& a);

// obstruction certificate: either an off-diagonal atom pair with a nonzero
// pairing, or a diagonal component where -1 is not the identity
struct FlipViolation {
    PartKind part;
    bool diagonal = false;
    int grade_a = 0, grade_b = 0;          // component grades (i, j)
    std::size_t index_a = 0, index_b = 0;  // atom positions inside the grades
    Atom atom_a, atom_b;
    Decomposition value; // the nonzero pairing (off-diagonal) or the sign-carrying component
};

struct FlipVerdict {
    bool identity = true;
    std::vector<FlipViolation> violations;
};

FlipVerdict flip_is_identity(const GradedGroup& a);

// pairs of atom positions whose tensor or Tor pairing is nonzero (the exchange
// obstruction list used by the flip verdict, exposed for reporting)
struct RestrictionViolation {
    int grade_a = 0, grade_b = 0;
    std::size_t index_a = 0, index_b = 0;
    Atom atom_a, atom_b;
    Decomposition tensor_value, tor_value;
};

std::vector<RestrictionViolation> basic_restrictions_check(const GradedGroup& a);

struct NecessaryStage {
    std::string label;
    bool ok = true;
    GradedGroup group;  // the graded group the stage examined
    FlipVerdict verdict;
    std::string note;
};

struct NecessaryResult {
    bool ok = true;
    std::vector<NecessaryStage> trace; // stops at the first failure
};

std::set<std::uint64_t> default_test_primes(const GradedGroup& a);

// battery of closure obstructions: flip of A itself, the torsion-free rank bound,
// iterated squares, and products with test groups (0, Z(p^inf))
NecessaryResult necessary_check(const GradedGroup& a,
                                const std::set<std::uint64_t>& primes = {},
                                unsigned depth = 2);

enum class AdmissibleKind { NotAdmissible, ZeroCase, QnCase };

struct ClassifyVerdict {
    bool admissible = false;
    AdmissibleKind kind = AdmissibleKind::NotAdmissible;
    std::optional<SupernaturalNumber> m; // witness: K1 ≅ Q_m/Z
    std::optional<SupernaturalNumber> n; // witness: K0 ≅ Q_n (absent in the zero case)
    std::string failed_clause;           // "grade-1 shape" | "grade-0 shape" | "divisibility"
    std::string detail;
};

// decides membership in the realizable class: K1 a sum of pairwise distinct
// Prüfer groups Q_m/Z, K0 either 0 or Q_n with m | n of infinite type
ClassifyVerdict classify(const GradedGroup& a);

} // namespace flipk
