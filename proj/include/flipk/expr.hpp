#pragma once

#include <string>

#include "flipk/abelian.hpp"

namespace flipk {

// grammar: `0`, `Z`, `Z/12`, `Q[2^inf*3]`, `QZ[2^inf*3]`, joined with `+`.
// Output is always canonical (primary cyclic form, QLoc by infinite support).
Decomposition parse_group_expr(const std::string& text);

// canonical expression; re-parsing it yields an equal decomposition
std::string format_decomposition(const Decomposition& d);

// inverse pair used by the CLI and file format
GradedGroup parse_graded(const std::string& k0, const std::string& k1);

} // namespace flipk
