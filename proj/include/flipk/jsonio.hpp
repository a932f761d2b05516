#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "flipk/abelian.hpp"
#include "flipk/functors.hpp"
#include "flipk/kunneth.hpp"
#include "flipk/matrix.hpp"
#include "flipk/resolutions.hpp"
#include "flipk/smith.hpp"

namespace flipk {

using json = nlohmann::json;

// integers serialize as JSON numbers while they fit in 64 bits, as decimal
// strings beyond that; readers accept both forms
json int_to_json(const Int& v);
Int int_from_json(const json& j); // throws ParseError on malformed input

json vec_to_json(const IntVec& v);
json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const json& j); // throws ParseError on malformed input

json atom_to_json(const Atom& a);
json decomposition_to_json(const Decomposition& d);
json graded_to_json(const GradedGroup& g);
GradedGroup graded_from_json(const json& j); // expects {"K0": "<expr>", "K1": "<expr>"}

json smith_to_json(const SmithForm& s);
json resolution_to_json(const FreeResolution& r);
json tor_matrix_to_json(const TorMatrix& m);
json swap_terms_to_json(const std::vector<SwapTerm>& terms);
json flip_verdict_to_json(const FlipVerdict& v);
json necessary_to_json(const NecessaryResult& r);
json classify_to_json(const ClassifyVerdict& v);
json kunneth_to_json(const KunnethGroup& k);

} // namespace flipk
