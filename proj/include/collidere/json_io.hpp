#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "collidere/decompose.hpp"
#include "collidere/invariants.hpp"
#include "collidere/types.hpp"

namespace collidere {

using Json = nlohmann::json;

// Graph files: {"branches": r, "weights": [[i, j, w], ...]} with 0-based
// i < j, every pair exactly once.
Json graph_to_json(const DualGraph& g);
DualGraph graph_from_json(const Json& j);
DualGraph load_graph_file(const std::string& path);

Json type_to_json(const SingularityType& t);

// Sorted list of ["num/den", multiplicity] pairs.
Json spectrum_to_json(const Spectrum& s);

Json signature_to_json(const Signature& s);
Json bundle_to_json(const InvariantBundle& b);

// Per-component vertex maps, aligned with the normalized target list.
Json witness_to_json(const std::vector<SingularityType>& targets, const DecompositionWitness& w);
DecompositionWitness witness_from_json(const Json& j);

// {"lines": L, "points": [{"lines": [...]}, ...]}
Json incidence_to_json(const ArrangementIncidence& a);

Json omp_pieces_to_json(const std::vector<OmpPiece>& pieces);

}  // namespace collidere
