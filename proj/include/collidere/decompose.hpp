#pragma once

#include <optional>
#include <vector>

#include "collidere/types.hpp"

namespace collidere {

struct SearchBudget {
    long long max_nodes = 10'000'000;
    std::optional<long long> wall_ms;  // optional wall-clock cap
};

// Injective map from the canonical vertices of one target component into the
// source graph.
struct ComponentMap {
    std::vector<int> image;

    bool operator==(const ComponentMap&) const = default;
};

struct DecompositionWitness {
    std::vector<ComponentMap> maps;  // aligned with the normalized target list

    bool operator==(const DecompositionWitness&) const = default;
};

// BudgetExceeded is a first-class outcome: it never counts as evidence of
// impossibility.
enum class DecomposeStatus { Witness, NoDecomposition, BudgetExceeded };

struct DecomposeResult {
    DecomposeStatus status = DecomposeStatus::NoDecomposition;
    std::optional<DecompositionWitness> witness;
    long long nodes = 0;  // search nodes consumed
};

// Canonical target order used everywhere: delta descending, then key.
std::vector<SingularityType> normalize_targets(std::vector<SingularityType> targets);

// Decides Gamma_source = (+) Gamma_target_i: backtracking over injective
// vertex assignments with exact per-edge weight accounting. Targets must be
// in normalized order. First witness is deterministic. With a hint the call
// only verifies (no search); a hint that does not check out raises
// InvalidHint. Throws DeltaMismatch when total weights differ.
DecomposeResult decompose_check(const SingularityType& source,
                                const std::vector<SingularityType>& targets,
                                const SearchBudget& budget,
                                const DecompositionWitness* hint = nullptr);

// Exact re-verification of a witness (per-component injectivity plus edge
// weights summing to the source weights, every vertex covered).
bool verify_witness(const SingularityType& source, const std::vector<SingularityType>& targets,
                    const DecompositionWitness& w);

struct TargetEntry {
    std::vector<SingularityType> targets;  // normalized
    DecompositionWitness witness;
};

struct TargetEnumeration {
    std::vector<TargetEntry> entries;
    bool complete = true;  // false when the search budget ran out
    long long nodes = 0;
};

// All multisets of valid types (identity excluded) that the source graph
// decomposes into; candidates are pre-filtered to types that embed
// weight-wise into the source. Entries carry witnesses and are sorted
// canonically.
TargetEnumeration enumerate_decomposition_targets(const SingularityType& source,
                                                  const SearchBudget& budget);

// Iterated subtraction of w_min * K_r: the distinguished splitting into
// ordinary multiple points. Pieces come out with p descending.
struct OmpPiece {
    int p = 0;
    long long count = 0;

    bool operator==(const OmpPiece&) const = default;
};

std::vector<OmpPiece> canonical_omp_decomposition(const SingularityType& source);

// Everything a collision of n nodes can produce = every type with delta n.
std::vector<SingularityType> collide_nodes(long long n);

enum class OmpCriterion { Possible, Impossible, NotApplicable };

// K_p -> union K_{p_i} + (C(p,2) - sum C(p_i,2)) nodes, parts all >= 3.
// Applicable when every p_i >= max(k-1, 3); then possible iff
// p + C(k,2) >= sum p_i. Negative implied node count is Impossible by
// delta accounting. An empty part list (deformation to nodes only) is
// Possible.
OmpCriterion omp_criterion(long long p, const std::vector<long long>& parts);

// Combinatorial line arrangement certificate: lines 0..lines-1, points =
// every pairwise intersection with its incident line set (multiple points
// first, then simple nodes).
struct ArrangementIncidence {
    int lines = 0;
    std::vector<std::vector<int>> points;

    std::vector<long long> multiplicities() const;  // sizes >= 3, descending
    long long node_count() const;
};

// The generic construction for a Possible criterion instance: k base points
// pairwise joined, p_i-(k-1) extra lines through point i, generic fill
// lines. Throws CriterionFailed otherwise.
ArrangementIncidence construct_omp_witness(long long p, std::vector<long long> parts);

// Sound decomposition obstructions from graph functionals: for any
// decomposition, (sum w^e)^(1/e) <= sum_i (sum w_i^e)^(1/e) (Minkowski on
// the per-edge weight vectors), and sum w^e <= M^(e-1) * sum_i sum w_i^e
// where M bounds how many components can share one edge
// (M = min(#components, max source weight)).
bool minkowski_bound_violated(const DualGraph& source, const std::vector<DualGraph>& parts,
                              int exponent);
bool power_sum_bound_violated(const DualGraph& source, const std::vector<DualGraph>& parts,
                              int exponent);

}  // namespace collidere
