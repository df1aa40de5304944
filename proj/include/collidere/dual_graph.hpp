#pragma once

#include <string>
#include <vector>

#include "collidere/error.hpp"

namespace collidere {

using Weight = long long;

struct WeightedEdge {
    int i = 0;
    int j = 0;
    Weight w = 0;

    bool operator==(const WeightedEdge&) const = default;
};

// Complete edge-weighted graph on the branches of a plane-curve germ with
// smooth branches: w(i,j) is the pairwise intersection multiplicity. Stored
// as a dense upper triangle; completeness is structural. Instances are
// immutable and always satisfy the ultrametric triple condition (every triple
// of vertices has its two smallest weights equal).
class DualGraph {
public:
    // Validates: r >= 2, every unordered pair covered exactly once, weights
    // >= 1, ultrametric triples. Throws Error with codes TooFewBranches,
    // IncompleteGraph, NonPositiveWeight, UltrametricViolation{i,j,k}.
    static DualGraph from_edges(int branches, const std::vector<WeightedEdge>& edges);

    // Complete graph on `branches` vertices, constant weight w.
    static DualGraph complete(int branches, Weight w);

    // Two branches of contact w (the graph of A_{2w-1}).
    static DualGraph single_edge(Weight w);

    int branches() const { return r_; }
    Weight weight(int i, int j) const;
    std::vector<WeightedEdge> edges() const;  // ascending (i, j), i < j

    long long delta() const;  // sum of all edge weights
    Weight min_weight() const;
    Weight max_weight() const;
    long long weighted_degree(int v) const;
    long long weight_power_sum(int exponent) const;

    // Induced subgraph on >= 2 vertices (full subgraphs of dual graphs are
    // dual graphs). Throws SubsetTooSmall.
    DualGraph full_subgraph(const std::vector<int>& vertices) const;

    bool operator==(const DualGraph&) const = default;

private:
    DualGraph(int r, std::vector<Weight> triangle);
    std::size_t index(int i, int j) const;

    int r_ = 0;
    std::vector<Weight> w_;  // upper triangle, row-major
};

inline DualGraph validate_dual_graph(int branches, const std::vector<WeightedEdge>& edges) {
    return DualGraph::from_edges(branches, edges);
}

// g2 minus g1 along `embedding` (g1 vertex v sits on g2 vertex embedding[v]).
// Edges whose weight drops to zero are erased, then isolated vertices; each
// connected component of the remainder is returned as a validated DualGraph
// together with the g2 vertices it occupies.
//
// Subtracting w_min * K_r (the canonical-decomposition step) always leaves
// valid components; an arbitrary embedding can leave a connected piece that
// is not complete, which surfaces here as an IncompleteGraph error.
// Throws NotAnEmbedding, WeightUnderflow, IncompleteGraph,
// UltrametricViolation.
struct SubtractionComponent {
    DualGraph graph;
    std::vector<int> vertices;  // original g2 vertex ids, ascending
};

std::vector<SubtractionComponent> subtract_graph(const DualGraph& g2, const DualGraph& g1,
                                                 const std::vector<int>& embedding);

}  // namespace collidere
