#pragma once

#include <random>
#include <vector>

#include "collidere/types.hpp"

namespace collidere::testing {

// Random canonical level tree: the generator for "every graph buildable from
// a level tree validates" style properties.
inline LevelTreeNode random_tree(std::mt19937_64& rng, int leaf_budget, long long level,
                                 int depth_left) {
    std::uniform_int_distribution<int> nchild(2, std::min(4, leaf_budget));
    int m = nchild(rng);
    std::vector<LevelTreeNode> children;
    int remaining = leaf_budget - m;  // one leaf reserved per child
    for (int i = 0; i < m; ++i) {
        int extra = 0;
        if (remaining > 0) {
            std::uniform_int_distribution<int> take(0, remaining);
            extra = take(rng);
            remaining -= extra;
        }
        bool subtree = depth_left > 0 && extra >= 1 && std::uniform_int_distribution<int>(0, 2)(rng) == 0;
        if (subtree) {
            std::uniform_int_distribution<long long> bump(1, 3);
            children.push_back(random_tree(rng, 1 + extra, level + bump(rng), depth_left - 1));
        } else {
            children.push_back(make_leaf());
            remaining += extra;  // unused leaves flow back
        }
    }
    return make_internal(level, std::move(children));
}

inline SingularityType random_type(std::mt19937_64& rng, int max_leaves = 8, int max_depth = 3) {
    std::uniform_int_distribution<int> leaves(2, max_leaves);
    std::uniform_int_distribution<long long> level(1, 3);
    return SingularityType(random_tree(rng, leaves(rng), level(rng), max_depth));
}

inline DualGraph permuted(const DualGraph& g, std::mt19937_64& rng) {
    std::vector<int> perm(g.branches());
    for (int i = 0; i < g.branches(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<WeightedEdge> edges;
    for (const auto& e : g.edges()) edges.push_back({perm[e.i], perm[e.j], e.w});
    return DualGraph::from_edges(g.branches(), edges);
}

// Brute-force oracle for the triple condition, independent of the validator.
inline bool triples_ok(int r, const std::vector<std::vector<Weight>>& w) {
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int k = j + 1; k < r; ++k) {
                Weight a = w[i][j], b = w[i][k], c = w[j][k];
                Weight lo = std::min({a, b, c});
                if ((a == lo) + (b == lo) + (c == lo) < 2) return false;
            }
    return true;
}

}  // namespace collidere::testing
