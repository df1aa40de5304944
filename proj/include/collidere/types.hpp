#pragma once

#include <optional>
#include <string>
#include <vector>

#include "collidere/dual_graph.hpp"

namespace collidere {

// Nested-cluster tree of a dual graph. An internal node at level L is a
// cluster of branches whose pairwise contact is >= L; the contact of two
// branches is the level of their deepest common ancestor. Levels strictly
// increase from root to leaf, every internal node has >= 2 children, and
// children are kept sorted by canonical key, which makes the tree itself the
// canonical form.
struct LevelTreeNode {
    long long level = 0;                  // internal nodes only, >= 1
    std::vector<LevelTreeNode> children;  // empty => leaf

    // caches, maintained by the factories below
    int leaf_count = 1;
    long long delta = 0;
    std::string key = "\xE2\x80\xA2";  // "•"

    bool is_leaf() const { return children.empty(); }
};

LevelTreeNode make_leaf();

// Sorts children by key and fills the caches. Throws on fewer than 2
// children, level < 1, or a child internal level <= level.
LevelTreeNode make_internal(long long level, std::vector<LevelTreeNode> children);

// A topological singularity type with smooth branches: the canonical level
// tree plus its string key. Two dual graphs are isomorphic iff their keys
// are equal.
class SingularityType {
public:
    explicit SingularityType(LevelTreeNode root);

    const LevelTreeNode& tree() const { return root_; }
    const std::string& key() const { return root_.key; }
    int branches() const { return root_.leaf_count; }
    long long delta() const { return root_.delta; }

    // Dual graph in canonical labelling (leaves in tree order).
    DualGraph graph() const;

    // Registry name (A_n / D_n / J_10 / J_{2,2} / X_9 / X_{1,2} / K_p /
    // K(p,k)) when the graph matches one; types outside the registry have
    // no name.
    std::optional<std::string> name() const;

    // name() if present, otherwise "#<key>".
    std::string display() const;

    bool operator==(const SingularityType& o) const { return key() == o.key(); }
    bool operator<(const SingularityType& o) const {
        if (branches() != o.branches()) return branches() < o.branches();
        return key() < o.key();
    }

private:
    LevelTreeNode root_;
};

// Canonical form of a validated dual graph; deterministic and invariant
// under vertex relabelling.
SingularityType canonical_form(const DualGraph& g);

// Parses a registry name: A<n> (n odd >= 1), D<n> (n even >= 4), J10, J22,
// X9, X12, K<p> (p >= 2), K(<p>,<k>). Accepts an optional underscore and the
// braced display forms (A_{11}, K_{3,4}, J_{2,2}, X_{1,2}).
// Throws SingularBranchType for A_even / D_odd, UnknownName otherwise.
SingularityType make_named_type(const std::string& name);

// All isomorphism classes of dual graphs with total edge weight n, sorted by
// (branch count, canonical key). n = 0 gives the empty list.
std::vector<SingularityType> enumerate_types_with_delta(long long n);

}  // namespace collidere
