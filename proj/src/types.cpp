#include "collidere/types.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace collidere {

namespace {

constexpr const char* kLeafGlyph = "\xE2\x80\xA2";  // "•"

void fill_caches(LevelTreeNode& node) {
    if (node.is_leaf()) {
        node.leaf_count = 1;
        node.delta = 0;
        node.key = kLeafGlyph;
        return;
    }
    std::sort(node.children.begin(), node.children.end(),
              [](const LevelTreeNode& a, const LevelTreeNode& b) { return a.key < b.key; });
    node.leaf_count = 0;
    node.delta = 0;
    long long cross_pairs = 0;  // pairs of leaves split across distinct children
    for (const auto& c : node.children) {
        cross_pairs += static_cast<long long>(node.leaf_count) * c.leaf_count;
        node.leaf_count += c.leaf_count;
        node.delta += c.delta;
    }
    node.delta += node.level * cross_pairs;
    node.key = "(" + std::to_string(node.level) + ":";
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i) node.key += ",";
        node.key += node.children[i].key;
    }
    node.key += ")";
}

}  // namespace

LevelTreeNode make_leaf() { return LevelTreeNode{}; }

LevelTreeNode make_internal(long long level, std::vector<LevelTreeNode> children) {
    if (level < 1)
        throw Error(ErrorCode::NonPositiveWeight, "tree level " + std::to_string(level), {level});
    if (children.size() < 2)
        throw Error(ErrorCode::TooFewBranches, "internal node needs >= 2 children",
                    {static_cast<long long>(children.size())});
    for (const auto& c : children)
        if (!c.is_leaf() && c.level <= level)
            throw Error(ErrorCode::UltrametricViolation,
                        "child level " + std::to_string(c.level) +
                            " not greater than parent level " + std::to_string(level),
                        {c.level, level});
    LevelTreeNode node;
    node.level = level;
    node.children = std::move(children);
    fill_caches(node);
    return node;
}

SingularityType::SingularityType(LevelTreeNode root) : root_(std::move(root)) {
    if (root_.is_leaf())
        throw Error(ErrorCode::TooFewBranches, "a type needs at least 2 branches", {1});
}

DualGraph SingularityType::graph() const {
    int r = branches();
    std::vector<std::vector<Weight>> w(r, std::vector<Weight>(r, 0));
    // w(i,j) = level of the deepest common ancestor; every leaf pair crosses
    // exactly one node
    std::function<void(const LevelTreeNode&, int)> place = [&](const LevelTreeNode& node,
                                                               int base) {
        if (node.is_leaf()) return;
        int offset = 0;
        for (const auto& c : node.children) {
            for (int a = base; a < base + offset; ++a)
                for (int b = base + offset; b < base + offset + c.leaf_count; ++b)
                    w[a][b] = w[b][a] = node.level;
            place(c, base + offset);
            offset += c.leaf_count;
        }
    };
    place(root_, 0);
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) edges.push_back({i, j, w[i][j]});
    return DualGraph::from_edges(r, edges);
}

SingularityType canonical_form(const DualGraph& g) {
    std::function<LevelTreeNode(const std::vector<int>&)> build =
        [&](const std::vector<int>& vs) -> LevelTreeNode {
        if (vs.size() == 1) return make_leaf();
        Weight wmin = g.weight(vs[0], vs[1]);
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b)
                wmin = std::min(wmin, g.weight(vs[a], vs[b]));
        // clusters = components of the "contact > wmin" graph
        std::vector<int> comp(vs.size(), -1);
        int ncomp = 0;
        for (std::size_t s = 0; s < vs.size(); ++s) {
            if (comp[s] != -1) continue;
            comp[s] = ncomp;
            std::vector<std::size_t> stack{s};
            while (!stack.empty()) {
                std::size_t u = stack.back();
                stack.pop_back();
                for (std::size_t v = 0; v < vs.size(); ++v)
                    if (comp[v] == -1 && g.weight(vs[u], vs[v]) > wmin) {
                        comp[v] = ncomp;
                        stack.push_back(v);
                    }
            }
            ++ncomp;
        }
        std::vector<LevelTreeNode> children;
        for (int c = 0; c < ncomp; ++c) {
            std::vector<int> cluster;
            for (std::size_t v = 0; v < vs.size(); ++v)
                if (comp[v] == c) cluster.push_back(vs[v]);
            children.push_back(build(cluster));
        }
        return make_internal(wmin, std::move(children));
    };
    std::vector<int> all(g.branches());
    for (int i = 0; i < g.branches(); ++i) all[i] = i;
    return SingularityType(build(all));
}

std::optional<std::string> SingularityType::name() const {
    const DualGraph g = graph();
    const int r = g.branches();
    std::vector<Weight> ws;
    for (const auto& e : g.edges()) ws.push_back(e.w);
    std::sort(ws.begin(), ws.end());
    const bool constant = ws.front() == ws.back();

    if (r == 2) return "A_" + std::to_string(2 * ws[0] - 1);
    if (r == 3) {
        if (ws[0] == 1 && ws[1] == 1) return "D_" + std::to_string(2 * ws[2] + 2);
        if (ws[0] == 2 && ws[1] == 2 && ws[2] == 2) return "J_10";
        if (ws[0] == 2 && ws[1] == 2 && ws[2] == 3) return "J_{2,2}";
    }
    if (r == 4) {
        if (constant && ws[0] == 1) return "X_9";
        if (ws == std::vector<Weight>{1, 1, 1, 1, 1, 2}) return "X_{1,2}";
    }
    if (constant && ws[0] == 1) return "K_" + std::to_string(r);
    if (constant) return "K(" + std::to_string(r) + "," + std::to_string(ws[0]) + ")";
    return std::nullopt;
}

std::string SingularityType::display() const {
    if (auto n = name()) return *n;
    return "#" + key();
}

namespace {

struct NameParts {
    char letter = 0;
    std::vector<long long> numbers;
};

std::optional<NameParts> split_name(const std::string& s) {
    NameParts out;
    std::size_t pos = 0;
    if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos]))) return std::nullopt;
    out.letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[pos++])));
    if (pos < s.size() && s[pos] == '_') ++pos;
    auto read_number = [&]() -> std::optional<long long> {
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            return std::nullopt;
        long long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > 1'000'000'000LL) return std::nullopt;
            ++pos;
        }
        return v;
    };
    if (pos < s.size() && (s[pos] == '(' || s[pos] == '{')) {
        char close = s[pos] == '(' ? ')' : '}';
        ++pos;
        auto first = read_number();
        if (!first) return std::nullopt;
        out.numbers.push_back(*first);
        if (pos < s.size() && s[pos] == ',') {
            ++pos;
            auto second = read_number();
            if (!second) return std::nullopt;
            out.numbers.push_back(*second);
        }
        if (pos >= s.size() || s[pos] != close) return std::nullopt;
        ++pos;
    } else {
        auto n = read_number();
        if (!n) return std::nullopt;
        out.numbers.push_back(*n);
    }
    if (pos != s.size()) return std::nullopt;
    return out;
}

SingularityType type_of_graph(const DualGraph& g) { return canonical_form(g); }

}  // namespace

SingularityType make_named_type(const std::string& name) {
    auto parts = split_name(name);
    if (!parts) throw Error(ErrorCode::UnknownName, "cannot read type name '" + name + "'");
    const char L = parts->letter;
    const auto& ns = parts->numbers;

    if (L == 'A' && ns.size() == 1) {
        if (ns[0] < 1) throw Error(ErrorCode::UnknownName, "A index must be >= 1: " + name);
        if (ns[0] % 2 == 0)
            throw Error(ErrorCode::SingularBranchType,
                        "A_" + std::to_string(ns[0]) + " has a singular branch", {ns[0]});
        return type_of_graph(DualGraph::single_edge((ns[0] + 1) / 2));
    }
    if (L == 'D' && ns.size() == 1) {
        if (ns[0] % 2 == 1)
            throw Error(ErrorCode::SingularBranchType,
                        "D_" + std::to_string(ns[0]) + " has a singular branch", {ns[0]});
        if (ns[0] < 4) throw Error(ErrorCode::UnknownName, "D index must be >= 4: " + name);
        Weight k = (ns[0] - 2) / 2;
        return type_of_graph(DualGraph::from_edges(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, k}}));
    }
    if (L == 'J') {
        if (ns == std::vector<long long>{10})
            return type_of_graph(DualGraph::complete(3, 2));
        if (ns == std::vector<long long>{22} || ns == std::vector<long long>{2, 2})
            return type_of_graph(DualGraph::from_edges(3, {{0, 1, 2}, {0, 2, 2}, {1, 2, 3}}));
        throw Error(ErrorCode::UnknownName, "unknown J type '" + name + "'");
    }
    if (L == 'X') {
        if (ns == std::vector<long long>{9}) return type_of_graph(DualGraph::complete(4, 1));
        if (ns == std::vector<long long>{12} || ns == std::vector<long long>{1, 2})
            return type_of_graph(DualGraph::from_edges(
                4, {{0, 1, 2}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}}));
        throw Error(ErrorCode::UnknownName, "unknown X type '" + name + "'");
    }
    if (L == 'K') {
        if (ns.size() == 1) {
            if (ns[0] < 2) throw Error(ErrorCode::UnknownName, "K needs p >= 2: " + name);
            return type_of_graph(DualGraph::complete(static_cast<int>(ns[0]), 1));
        }
        if (ns.size() == 2) {
            if (ns[0] < 2 || ns[1] < 1)
                throw Error(ErrorCode::UnknownName, "K(p,k) needs p >= 2, k >= 1: " + name);
            return type_of_graph(DualGraph::complete(static_cast<int>(ns[0]), ns[1]));
        }
    }
    throw Error(ErrorCode::UnknownName, "unknown type name '" + name + "'");
}

namespace {

// All canonical level trees with exact delta budget and root level >= min_level.
std::vector<LevelTreeNode> enum_trees(long long budget, long long min_level) {
    std::vector<LevelTreeNode> out;
    if (budget < 1) return out;
    for (long long level = min_level; level <= budget; ++level) {
        // candidate children: a leaf, or any subtree with root level > level
        // and delta <= remaining budget
        std::vector<LevelTreeNode> catalog;
        catalog.push_back(make_leaf());
        for (long long d = 1; d + level <= budget; ++d)
            for (auto& t : enum_trees(d, level + 1)) catalog.push_back(std::move(t));
        std::sort(catalog.begin(), catalog.end(),
                  [](const LevelTreeNode& a, const LevelTreeNode& b) { return a.key < b.key; });

        // choose a multiset of >= 2 children with non-decreasing catalog
        // index; delta = level * (cross pairs) + sum of child deltas
        std::vector<int> chosen;
        std::function<void(std::size_t, long long, long long)> grow =
            [&](std::size_t from, long long leaves, long long used) {
                if (chosen.size() >= 2 && used == budget) {
                    std::vector<LevelTreeNode> children;
                    for (int idx : chosen) children.push_back(catalog[idx]);
                    out.push_back(make_internal(level, std::move(children)));
                }
                for (std::size_t i = from; i < catalog.size(); ++i) {
                    const auto& cand = catalog[i];
                    long long next = used + level * leaves * cand.leaf_count + cand.delta;
                    if (next > budget) continue;  // larger candidates may still fit fewer leaves
                    chosen.push_back(static_cast<int>(i));
                    grow(i, leaves + cand.leaf_count, next);
                    chosen.pop_back();
                }
            };
        grow(0, 0, 0);
    }
    return out;
}

}  // namespace

std::vector<SingularityType> enumerate_types_with_delta(long long n) {
    std::vector<SingularityType> out;
    for (auto& t : enum_trees(n, 1)) out.emplace_back(std::move(t));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace collidere
