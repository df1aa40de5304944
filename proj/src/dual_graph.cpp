#include "collidere/dual_graph.hpp"

#include <algorithm>
#include <numeric>

namespace collidere {

namespace {

void check_ultrametric(int r, const std::vector<Weight>& tri) {
    auto at = [&](int i, int j) -> Weight {
        if (i > j) std::swap(i, j);
        return tri[static_cast<std::size_t>(i) * r - static_cast<std::size_t>(i) * (i + 1) / 2 +
                   (j - i - 1)];
    };
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int k = j + 1; k < r; ++k) {
                Weight a = at(i, j), b = at(i, k), c = at(j, k);
                Weight lo = std::min({a, b, c});
                // the two smallest must coincide
                int at_min = (a == lo) + (b == lo) + (c == lo);
                if (at_min < 2) {
                    throw Error(ErrorCode::UltrametricViolation,
                                "triple {" + std::to_string(i) + "," + std::to_string(j) + "," +
                                    std::to_string(k) + "} has weights (" + std::to_string(a) +
                                    "," + std::to_string(b) + "," + std::to_string(c) +
                                    ") with distinct two smallest",
                                {i, j, k});
                }
            }
}

}  // namespace

DualGraph::DualGraph(int r, std::vector<Weight> triangle) : r_(r), w_(std::move(triangle)) {}

std::size_t DualGraph::index(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i) * r_ - static_cast<std::size_t>(i) * (i + 1) / 2 +
           (j - i - 1);
}

DualGraph DualGraph::from_edges(int branches, const std::vector<WeightedEdge>& edges) {
    if (branches < 2)
        throw Error(ErrorCode::TooFewBranches,
                    "a dual graph needs at least 2 branches, got " + std::to_string(branches),
                    {branches});
    std::size_t pairs = static_cast<std::size_t>(branches) * (branches - 1) / 2;
    std::vector<Weight> tri(pairs, 0);
    std::vector<char> seen(pairs, 0);
    for (const auto& e : edges) {
        int i = e.i, j = e.j;
        if (i > j) std::swap(i, j);
        if (i < 0 || j >= branches || i == j)
            throw Error(ErrorCode::IncompleteGraph,
                        "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                            ") out of range for " + std::to_string(branches) + " branches",
                        {e.i, e.j});
        if (e.w < 1)
            throw Error(ErrorCode::NonPositiveWeight,
                        "edge (" + std::to_string(i) + "," + std::to_string(j) + ") has weight " +
                            std::to_string(e.w),
                        {i, j, e.w});
        std::size_t idx = static_cast<std::size_t>(i) * branches -
                          static_cast<std::size_t>(i) * (i + 1) / 2 + (j - i - 1);
        if (seen[idx])
            throw Error(ErrorCode::IncompleteGraph,
                        "pair (" + std::to_string(i) + "," + std::to_string(j) +
                            ") listed more than once",
                        {i, j});
        seen[idx] = 1;
        tri[idx] = e.w;
    }
    for (int i = 0, idx = 0; i < branches; ++i)
        for (int j = i + 1; j < branches; ++j, ++idx)
            if (!seen[idx])
                throw Error(ErrorCode::IncompleteGraph,
                            "pair (" + std::to_string(i) + "," + std::to_string(j) + ") missing",
                            {i, j});
    check_ultrametric(branches, tri);
    return DualGraph(branches, std::move(tri));
}

DualGraph DualGraph::complete(int branches, Weight w) {
    if (branches < 2)
        throw Error(ErrorCode::TooFewBranches,
                    "complete graph needs at least 2 branches, got " + std::to_string(branches),
                    {branches});
    if (w < 1)
        throw Error(ErrorCode::NonPositiveWeight, "weight " + std::to_string(w), {w});
    std::size_t pairs = static_cast<std::size_t>(branches) * (branches - 1) / 2;
    return DualGraph(branches, std::vector<Weight>(pairs, w));
}

DualGraph DualGraph::single_edge(Weight w) { return complete(2, w); }

Weight DualGraph::weight(int i, int j) const { return w_[index(i, j)]; }

std::vector<WeightedEdge> DualGraph::edges() const {
    std::vector<WeightedEdge> out;
    out.reserve(w_.size());
    for (int i = 0; i < r_; ++i)
        for (int j = i + 1; j < r_; ++j) out.push_back({i, j, weight(i, j)});
    return out;
}

long long DualGraph::delta() const { return std::accumulate(w_.begin(), w_.end(), 0LL); }

Weight DualGraph::min_weight() const { return *std::min_element(w_.begin(), w_.end()); }

Weight DualGraph::max_weight() const { return *std::max_element(w_.begin(), w_.end()); }

long long DualGraph::weighted_degree(int v) const {
    long long d = 0;
    for (int u = 0; u < r_; ++u)
        if (u != v) d += weight(u, v);
    return d;
}

long long DualGraph::weight_power_sum(int exponent) const {
    long long s = 0;
    for (Weight w : w_) {
        long long p = 1;
        for (int e = 0; e < exponent; ++e) p *= w;
        s += p;
    }
    return s;
}

DualGraph DualGraph::full_subgraph(const std::vector<int>& vertices) const {
    std::vector<int> vs(vertices);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (vs.size() < 2)
        throw Error(ErrorCode::SubsetTooSmall,
                    "induced subgraph needs at least 2 vertices, got " +
                        std::to_string(vs.size()),
                    {static_cast<long long>(vs.size())});
    if (vs.front() < 0 || vs.back() >= r_)
        throw Error(ErrorCode::SubsetTooSmall, "vertex out of range", {vs.front(), vs.back()});
    int m = static_cast<int>(vs.size());
    std::vector<Weight> tri;
    tri.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) tri.push_back(weight(vs[a], vs[b]));
    // full subgraphs inherit the triple condition
    return DualGraph(m, std::move(tri));
}

std::vector<SubtractionComponent> subtract_graph(const DualGraph& g2, const DualGraph& g1,
                                                 const std::vector<int>& embedding) {
    int r1 = g1.branches(), r2 = g2.branches();
    if (static_cast<int>(embedding.size()) != r1)
        throw Error(ErrorCode::NotAnEmbedding,
                    "embedding maps " + std::to_string(embedding.size()) + " vertices, expected " +
                        std::to_string(r1));
    std::vector<char> hit(r2, 0);
    for (int v : embedding) {
        if (v < 0 || v >= r2)
            throw Error(ErrorCode::NotAnEmbedding, "image vertex " + std::to_string(v) +
                                                       " out of range");
        if (hit[v])
            throw Error(ErrorCode::NotAnEmbedding,
                        "embedding not injective at vertex " + std::to_string(v), {v});
        hit[v] = 1;
    }

    // residual weights
    std::vector<std::vector<Weight>> res(r2, std::vector<Weight>(r2, 0));
    for (int i = 0; i < r2; ++i)
        for (int j = i + 1; j < r2; ++j) res[i][j] = res[j][i] = g2.weight(i, j);
    for (int a = 0; a < r1; ++a)
        for (int b = a + 1; b < r1; ++b) {
            int u = embedding[a], v = embedding[b];
            Weight w1 = g1.weight(a, b);
            if (res[u][v] < w1)
                throw Error(ErrorCode::WeightUnderflow,
                            "pair (" + std::to_string(u) + "," + std::to_string(v) +
                                ") has weight " + std::to_string(res[u][v]) +
                                " < subtracted " + std::to_string(w1),
                            {u, v});
            res[u][v] -= w1;
            res[v][u] -= w1;
        }

    // connected components of the nonzero remainder; isolated vertices drop
    std::vector<int> comp(r2, -1);
    int ncomp = 0;
    for (int s = 0; s < r2; ++s) {
        if (comp[s] != -1) continue;
        bool isolated = true;
        for (int u = 0; u < r2 && isolated; ++u)
            if (u != s && res[s][u] > 0) isolated = false;
        if (isolated) continue;
        comp[s] = ncomp;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < r2; ++v)
                if (res[u][v] > 0 && comp[v] == -1) {
                    comp[v] = ncomp;
                    stack.push_back(v);
                }
        }
        ++ncomp;
    }

    std::vector<SubtractionComponent> out;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> vs;
        for (int v = 0; v < r2; ++v)
            if (comp[v] == c) vs.push_back(v);
        std::vector<WeightedEdge> edges;
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b)
                if (res[vs[a]][vs[b]] > 0)
                    edges.push_back({static_cast<int>(a), static_cast<int>(b), res[vs[a]][vs[b]]});
        // re-validate: general subtractions can leave a connected piece with
        // a missing internal edge, which is not a dual graph
        out.push_back({DualGraph::from_edges(static_cast<int>(vs.size()), edges), vs});
    }
    return out;
}

}  // namespace collidere
