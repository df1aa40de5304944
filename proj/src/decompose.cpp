#include "collidere/decompose.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

namespace collidere {

namespace {

using boost::multiprecision::cpp_int;

cpp_int int_pow(cpp_int x, int e) {
    cpp_int out = 1;
    for (int i = 0; i < e; ++i) out *= x;
    return out;
}

cpp_int nth_root_floor(const cpp_int& x, int e) {
    if (x <= 0) return 0;
    cpp_int lo = 0, hi = cpp_int(1) << (boost::multiprecision::msb(x) / e + 2);
    while (lo < hi) {
        cpp_int mid = (lo + hi + 1) >> 1;
        if (int_pow(mid, e) <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

cpp_int edge_power_sum(const DualGraph& g, int e) {
    cpp_int s = 0;
    for (const auto& edge : g.edges()) s += int_pow(edge.w, e);
    return s;
}

struct SearchClock {
    long long limit = 0;
    long long nodes = 0;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    bool exhausted = false;

    bool tick() {
        if (++nodes > limit) {
            exhausted = true;
            return false;
        }
        if (deadline && (nodes & 1023) == 0 && std::chrono::steady_clock::now() > *deadline) {
            exhausted = true;
            return false;
        }
        return true;
    }
};

SearchClock make_clock(const SearchBudget& budget) {
    SearchClock clock;
    clock.limit = budget.max_nodes;
    if (budget.wall_ms)
        clock.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(*budget.wall_ms);
    return clock;
}

struct Component {
    DualGraph graph;
    std::string key;
    std::vector<int> order;  // visit order: weighted degree desc, index asc
    Weight max_edge = 0;
    long long max_degree = 0;
};

Component make_component(const SingularityType& t) {
    Component c{t.graph(), t.key(), {}, 0, 0};
    int rc = c.graph.branches();
    c.order.resize(rc);
    for (int v = 0; v < rc; ++v) c.order[v] = v;
    std::stable_sort(c.order.begin(), c.order.end(), [&](int a, int b) {
        return c.graph.weighted_degree(a) > c.graph.weighted_degree(b);
    });
    c.max_edge = c.graph.max_weight();
    for (int v = 0; v < rc; ++v) c.max_degree = std::max(c.max_degree, c.graph.weighted_degree(v));
    return c;
}

// Backtracking assignment of component vertices onto source vertices with
// exact residual-weight accounting. Identical adjacent components are
// symmetry-broken by requiring lexicographically non-decreasing assignment
// vectors.
struct Engine {
    int r = 0;
    std::vector<std::vector<Weight>> res;
    std::vector<Component> comps;
    std::vector<Weight> suffix_max_edge;
    std::vector<long long> suffix_max_degree;
    SearchClock clock;
    std::vector<std::vector<int>> placed;  // per component, in visit order

    bool place_component(std::size_t ci) {
        if (ci == comps.size()) return true;  // residuals are all zero by weight accounting

        Weight res_max_edge = 0;
        std::vector<long long> res_degree(r, 0);
        for (int u = 0; u < r; ++u)
            for (int v = u + 1; v < r; ++v) {
                res_max_edge = std::max(res_max_edge, res[u][v]);
                res_degree[u] += res[u][v];
                res_degree[v] += res[u][v];
            }
        if (res_max_edge < suffix_max_edge[ci]) return false;
        if (*std::max_element(res_degree.begin(), res_degree.end()) < suffix_max_degree[ci])
            return false;

        bool tight = ci > 0 && comps[ci].key == comps[ci - 1].key;
        placed[ci].assign(comps[ci].order.size(), -1);
        return assign_vertex(ci, 0, tight);
    }

    bool assign_vertex(std::size_t ci, std::size_t pos, bool tight) {
        const Component& c = comps[ci];
        if (pos == c.order.size()) return place_component(ci + 1);
        int v = c.order[pos];
        int lo = tight ? placed[ci - 1][pos] : 0;
        for (int u = lo; u < r; ++u) {
            bool used = false;
            for (std::size_t q = 0; q < pos && !used; ++q) used = placed[ci][q] == u;
            if (used) continue;
            if (!clock.tick()) return false;
            bool fits = true;
            for (std::size_t q = 0; q < pos && fits; ++q)
                fits = res[u][placed[ci][q]] >= c.graph.weight(v, c.order[q]);
            if (!fits) continue;
            for (std::size_t q = 0; q < pos; ++q) {
                Weight w = c.graph.weight(v, c.order[q]);
                res[u][placed[ci][q]] -= w;
                res[placed[ci][q]][u] -= w;
            }
            placed[ci][pos] = u;
            if (assign_vertex(ci, pos + 1, tight && u == lo)) return true;
            if (clock.exhausted) return false;
            placed[ci][pos] = -1;
            for (std::size_t q = 0; q < pos; ++q) {
                Weight w = c.graph.weight(v, c.order[q]);
                res[u][placed[ci][q]] += w;
                res[placed[ci][q]][u] += w;
            }
        }
        return false;
    }
};

std::vector<std::vector<Weight>> dense_weights(const DualGraph& g) {
    int r = g.branches();
    std::vector<std::vector<Weight>> w(r, std::vector<Weight>(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) w[i][j] = w[j][i] = g.weight(i, j);
    return w;
}

// Searches for an injective map of `part` into `host` with part weights <=
// host weights (the subgraph-compatibility filter for target candidates).
bool embeds_weightwise(const DualGraph& host, const DualGraph& part, SearchClock& clock) {
    int rh = host.branches(), rp = part.branches();
    if (rp > rh) return false;
    std::vector<int> image(rp, -1);
    std::function<bool(int)> go = [&](int v) -> bool {
        if (v == rp) return true;
        for (int u = 0; u < rh; ++u) {
            bool used = false;
            for (int q = 0; q < v && !used; ++q) used = image[q] == u;
            if (used) continue;
            if (!clock.tick()) return false;
            bool ok = true;
            for (int q = 0; q < v && ok; ++q) ok = host.weight(u, image[q]) >= part.weight(v, q);
            if (!ok) continue;
            image[v] = u;
            if (go(v + 1)) return true;
            if (clock.exhausted) return false;
            image[v] = -1;
        }
        return false;
    };
    return go(0);
}

}  // namespace

std::vector<SingularityType> normalize_targets(std::vector<SingularityType> targets) {
    std::sort(targets.begin(), targets.end(), [](const SingularityType& a, const SingularityType& b) {
        if (a.delta() != b.delta()) return a.delta() > b.delta();
        return a.key() < b.key();
    });
    return targets;
}

bool verify_witness(const SingularityType& source, const std::vector<SingularityType>& targets,
                    const DecompositionWitness& w) {
    const DualGraph src = source.graph();
    const int r = src.branches();
    if (w.maps.size() != targets.size()) return false;
    auto res = dense_weights(src);
    std::vector<char> covered(r, 0);
    for (std::size_t ci = 0; ci < targets.size(); ++ci) {
        const DualGraph g = targets[ci].graph();
        const auto& image = w.maps[ci].image;
        if (static_cast<int>(image.size()) != g.branches()) return false;
        std::vector<char> used(r, 0);
        for (int u : image) {
            if (u < 0 || u >= r || used[u]) return false;
            used[u] = 1;
            covered[u] = 1;
        }
        for (int a = 0; a < g.branches(); ++a)
            for (int b = a + 1; b < g.branches(); ++b) {
                res[image[a]][image[b]] -= g.weight(a, b);
                res[image[b]][image[a]] -= g.weight(a, b);
            }
    }
    for (int u = 0; u < r; ++u) {
        if (!covered[u]) return false;
        for (int v = u + 1; v < r; ++v)
            if (res[u][v] != 0) return false;
    }
    return true;
}

DecomposeResult decompose_check(const SingularityType& source,
                                const std::vector<SingularityType>& targets,
                                const SearchBudget& budget, const DecompositionWitness* hint) {
    std::vector<SingularityType> parts = normalize_targets(targets);
    long long delta_sum = 0;
    for (const auto& t : parts) delta_sum += t.delta();
    if (delta_sum != source.delta())
        throw Error(ErrorCode::DeltaMismatch,
                    "delta(source) = " + std::to_string(source.delta()) +
                        " but targets sum to " + std::to_string(delta_sum),
                    {source.delta(), delta_sum});

    if (hint) {
        if (!verify_witness(source, parts, *hint))
            throw Error(ErrorCode::InvalidHint, "hint does not reproduce the source weights");
        return {DecomposeStatus::Witness, *hint, 0};
    }

    const DualGraph src = source.graph();
    DecomposeResult out;

    // sound no-certificates before the search
    long long pair_budget = 0;
    for (const auto& t : parts)
        pair_budget += static_cast<long long>(t.branches()) * (t.branches() - 1) / 2;
    long long src_pairs = static_cast<long long>(src.branches()) * (src.branches() - 1) / 2;
    bool hopeless = src_pairs > pair_budget;
    std::vector<DualGraph> part_graphs;
    for (const auto& t : parts) {
        part_graphs.push_back(t.graph());
        if (t.branches() > src.branches() || part_graphs.back().max_weight() > src.max_weight())
            hopeless = true;
    }
    for (int e = 2; e <= 3 && !hopeless; ++e)
        hopeless = minkowski_bound_violated(src, part_graphs, e) ||
                   power_sum_bound_violated(src, part_graphs, e);
    if (hopeless) return {DecomposeStatus::NoDecomposition, std::nullopt, 0};

    Engine engine;
    engine.r = src.branches();
    engine.res = dense_weights(src);
    for (const auto& t : parts) engine.comps.push_back(make_component(t));
    engine.placed.resize(engine.comps.size());
    engine.suffix_max_edge.assign(engine.comps.size() + 1, 0);
    engine.suffix_max_degree.assign(engine.comps.size() + 1, 0);
    for (std::size_t i = engine.comps.size(); i-- > 0;) {
        engine.suffix_max_edge[i] = std::max(engine.suffix_max_edge[i + 1], engine.comps[i].max_edge);
        engine.suffix_max_degree[i] =
            std::max(engine.suffix_max_degree[i + 1], engine.comps[i].max_degree);
    }
    engine.clock = make_clock(budget);

    bool found = engine.place_component(0);
    out.nodes = engine.clock.nodes;
    if (engine.clock.exhausted) {
        out.status = DecomposeStatus::BudgetExceeded;
        return out;
    }
    if (!found) {
        out.status = DecomposeStatus::NoDecomposition;
        return out;
    }
    DecompositionWitness witness;
    for (std::size_t ci = 0; ci < engine.comps.size(); ++ci) {
        ComponentMap m;
        m.image.resize(engine.comps[ci].order.size());
        for (std::size_t pos = 0; pos < engine.comps[ci].order.size(); ++pos)
            m.image[engine.comps[ci].order[pos]] = engine.placed[ci][pos];
        witness.maps.push_back(std::move(m));
    }
    out.status = DecomposeStatus::Witness;
    out.witness = std::move(witness);
    return out;
}

TargetEnumeration enumerate_decomposition_targets(const SingularityType& source,
                                                  const SearchBudget& budget) {
    TargetEnumeration out;
    const DualGraph src = source.graph();
    const long long delta = source.delta();
    long long nodes_left = budget.max_nodes;

    // candidate components: every type of delta <= delta(source) that embeds
    // weight-wise into the source
    struct Candidate {
        SingularityType type;
        long long delta;
    };
    std::vector<Candidate> candidates;
    {
        SearchClock clock = make_clock({nodes_left, budget.wall_ms});
        for (long long d = 1; d <= delta && !clock.exhausted; ++d)
            for (auto& t : enumerate_types_with_delta(d)) {
                if (embeds_weightwise(src, t.graph(), clock)) candidates.push_back({t, d});
                if (clock.exhausted) break;
            }
        out.nodes += clock.nodes;
        nodes_left -= clock.nodes;
        if (clock.exhausted) {
            out.complete = false;
            return out;
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.delta != b.delta) return a.delta > b.delta;
        return a.type.key() < b.type.key();
    });

    // multisets with non-decreasing candidate index sum to delta; skipping
    // size-1 multisets drops exactly the identity (a one-component
    // decomposition forces isomorphism)
    std::vector<SingularityType> chosen;
    std::function<bool(std::size_t, long long)> grow = [&](std::size_t from,
                                                           long long remaining) -> bool {
        if (remaining == 0) {
            if (chosen.size() < 2) return true;
            DecomposeResult r = decompose_check(source, chosen, {nodes_left, budget.wall_ms});
            out.nodes += r.nodes;
            nodes_left -= r.nodes;
            if (r.status == DecomposeStatus::BudgetExceeded) {
                out.complete = false;
                return false;
            }
            if (r.status == DecomposeStatus::Witness)
                out.entries.push_back({chosen, *r.witness});
            return true;
        }
        for (std::size_t i = from; i < candidates.size(); ++i) {
            if (candidates[i].delta > remaining) continue;
            chosen.push_back(candidates[i].type);
            bool keep_going = grow(i, remaining - candidates[i].delta);
            chosen.pop_back();
            if (!keep_going) return false;
        }
        return true;
    };
    grow(0, delta);

    std::sort(out.entries.begin(), out.entries.end(), [](const TargetEntry& a, const TargetEntry& b) {
        std::vector<std::string> ka, kb;
        for (const auto& t : a.targets) ka.push_back(t.key());
        for (const auto& t : b.targets) kb.push_back(t.key());
        return ka < kb;
    });
    return out;
}

std::vector<OmpPiece> canonical_omp_decomposition(const SingularityType& source) {
    std::map<int, long long> pieces;
    std::function<void(const DualGraph&)> peel = [&](const DualGraph& g) {
        Weight wmin = g.min_weight();
        pieces[g.branches()] += wmin;
        std::vector<int> identity(g.branches());
        for (int i = 0; i < g.branches(); ++i) identity[i] = i;
        for (const auto& comp : subtract_graph(g, DualGraph::complete(g.branches(), wmin), identity))
            peel(comp.graph);
    };
    peel(source.graph());
    std::vector<OmpPiece> out;
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) out.push_back({it->first, it->second});
    return out;
}

std::vector<SingularityType> collide_nodes(long long n) { return enumerate_types_with_delta(n); }

namespace {
long long choose2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }
}  // namespace

OmpCriterion omp_criterion(long long p, const std::vector<long long>& parts) {
    if (p < 2) throw Error(ErrorCode::CriterionFailed, "p must be >= 2, got " + std::to_string(p));
    long long k = static_cast<long long>(parts.size());
    long long sum_parts = 0, sum_pairs = 0;
    for (long long pi : parts) {
        if (pi < 3)
            throw Error(ErrorCode::CriterionFailed,
                        "parts must be >= 3, got " + std::to_string(pi));
        sum_parts += pi;
        sum_pairs += choose2(pi);
    }
    if (choose2(p) < sum_pairs) return OmpCriterion::Impossible;  // negative node count
    long long floor_pi = std::max(k - 1, 3LL);
    for (long long pi : parts)
        if (pi < floor_pi) return OmpCriterion::NotApplicable;
    return p + choose2(k) >= sum_parts ? OmpCriterion::Possible : OmpCriterion::Impossible;
}

std::vector<long long> ArrangementIncidence::multiplicities() const {
    std::vector<long long> out;
    for (const auto& pt : points)
        if (pt.size() >= 3) out.push_back(static_cast<long long>(pt.size()));
    std::sort(out.rbegin(), out.rend());
    return out;
}

long long ArrangementIncidence::node_count() const {
    long long n = 0;
    for (const auto& pt : points)
        if (pt.size() == 2) ++n;
    return n;
}

ArrangementIncidence construct_omp_witness(long long p, std::vector<long long> parts) {
    std::sort(parts.rbegin(), parts.rend());
    if (omp_criterion(p, parts) != OmpCriterion::Possible)
        throw Error(ErrorCode::CriterionFailed,
                    "the criterion does not certify this part list as possible");
    const long long k = static_cast<long long>(parts.size());

    ArrangementIncidence arr;
    // base point i of multiplicity parts[i]: joined to every other base
    // point, plus parts[i]-(k-1) extra lines of its own
    std::vector<std::vector<int>> base_lines(k);
    int next_line = 0;
    std::map<std::pair<long long, long long>, int> joining;
    for (long long i = 0; i < k; ++i)
        for (long long j = i + 1; j < k; ++j) {
            joining[{i, j}] = next_line;
            base_lines[i].push_back(next_line);
            base_lines[j].push_back(next_line);
            ++next_line;
        }
    for (long long i = 0; i < k; ++i)
        for (long long e = 0; e < parts[i] - (k - 1); ++e) base_lines[i].push_back(next_line++);
    while (next_line < p) ++next_line;  // generic fill lines carry no marked point
    arr.lines = static_cast<int>(p);

    // which base point (if any) a pair of lines shares
    std::map<std::pair<int, int>, bool> shares;
    for (long long i = 0; i < k; ++i) {
        arr.points.push_back(base_lines[i]);
        for (std::size_t a = 0; a < base_lines[i].size(); ++a)
            for (std::size_t b = a + 1; b < base_lines[i].size(); ++b)
                shares[{base_lines[i][a], base_lines[i][b]}] = true;
    }
    for (int a = 0; a < arr.lines; ++a)
        for (int b = a + 1; b < arr.lines; ++b)
            if (!shares.count({a, b})) arr.points.push_back({a, b});
    return arr;
}

bool minkowski_bound_violated(const DualGraph& source, const std::vector<DualGraph>& parts,
                              int exponent) {
    // one-sided scaled-integer root comparison: only a certain strict
    // violation reports true
    constexpr unsigned kScaleBits = 96;
    auto scaled_root = [&](const cpp_int& x) {
        return nth_root_floor(x << (kScaleBits * exponent), exponent);
    };
    cpp_int src_lo = scaled_root(edge_power_sum(source, exponent));
    cpp_int parts_hi = 0;
    for (const auto& g : parts) parts_hi += scaled_root(edge_power_sum(g, exponent)) + 1;
    return src_lo > parts_hi;
}

bool power_sum_bound_violated(const DualGraph& source, const std::vector<DualGraph>& parts,
                              int exponent) {
    cpp_int lhs = edge_power_sum(source, exponent);
    cpp_int rhs = 0;
    for (const auto& g : parts) rhs += edge_power_sum(g, exponent);
    cpp_int m = std::min<cpp_int>(static_cast<long long>(parts.size()), source.max_weight());
    rhs *= int_pow(m, exponent - 1);
    return lhs > rhs;
}

}  // namespace collidere
