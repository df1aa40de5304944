#include "collidere/json_io.hpp"

#include <fstream>

namespace collidere {

Json graph_to_json(const DualGraph& g) {
    Json weights = Json::array();
    for (const auto& e : g.edges()) weights.push_back({e.i, e.j, e.w});
    return Json{{"branches", g.branches()}, {"weights", weights}};
}

DualGraph graph_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("branches") || !j.contains("weights"))
        throw Error(ErrorCode::IoError, "graph JSON needs 'branches' and 'weights'");
    if (!j["branches"].is_number_integer())
        throw Error(ErrorCode::IoError, "'branches' must be an integer");
    std::vector<WeightedEdge> edges;
    for (const auto& entry : j["weights"]) {
        if (!entry.is_array() || entry.size() != 3)
            throw Error(ErrorCode::IoError, "each weight entry must be [i, j, w]");
        edges.push_back({entry[0].get<int>(), entry[1].get<int>(), entry[2].get<long long>()});
    }
    return DualGraph::from_edges(j["branches"].get<int>(), edges);
}

DualGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open graph file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::IoError, "bad JSON in '" + path + "': " + e.what());
    }
    return graph_from_json(j);
}

Json type_to_json(const SingularityType& t) {
    Json j{{"key", t.key()},
           {"branches", t.branches()},
           {"delta", t.delta()},
           {"graph", graph_to_json(t.graph())}};
    if (auto n = t.name()) j["name"] = *n;
    return j;
}

Json spectrum_to_json(const Spectrum& s) {
    Json out = Json::array();
    for (const auto& [v, m] : s.values()) out.push_back({rat_to_fraction_string(v), m});
    return out;
}

Json signature_to_json(const Signature& s) {
    return Json{{"plus", s.plus}, {"zero", s.zero}, {"minus", s.minus}};
}

Json bundle_to_json(const InvariantBundle& b) {
    Json j{{"r", b.r}, {"mult", b.mult}, {"delta", b.delta}, {"mu", b.mu}, {"kappa", b.kappa}};
    j["tau_es"] = b.tau_es ? Json(*b.tau_es) : Json(nullptr);
    return j;
}

Json witness_to_json(const std::vector<SingularityType>& targets, const DecompositionWitness& w) {
    Json comps = Json::array();
    for (std::size_t i = 0; i < w.maps.size(); ++i) {
        Json c{{"map", w.maps[i].image}};
        if (i < targets.size()) c["type"] = targets[i].display();
        comps.push_back(c);
    }
    return Json{{"components", comps}};
}

DecompositionWitness witness_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("components"))
        throw Error(ErrorCode::IoError, "witness JSON needs 'components'");
    DecompositionWitness w;
    for (const auto& c : j["components"]) {
        if (!c.is_object() || !c.contains("map"))
            throw Error(ErrorCode::IoError, "witness component needs 'map'");
        ComponentMap m;
        for (const auto& v : c["map"]) m.image.push_back(v.get<int>());
        w.maps.push_back(std::move(m));
    }
    return w;
}

Json incidence_to_json(const ArrangementIncidence& a) {
    Json points = Json::array();
    for (const auto& pt : a.points) points.push_back(Json{{"lines", pt}});
    return Json{{"lines", a.lines}, {"points", points}};
}

Json omp_pieces_to_json(const std::vector<OmpPiece>& pieces) {
    Json out = Json::array();
    for (const auto& p : pieces) out.push_back(Json{{"p", p.p}, {"count", p.count}});
    return out;
}

}  // namespace collidere
