#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "collidere/expr.hpp"
#include "collidere/json_io.hpp"
#include "collidere/obstructions.hpp"

namespace py = pybind11;
using namespace collidere;

namespace {

SearchBudget budget_of(long long max_nodes) { return SearchBudget{max_nodes, std::nullopt}; }

std::vector<std::pair<std::string, long long>> spectrum_pairs(long long p, long long q) {
    std::vector<std::pair<std::string, long long>> out;
    Spectrum sp = spectrum(BrieskornModel{p, q});
    for (const auto& [v, m] : sp.values()) out.emplace_back(rat_to_fraction_string(v), m);
    return out;
}

std::tuple<long long, long long, long long> sig_tuple(const Signature& s) {
    return {s.plus, s.zero, s.minus};
}

py::dict decompose_dict(const SingularityType& source, std::vector<SingularityType> targets,
                        long long max_nodes) {
    targets = normalize_targets(std::move(targets));
    DecomposeResult r = decompose_check(source, targets, budget_of(max_nodes));
    py::dict out;
    out["nodes"] = r.nodes;
    switch (r.status) {
        case DecomposeStatus::Witness: {
            out["status"] = "WITNESS";
            py::list maps;
            for (const auto& m : r.witness->maps) maps.append(m.image);
            out["witness"] = maps;
            out["targets_expr"] = print_expression(targets);
            break;
        }
        case DecomposeStatus::NoDecomposition:
            out["status"] = "NO_DECOMPOSITION";
            out["witness"] = py::none();
            break;
        case DecomposeStatus::BudgetExceeded:
            out["status"] = "BUDGET_EXCEEDED";
            out["witness"] = py::none();
            break;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_collidere, m) {
    m.doc() = "dual-graph calculus for delta-constant deformations of plane-curve "
              "singularities with smooth branches";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<SingularityType>(m, "SingularityType")
        .def_property_readonly("key", &SingularityType::key)
        .def_property_readonly("branches", &SingularityType::branches)
        .def_property_readonly("delta", &SingularityType::delta)
        .def_property_readonly("name",
                               [](const SingularityType& t) -> py::object {
                                   if (auto n = t.name()) return py::cast(*n);
                                   return py::none();
                               })
        .def("display", &SingularityType::display)
        .def("weights",
             [](const SingularityType& t) {
                 std::vector<std::tuple<int, int, long long>> out;
                 for (const auto& e : t.graph().edges()) out.emplace_back(e.i, e.j, e.w);
                 return out;
             })
        .def("__eq__", [](const SingularityType& a, const SingularityType& b) { return a == b; })
        .def("__hash__", [](const SingularityType& t) { return py::hash(py::cast(t.key())); })
        .def("__repr__",
             [](const SingularityType& t) { return "<SingularityType " + t.display() + ">"; });

    m.def("named_type", &make_named_type, py::arg("name"));
    m.def(
        "graph_type",
        [](int branches, const std::vector<std::tuple<int, int, long long>>& weights) {
            std::vector<WeightedEdge> edges;
            for (const auto& [i, j, w] : weights) edges.push_back({i, j, w});
            return canonical_form(DualGraph::from_edges(branches, edges));
        },
        py::arg("branches"), py::arg("weights"));
    m.def("parse_expression",
          [](const std::string& text) { return parse_expression(text).types; });
    m.def("print_expression", &print_expression);
    m.def("enumerate_types_with_delta", &enumerate_types_with_delta, py::arg("n"));
    m.def("collide_nodes", &collide_nodes, py::arg("n"));

    m.def("invariants", [](const SingularityType& t) {
        InvariantBundle b = basic_invariants(t);
        py::dict out;
        out["r"] = b.r;
        out["mult"] = b.mult;
        out["delta"] = b.delta;
        out["mu"] = b.mu;
        out["kappa"] = b.kappa;
        out["tau_es"] = b.tau_es ? py::cast(*b.tau_es) : py::none();
        return out;
    });
    m.def("brieskorn_model", [](const SingularityType& t) -> py::object {
        if (auto mdl = brieskorn_model(t)) return py::make_tuple(mdl->p, mdl->q);
        return py::none();
    });
    m.def("spectrum", &spectrum_pairs, py::arg("p"), py::arg("q"));
    m.def(
        "interval_count",
        [](long long p, long long q, const std::string& lo, const std::string& hi, bool lo_open,
           bool hi_open) {
            return interval_count(spectrum(BrieskornModel{p, q}), rat_from_string(lo),
                                  rat_from_string(hi), lo_open, hi_open);
        },
        py::arg("p"), py::arg("q"), py::arg("lo"), py::arg("hi"), py::arg("lo_open") = true,
        py::arg("hi_open") = true);
    m.def(
        "closed_form_spectral_count",
        [](const std::string& family, long long p, long long k, const std::string& alpha) {
            SpectralFamily f = family == "omp" ? SpectralFamily::Omp : SpectralFamily::Kpk;
            return closed_form_spectral_count(f, p, k, rat_from_string(alpha));
        },
        py::arg("family"), py::arg("p"), py::arg("k"), py::arg("alpha") = "0");
    m.def("signature_steenbrink",
          [](long long p, long long q) { return sig_tuple(signature_steenbrink({p, q})); });
    m.def("signature_from_spectrum", [](long long p, long long q) {
        return sig_tuple(signature_from_spectrum(spectrum(BrieskornModel{p, q})));
    });
    m.def("signature_closed_form",
          [](long long p, long long k) { return sig_tuple(signature_closed_form(p, k)); });
    m.def("tau_es", [](const SingularityType& t) -> py::object {
        if (auto v = tau_es(t)) return py::cast(*v);
        return py::none();
    });

    m.def("decompose_check", &decompose_dict, py::arg("source"), py::arg("targets"),
          py::arg("max_nodes") = 10'000'000LL);
    m.def(
        "verify_witness",
        [](const SingularityType& source, std::vector<SingularityType> targets,
           const std::vector<std::vector<int>>& maps) {
            DecompositionWitness w;
            for (const auto& image : maps) w.maps.push_back({image});
            return verify_witness(source, normalize_targets(std::move(targets)), w);
        },
        py::arg("source"), py::arg("targets"), py::arg("maps"));
    m.def(
        "canonical_omp",
        [](const SingularityType& t) {
            std::vector<std::pair<int, long long>> out;
            for (const auto& piece : canonical_omp_decomposition(t))
                out.emplace_back(piece.p, piece.count);
            return out;
        },
        py::arg("source"));
    m.def(
        "omp_criterion",
        [](long long p, const std::vector<long long>& parts) -> std::string {
            switch (omp_criterion(p, parts)) {
                case OmpCriterion::Possible: return "POSSIBLE";
                case OmpCriterion::Impossible: return "IMPOSSIBLE";
                case OmpCriterion::NotApplicable: return "NOT_APPLICABLE";
            }
            return "?";
        },
        py::arg("p"), py::arg("parts"));
    m.def(
        "omp_witness_json",
        [](long long p, std::vector<long long> parts) {
            return incidence_to_json(construct_omp_witness(p, std::move(parts))).dump();
        },
        py::arg("p"), py::arg("parts"));
    m.def(
        "check_json",
        [](const SingularityType& source, std::vector<SingularityType> targets,
           long long max_nodes) {
            auto problem = make_problem(source, std::move(targets));
            return report_to_json(aggregate_verdict(problem, budget_of(max_nodes))).dump();
        },
        py::arg("source"), py::arg("targets"), py::arg("max_nodes") = 10'000'000LL);
    m.def(
        "enumerate_decompositions_json",
        [](const SingularityType& source, long long max_nodes) {
            TargetEnumeration en = enumerate_decomposition_targets(source, budget_of(max_nodes));
            Json entries = Json::array();
            for (const auto& e : en.entries) {
                Json tj = Json::array();
                for (const auto& t : e.targets) tj.push_back(type_to_json(t));
                entries.push_back(Json{{"targets_expr", print_expression(e.targets)},
                                       {"targets", tj},
                                       {"witness", witness_to_json(e.targets, e.witness)}});
            }
            return Json{{"entries", entries}, {"complete", en.complete}, {"nodes", en.nodes}}
                .dump();
        },
        py::arg("source"), py::arg("max_nodes") = 10'000'000LL);
}
