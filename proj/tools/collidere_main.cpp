#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "collidere/expr.hpp"
#include "collidere/json_io.hpp"
#include "collidere/obstructions.hpp"

namespace {

using namespace collidere;

constexpr int kExitPossible = 0;
constexpr int kExitImpossible = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitBudget = 65;

struct RunConfig {
    std::string format = "text";
    long long budget_nodes = 10'000'000;
    std::optional<long long> wall_ms;
    std::string deviations_path;
    std::vector<Deviation> deviations;

    SearchBudget budget() const { return SearchBudget{budget_nodes, wall_ms}; }
    bool json() const { return format == "json"; }
};

void emit(const RunConfig& cfg, const Json& json_payload, const std::string& text_payload) {
    if (cfg.json())
        std::cout << json_payload.dump(2) << "\n";
    else
        std::cout << text_payload;
}

SingularityType parse_single_type(const std::string& text) {
    TypeExpression e = parse_expression(text);
    if (e.types.size() != 1)
        throw Error(ErrorCode::SyntaxError,
                    "expected a single type, got " + std::to_string(e.types.size()) + " in '" +
                        text + "'");
    return e.types[0];
}

std::string signature_text(const Signature& s) {
    return "(" + std::to_string(s.plus) + ", " + std::to_string(s.zero) + ", " +
           std::to_string(s.minus) + ")";
}

std::string spectrum_text(const Spectrum& sp) {
    std::string out;
    for (const auto& [v, m] : sp.values()) {
        if (!out.empty()) out += ", ";
        out += rat_to_display_string(v);
        if (m != 1) out += " x" + std::to_string(m);
    }
    return out;
}

int verdict_exit(const ObstructionReport& r) {
    if (r.verdict == Verdict::Impossible) return kExitImpossible;
    if (r.verdict == Verdict::Possible) return kExitPossible;
    return r.budget_exhausted ? kExitBudget : kExitUnknown;
}

int cmd_invariants(RunConfig& cfg, const std::string& expr_text) {
    TypeExpression e = parse_expression(expr_text);
    Json types = Json::array();
    std::string text = print_expression_spaced(e.types) + "\n";
    long long total_delta = 0, total_mu = 0, total_kappa = 0;
    std::optional<long long> total_tau = 0;
    Signature total_sig;
    bool all_models = true;

    std::size_t i = 0;
    while (i < e.types.size()) {
        std::size_t j = i;
        while (j < e.types.size() && e.types[j] == e.types[i]) ++j;
        const auto& t = e.types[i];
        const long long count = static_cast<long long>(j - i);
        InvariantBundle b = basic_invariants(t);
        Json entry{{"type", type_to_json(t)}, {"count", count}, {"invariants", bundle_to_json(b)}};
        text += t.display() + " x" + std::to_string(count) + ": r=" + std::to_string(b.r) +
                " mult=" + std::to_string(b.mult) + " delta=" + std::to_string(b.delta) +
                " mu=" + std::to_string(b.mu) + " kappa=" + std::to_string(b.kappa) +
                " tau_es=" + (b.tau_es ? std::to_string(*b.tau_es) : "unknown") + "\n";
        total_delta += count * b.delta;
        total_mu += count * b.mu;
        total_kappa += count * b.kappa;
        if (b.tau_es && total_tau)
            *total_tau += count * *b.tau_es;
        else
            total_tau.reset();
        if (auto m = brieskorn_model(t)) {
            Spectrum sp = spectrum(*m);
            Signature sig = signature_with_crosscheck(*m, &cfg.deviations);
            entry["brieskorn"] = Json{{"p", m->p}, {"q", m->q}};
            entry["spectrum"] = spectrum_to_json(sp);
            entry["signature"] = signature_to_json(sig);
            text += "  brieskorn: x^" + std::to_string(m->p) + " + y^" + std::to_string(m->q) +
                    "\n  spectrum: " + spectrum_text(sp) +
                    "\n  signature: " + signature_text(sig) + "\n";
            for (long long c = 0; c < count; ++c) total_sig += sig;
        } else {
            all_models = false;
        }
        types.push_back(entry);
        i = j;
    }

    Json totals{{"delta", total_delta}, {"mu", total_mu}, {"kappa", total_kappa}};
    totals["tau_es"] = total_tau ? Json(*total_tau) : Json(nullptr);
    text += "totals: delta=" + std::to_string(total_delta) + " mu=" + std::to_string(total_mu) +
            " kappa=" + std::to_string(total_kappa) +
            " tau_es=" + (total_tau ? std::to_string(*total_tau) : "unknown") + "\n";
    if (all_models) {
        totals["signature"] = signature_to_json(total_sig);
        text += "totals signature: " + signature_text(total_sig) + "\n";
    }
    emit(cfg, Json{{"expr", print_expression(e.types)}, {"types", types}, {"totals", totals}},
         text);
    return kExitPossible;
}

int cmd_check(RunConfig& cfg, const std::string& source_text, const std::string& into_text) {
    DeformationProblem p =
        make_problem(parse_single_type(source_text), parse_expression(into_text).types);
    ObstructionReport r = aggregate_verdict(p, cfg.budget(), &cfg.deviations);
    emit(cfg, report_to_json(r), report_to_text(r));
    return verdict_exit(r);
}

int cmd_decompose(RunConfig& cfg, const std::string& source_text, const std::string& into_text) {
    SingularityType source = parse_single_type(source_text);
    if (!into_text.empty()) {
        std::vector<SingularityType> targets =
            normalize_targets(parse_expression(into_text).types);
        DecomposeResult r = decompose_check(source, targets, cfg.budget());
        Json j{{"source", type_to_json(source)},
               {"targets_expr", print_expression(targets)},
               {"nodes", r.nodes}};
        std::string head = source.display() + " -> " + print_expression_spaced(targets) + ": ";
        switch (r.status) {
            case DecomposeStatus::Witness:
                j["status"] = "WITNESS";
                j["witness"] = witness_to_json(targets, *r.witness);
                emit(cfg, j, head + "WITNESS\n" + witness_to_json(targets, *r.witness).dump(2) + "\n");
                return kExitPossible;
            case DecomposeStatus::NoDecomposition:
                j["status"] = "NO_DECOMPOSITION";
                emit(cfg, j, head + "NO_DECOMPOSITION\n");
                return kExitImpossible;
            case DecomposeStatus::BudgetExceeded:
                j["status"] = "BUDGET_EXCEEDED";
                emit(cfg, j, head + "BUDGET_EXCEEDED\n");
                return kExitBudget;
        }
    }
    TargetEnumeration en = enumerate_decomposition_targets(source, cfg.budget());
    Json entries = Json::array();
    std::string text = "decompositions of " + source.display() + ":\n";
    for (const auto& entry : en.entries) {
        Json tj = Json::array();
        for (const auto& t : entry.targets) tj.push_back(type_to_json(t));
        entries.push_back(Json{{"targets_expr", print_expression(entry.targets)},
                               {"targets", tj},
                               {"witness", witness_to_json(entry.targets, entry.witness)}});
        text += "  " + print_expression_spaced(entry.targets) + "\n";
    }
    if (!en.complete) text += "  (incomplete: budget exceeded)\n";
    emit(cfg,
         Json{{"source", type_to_json(source)},
              {"entries", entries},
              {"complete", en.complete},
              {"nodes", en.nodes}},
         text);
    return en.complete ? kExitPossible : kExitBudget;
}

int cmd_canonical_omp(RunConfig& cfg, const std::string& source_text) {
    SingularityType source = parse_single_type(source_text);
    auto pieces = canonical_omp_decomposition(source);
    std::string text = "canonical OMP decomposition of " + source.display() + ": ";
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i) text += " + ";
        text += std::to_string(pieces[i].count) + "K_" + std::to_string(pieces[i].p);
    }
    text += "\n";
    emit(cfg, Json{{"source", type_to_json(source)}, {"pieces", omp_pieces_to_json(pieces)}},
         text);
    return kExitPossible;
}

int cmd_collide_nodes(RunConfig& cfg, long long n) {
    auto types = collide_nodes(n);
    Json list = Json::array();
    std::string text = "collisions of " + std::to_string(n) + " nodes:\n";
    for (const auto& t : types) {
        list.push_back(type_to_json(t));
        text += "  " + t.display() + "\n";
    }
    emit(cfg, Json{{"n", n}, {"types", list}}, text);
    return kExitPossible;
}

int cmd_witness_omp(RunConfig& cfg, long long p, const std::vector<long long>& parts) {
    OmpCriterion crit = omp_criterion(p, parts);
    Json j{{"p", p}, {"parts", parts}};
    if (crit == OmpCriterion::Impossible) {
        j["criterion"] = "IMPOSSIBLE";
        emit(cfg, j, "IMPOSSIBLE\n");
        return kExitImpossible;
    }
    if (crit == OmpCriterion::NotApplicable) {
        j["criterion"] = "NOT_APPLICABLE";
        emit(cfg, j, "NOT_APPLICABLE (fall back to `decompose`)\n");
        return kExitUnknown;
    }
    ArrangementIncidence arr = construct_omp_witness(p, parts);
    j["criterion"] = "POSSIBLE";
    j["incidence"] = incidence_to_json(arr);
    std::string text = "POSSIBLE: " + std::to_string(arr.lines) + " lines, ";
    for (auto m : arr.multiplicities()) text += std::to_string(m) + "-fold point, ";
    text += std::to_string(arr.node_count()) + " nodes\n";
    emit(cfg, j, text);
    return kExitPossible;
}

int cmd_spectrum(RunConfig& cfg, long long p, long long q) {
    BrieskornModel m{std::min(p, q), std::max(p, q)};
    Spectrum sp = spectrum(m);
    Signature sig = signature_with_crosscheck(m, &cfg.deviations);
    emit(cfg,
         Json{{"p", m.p},
              {"q", m.q},
              {"mu", sp.total()},
              {"spectrum", spectrum_to_json(sp)},
              {"signature", signature_to_json(sig)}},
         "spectrum of x^" + std::to_string(m.p) + " + y^" + std::to_string(m.q) + " (mu=" +
             std::to_string(sp.total()) + "):\n  " + spectrum_text(sp) +
             "\n  signature: " + signature_text(sig) + "\n");
    return kExitPossible;
}

SingularityType type_from_batch_field(const Json& field) {
    if (field.is_string()) return parse_single_type(field.get<std::string>());
    return canonical_form(graph_from_json(field));
}

int cmd_batch(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open batch file '" + path + "'");
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        Json j;
        try {
            j = Json::parse(trimmed);
        } catch (const Json::exception& e) {
            throw Error(ErrorCode::IoError,
                        "line " + std::to_string(line_no) + ": bad JSON: " + e.what());
        }
        if (!j.is_object() || !j.contains("source") || !j.contains("targets"))
            throw Error(ErrorCode::IoError, "line " + std::to_string(line_no) +
                                                ": expected {\"source\":..., \"targets\":...}");
        SingularityType source = type_from_batch_field(j["source"]);
        std::vector<SingularityType> targets;
        auto append_targets = [&](const Json& field) {
            if (field.is_string())
                for (const auto& t : parse_expression(field.get<std::string>()).types)
                    targets.push_back(t);
            else
                targets.push_back(canonical_form(graph_from_json(field)));
        };
        if (j["targets"].is_array())
            for (const auto& f : j["targets"]) append_targets(f);
        else
            append_targets(j["targets"]);
        ObstructionReport r =
            aggregate_verdict(make_problem(source, targets), cfg.budget(), &cfg.deviations);
        if (cfg.json())
            std::cout << report_to_json(r).dump() << "\n";
        else
            std::cout << report_to_text(r, true) << "\n";
    }
    return kExitPossible;
}

void write_deviations(const RunConfig& cfg) {
    if (cfg.deviations_path.empty() || cfg.deviations.empty()) return;
    std::ofstream out(cfg.deviations_path);
    for (const auto& d : cfg.deviations) out << Json{{"what", d.what}}.dump() << "\n";
    std::cerr << "wrote " << cfg.deviations.size() << " deviation(s) to " << cfg.deviations_path
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"delta-constant collisions of plane-curve singularities with smooth branches: "
                 "invariants, obstructions, verdicts"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    auto* budget_opt = app.add_option("--budget", cfg.budget_nodes, "search-node budget");
    budget_opt->envname("COLLIDERE_BUDGET")->capture_default_str();
    long long wall_ms = 0;
    auto* wall_opt = app.add_option("--wall-ms", wall_ms, "wall-clock cap in milliseconds");
    app.add_option("--deviations", cfg.deviations_path,
                   "path for the oracle-deviations report (written when non-empty)");

    std::string arg_expr, arg_source, arg_into, arg_file;
    long long arg_n = 0, arg_p = 0, arg_q = 0;
    std::vector<long long> arg_parts;

    auto* c_inv = app.add_subcommand("invariants", "classical invariants of a type expression");
    c_inv->add_option("expr", arg_expr, "type expression, e.g. J10 or 2A3+4A1")->required();

    auto* c_check = app.add_subcommand("check", "run the obstruction battery on a deformation");
    c_check->add_option("source", arg_source, "source type")->required();
    c_check->add_option("--into", arg_into, "target multiset expression")->required();

    auto* c_dec = app.add_subcommand("decompose", "dual-graph decompositions of a type");
    c_dec->add_option("source", arg_source, "source type")->required();
    c_dec->add_option("--into", arg_into, "specific target multiset (omit to enumerate)");

    auto* c_omp = app.add_subcommand("canonical-omp", "canonical decomposition into OMPs");
    c_omp->add_option("source", arg_source, "source type")->required();

    auto* c_nodes = app.add_subcommand("collide-nodes", "all collision results of n nodes");
    c_nodes->add_option("n", arg_n, "number of nodes")->required()->check(CLI::PositiveNumber);

    auto* c_wit = app.add_subcommand("witness-omp", "line-arrangement witness for K_p -> OMPs");
    c_wit->add_option("p", arg_p, "source multiplicity")->required();
    c_wit->add_option("--parts", arg_parts, "multiplicities >= 3 of the target OMPs")
        ->delimiter(',');

    auto* c_sp = app.add_subcommand("spectrum", "spectrum and signature of x^p + y^q");
    c_sp->add_option("p", arg_p, "first exponent")->required();
    c_sp->add_option("q", arg_q, "second exponent")->required();

    auto* c_batch = app.add_subcommand("batch", "JSONL batch checking, one report per line");
    c_batch->add_option("file", arg_file, "JSONL file of {\"source\":..., \"targets\":...}")
        ->required();

    // global options (--format, --budget, ...) remain usable after the
    // subcommand name
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    if (wall_opt->count()) cfg.wall_ms = wall_ms;

    int rc = kExitUsage;
    try {
        if (c_inv->parsed()) rc = cmd_invariants(cfg, arg_expr);
        if (c_check->parsed()) rc = cmd_check(cfg, arg_source, arg_into);
        if (c_dec->parsed()) rc = cmd_decompose(cfg, arg_source, arg_into);
        if (c_omp->parsed()) rc = cmd_canonical_omp(cfg, arg_source);
        if (c_nodes->parsed()) rc = cmd_collide_nodes(cfg, arg_n);
        if (c_wit->parsed()) rc = cmd_witness_omp(cfg, arg_p, arg_parts);
        if (c_sp->parsed()) rc = cmd_spectrum(cfg, arg_p, arg_q);
        if (c_batch->parsed()) rc = cmd_batch(cfg, arg_file);
    } catch (const collidere::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        rc = kExitUsage;
    }
    write_deviations(cfg);
    return rc;
}
