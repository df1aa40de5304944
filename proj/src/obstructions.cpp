#include "collidere/obstructions.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "collidere/expr.hpp"
#include "existence_table_data.hpp"

namespace collidere {

const char* rule_status_name(RuleStatus s) {
    switch (s) {
        case RuleStatus::Pass: return "PASS";
        case RuleStatus::Fail: return "FAIL";
        case RuleStatus::Skipped: return "SKIPPED";
        case RuleStatus::Warn: return "WARN";
    }
    return "?";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Possible: return "POSSIBLE";
        case Verdict::Impossible: return "IMPOSSIBLE";
        case Verdict::Unknown: return "UNKNOWN";
    }
    return "?";
}

DeformationProblem make_problem(SingularityType source, std::vector<SingularityType> targets) {
    if (targets.empty())
        throw Error(ErrorCode::SyntaxError, "a deformation problem needs at least one target");
    return DeformationProblem{std::move(source), normalize_targets(std::move(targets))};
}

namespace {

using boost::multiprecision::cpp_int;

long long choose2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

cpp_int edge_power_sum(const DualGraph& g, int e) {
    cpp_int s = 0;
    for (const auto& edge : g.edges()) {
        cpp_int p = 1;
        for (int i = 0; i < e; ++i) p *= edge.w;
        s += p;
    }
    return s;
}

struct TypeShape {
    int p = 0;             // branches
    Weight k = 0;          // constant pairwise contact, 0 if weights vary
    bool constant = false;
    bool unit_complete = false;  // ordinary multiple point K_p
};

TypeShape shape_of(const SingularityType& t) {
    const DualGraph g = t.graph();
    TypeShape s;
    s.p = g.branches();
    Weight lo = g.min_weight();
    if (g.max_weight() == lo) {
        s.constant = true;
        s.k = lo;
        s.unit_complete = lo == 1;
    }
    return s;
}

// Exact bin packing: can `items` be split into `groups` multisets each
// summing to `group_sum`? Items arrive descending.
bool pack_groups(const std::vector<long long>& items, long long groups, long long group_sum) {
    std::vector<long long> remaining(static_cast<std::size_t>(groups), group_sum);
    std::function<bool(std::size_t)> go = [&](std::size_t idx) -> bool {
        if (idx == items.size()) return true;
        long long prev = -1;
        for (auto& r : remaining) {
            if (r == prev || r < items[idx]) continue;  // identical bins once
            prev = r;
            r -= items[idx];
            if (go(idx + 1)) return true;
            r += items[idx];
        }
        return false;
    };
    return go(0);
}

// For the p = 3 refinement: split `items` into two groups each summing to k
// and minimize (max of group 1) + (max of group 2). Empty optional when no
// split exists.
std::optional<long long> min_two_group_max_sum(const std::vector<long long>& items, long long k) {
    std::map<long long, long long> count;
    for (long long v : items) ++count[v];
    std::vector<std::pair<long long, long long>> vals(count.begin(), count.end());  // ascending
    std::optional<long long> best;
    std::vector<long long> take(vals.size(), 0);
    std::function<void(std::size_t, long long)> go = [&](std::size_t idx, long long sum) {
        if (sum > k) return;
        if (idx == vals.size()) {
            if (sum != k) return;
            long long max_a = 0, max_b = 0;
            for (std::size_t i = vals.size(); i-- > 0;) {
                if (!max_a && take[i] > 0) max_a = vals[i].first;
                if (!max_b && take[i] < vals[i].second) max_b = vals[i].first;
            }
            if (max_a == 0 || max_b == 0) return;  // a group came out empty
            long long v = max_a + max_b;
            if (!best || v < *best) best = v;
            return;
        }
        for (long long c = 0; c <= vals[idx].second; ++c) {
            take[idx] = c;
            go(idx + 1, sum + c * vals[idx].first);
        }
        take[idx] = 0;
    };
    go(0, 0);
    return best;
}

Json check_entry(const std::string& name, bool ok, Json detail) {
    detail["name"] = name;
    detail["ok"] = ok;
    return detail;
}

}  // namespace

RuleOutcome rule_counting(const DeformationProblem& p) {
    RuleOutcome out;
    out.id = "rule_counting";
    out.status = RuleStatus::Pass;

    const InvariantBundle s = basic_invariants(p.source);
    long long sum_delta = 0, sum_mu = 0, sum_kappa = 0, sum_mu_minus_delta = 0, sum_pairs = 0;
    long long max_mult = 0;
    for (const auto& t : p.targets) {
        InvariantBundle b = basic_invariants(t);
        sum_delta += b.delta;
        sum_mu += b.mu;
        sum_kappa += b.kappa;
        sum_mu_minus_delta += b.mu - b.delta;
        sum_pairs += choose2(b.r);
        max_mult = std::max(max_mult, b.mult);
    }

    Json checks = Json::array();
    auto check = [&](const std::string& name, bool ok, Json detail) {
        checks.push_back(check_entry(name, ok, std::move(detail)));
        if (!ok) out.status = RuleStatus::Fail;
    };

    check("delta_equal", s.delta == sum_delta, {{"source", s.delta}, {"targets", sum_delta}});
    check("mu_semicontinuous", s.mu >= sum_mu, {{"source", s.mu}, {"targets", sum_mu}});
    check("kappa_semicontinuous", s.kappa >= sum_kappa,
          {{"source", s.kappa}, {"targets", sum_kappa}});
    check("mult_semicontinuous", s.mult >= max_mult,
          {{"source", s.mult}, {"targets_max", max_mult}});
    check("mu_minus_delta_semicontinuous", s.mu - s.delta >= sum_mu_minus_delta,
          {{"source", s.mu - s.delta}, {"targets", sum_mu_minus_delta}});
    check("branch_pair_bound", choose2(s.r) <= sum_pairs,
          {{"source", choose2(s.r)}, {"targets", sum_pairs}});

    const DualGraph src = p.source.graph();
    std::vector<DualGraph> parts;
    for (const auto& t : p.targets) parts.push_back(t.graph());
    for (int e = 1; e <= 3; ++e) {
        cpp_int tgt = 0;
        for (const auto& g : parts) tgt += edge_power_sum(g, e);
        check("minkowski_e" + std::to_string(e), !minkowski_bound_violated(src, parts, e),
              {{"source_power_sum", edge_power_sum(src, e).str()},
               {"targets_power_sum", tgt.str()}});
    }
    for (int e = 2; e <= 3; ++e) {
        cpp_int tgt = 0;
        for (const auto& g : parts) tgt += edge_power_sum(g, e);
        check("power_sum_e" + std::to_string(e), !power_sum_bound_violated(src, parts, e),
              {{"source_power_sum", edge_power_sum(src, e).str()},
               {"targets_power_sum", tgt.str()},
               {"multiplicity_bound",
                std::min<long long>(static_cast<long long>(parts.size()), src.max_weight())}});
    }
    out.detail = Json{{"checks", checks}};
    return out;
}

RuleOutcome rule_series(const DeformationProblem& p) {
    RuleOutcome out;
    out.id = "rule_series";
    const TypeShape src = shape_of(p.source);

    if (src.unit_complete) {
        // every delta-constant target of an ordinary multiple point is one
        std::vector<long long> parts;
        long long nodes = 0;
        for (const auto& t : p.targets) {
            TypeShape ts = shape_of(t);
            if (!ts.unit_complete) {
                out.status = RuleStatus::Fail;
                out.detail = Json{{"mode", "omp"},
                                  {"non_omp_target", t.display()}};
                return out;
            }
            if (ts.p >= 3)
                parts.push_back(ts.p);
            else
                ++nodes;
        }
        long long implied_nodes = choose2(src.p);
        for (long long pi : parts) implied_nodes -= choose2(pi);
        Json detail{{"mode", "omp"}, {"p", src.p}, {"parts", parts}, {"nodes", nodes},
                    {"implied_nodes", implied_nodes}};
        if (implied_nodes != nodes) {
            out.status = RuleStatus::Fail;
            detail["failed"] = "delta_accounting";
            out.detail = detail;
            return out;
        }
        OmpCriterion crit = omp_criterion(src.p, parts);
        long long k = static_cast<long long>(parts.size());
        long long sum_parts = 0;
        for (long long pi : parts) sum_parts += pi;
        detail["lhs"] = src.p + choose2(k);
        detail["rhs"] = sum_parts;
        if (crit == OmpCriterion::NotApplicable) {
            out.status = RuleStatus::Skipped;
            out.reason = "criterion not applicable (some part below max(k-1,3))";
            out.detail = detail;
            return out;
        }
        if (crit == OmpCriterion::Impossible) {
            out.status = RuleStatus::Fail;
            detail["failed"] = "arrangement_criterion";
            out.detail = detail;
            return out;
        }
        out.status = RuleStatus::Pass;
        ArrangementIncidence arr = construct_omp_witness(src.p, parts);
        out.certificate = Certificate{"omp-arrangement", incidence_to_json(arr)};
        detail["criterion"] = "possible";
        out.detail = detail;
        return out;
    }

    if (src.constant && src.k >= 2) {
        std::vector<long long> items;
        for (const auto& t : p.targets) {
            if (t.branches() != 2) {
                out.status = RuleStatus::Skipped;
                out.reason = "targets are not all A-types";
                return out;
            }
            items.push_back(t.graph().weight(0, 1));  // A_{2i-1} contributes i
        }
        std::sort(items.rbegin(), items.rend());
        const long long k = src.k;
        const long long groups = choose2(src.p);
        Json detail{{"mode", "a_series"}, {"p", src.p}, {"k", k}, {"items", items}};
        auto fail = [&](const std::string& why) {
            out.status = RuleStatus::Fail;
            detail["failed"] = why;
            out.detail = detail;
            return out;
        };
        for (long long i : items)
            if (i > k) return fail("contact_bound_n_i_gt_k");
        long long total = 0;
        for (long long i : items) total += i;
        if (total != groups * k) return fail("delta_accounting");
        if (!pack_groups(items, groups, k)) return fail("k_sum_grouping");
        if (src.p == 3) {
            long long n_k = static_cast<long long>(std::count(items.begin(), items.end(), k));
            detail["n_k"] = n_k;
            if (n_k > 2) return fail("p3_n_k_bound");
            if (n_k == 2) {
                // only 2A_{2k-1} + kA_1 survives
                std::vector<long long> expected(2, k);
                expected.insert(expected.end(), static_cast<std::size_t>(k), 1);
                if (items != expected) return fail("p3_two_maximal_contacts");
            }
            if (n_k == 1) {
                std::vector<long long> rest(items.begin() + 1, items.end());
                auto lm = min_two_group_max_sum(rest, k);
                if (!lm) return fail("k_sum_grouping");
                detail["l_plus_m"] = *lm;
                if (*lm > k + 1) return fail("p3_l_plus_m_bound");
            }
        }
        out.status = RuleStatus::Pass;
        out.detail = detail;
        return out;
    }

    out.status = RuleStatus::Skipped;
    out.reason = "series rules cover K_p and K(p,k) sources only";
    return out;
}

RuleOutcome rule_dual_graph(const DeformationProblem& p, const SearchBudget& budget) {
    RuleOutcome out;
    out.id = "rule_dual_graph";
    DecomposeResult res;
    try {
        res = decompose_check(p.source, p.targets, budget);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DeltaMismatch) {
            out.status = RuleStatus::Skipped;
            out.reason = "delta mismatch (rule_counting already fails)";
            return out;
        }
        throw;
    }
    out.detail = Json{{"nodes", res.nodes}};
    switch (res.status) {
        case DecomposeStatus::Witness:
            out.status = RuleStatus::Pass;
            out.detail["witness"] = witness_to_json(p.targets, *res.witness);
            break;
        case DecomposeStatus::NoDecomposition:
            out.status = RuleStatus::Fail;
            out.detail["no_decomposition"] = true;
            break;
        case DecomposeStatus::BudgetExceeded:
            out.status = RuleStatus::Skipped;
            out.reason = "search budget exceeded";
            out.detail["budget_exceeded"] = true;
            break;
    }
    return out;
}

RuleOutcome rule_spectrum_signature(const DeformationProblem& p,
                                    std::vector<Deviation>* deviations) {
    RuleOutcome out;
    out.id = "rule_spectrum_signature";

    auto src_model = brieskorn_model(p.source);
    if (!src_model) {
        out.status = RuleStatus::Skipped;
        out.reason = "source has no Brieskorn model";
        return out;
    }
    std::vector<BrieskornModel> target_models;
    for (const auto& t : p.targets) {
        auto m = brieskorn_model(t);
        if (!m) {
            out.status = RuleStatus::Skipped;
            out.reason = "target " + t.display() + " has no Brieskorn model";
            return out;
        }
        target_models.push_back(*m);
    }

    const Spectrum sp_src = spectrum(*src_model);
    Spectrum sp_tgt;
    for (const auto& m : target_models) sp_tgt += spectrum(m);

    const Signature sig_src = signature_with_crosscheck(*src_model, deviations);
    Signature sig_tgt;
    for (const auto& m : target_models) sig_tgt += signature_with_crosscheck(m, deviations);

    out.status = RuleStatus::Pass;
    Json checks = Json::array();
    auto check = [&](const std::string& name, bool ok, Json detail) {
        checks.push_back(check_entry(name, ok, std::move(detail)));
        if (!ok) out.status = RuleStatus::Fail;
    };
    const long long mu_src = sp_src.total(), mu_tgt = sp_tgt.total();
    check("mu_plus", sig_tgt.plus <= sig_src.plus,
          {{"source", sig_src.plus}, {"targets", sig_tgt.plus}});
    check("mu_minus", sig_tgt.minus <= sig_src.minus,
          {{"source", sig_src.minus}, {"targets", sig_tgt.minus}});
    check("mu_zero_slack", sig_tgt.zero <= sig_src.zero + (mu_src - mu_tgt),
          {{"source", sig_src.zero},
           {"targets", sig_tgt.zero},
           {"slack", mu_src - mu_tgt}});

    // interval scans: both counts are piecewise constant with breakpoints at
    // {s, s-1} over the joint support
    std::set<Rational> breakpoints;
    for (const auto& [v, m] : sp_src.values()) {
        breakpoints.insert(v);
        breakpoints.insert(v - 1);
    }
    for (const auto& [v, m] : sp_tgt.values()) {
        breakpoints.insert(v);
        breakpoints.insert(v - 1);
    }
    Json violations = Json::array();
    for (const Rational& a : breakpoints) {
        long long cs = interval_count(sp_src, a, a + 1, true, false);
        long long ct = interval_count(sp_tgt, a, a + 1, true, false);
        if (ct > cs) {
            out.status = RuleStatus::Fail;
            violations.push_back(Json{{"interval", "half_open"},
                                      {"alpha", rat_to_fraction_string(a)},
                                      {"source", cs},
                                      {"targets", ct}});
        }
    }
    // Open-interval exceedances are recorded but do not fail the rule: the
    // sound open-window comparisons are the signature checks above (the
    // windows (-1,-1/2) and (-1/2,1/2)); a blanket open scan over all
    // offsets would reject deformations the spectrum provably does not
    // obstruct.
    Json open_exceedances = Json::array();
    std::vector<Rational> open_points(breakpoints.begin(), breakpoints.end());
    const std::size_t n_breaks = open_points.size();
    for (std::size_t i = 0; i + 1 < n_breaks; ++i)
        open_points.push_back((open_points[i] + open_points[i + 1]) / 2);
    std::sort(open_points.begin(), open_points.end());
    for (const Rational& a : open_points) {
        long long cs = interval_count(sp_src, a, a + 1, true, true);
        long long ct = interval_count(sp_tgt, a, a + 1, true, true);
        if (ct > cs)
            open_exceedances.push_back(Json{{"alpha", rat_to_fraction_string(a)},
                                            {"source", cs},
                                            {"targets", ct}});
    }
    out.detail = Json{{"signature_source", signature_to_json(sig_src)},
                      {"signature_targets", signature_to_json(sig_tgt)},
                      {"checks", checks},
                      {"interval_violations", violations},
                      {"open_interval_exceedances", open_exceedances}};
    return out;
}

RuleOutcome rule_hirzebruch(const DeformationProblem& p) {
    RuleOutcome out;
    out.id = "rule_hirzebruch";
    const TypeShape src = shape_of(p.source);
    if (!src.unit_complete) {
        out.status = RuleStatus::Skipped;
        out.reason = "source is not an ordinary multiple point";
        return out;
    }
    std::map<long long, long long> n;  // multiplicity -> count
    for (const auto& t : p.targets) {
        TypeShape ts = shape_of(t);
        if (!ts.unit_complete) {
            out.status = RuleStatus::Skipped;
            out.reason = "target " + t.display() + " is not an ordinary multiple point";
            return out;
        }
        ++n[ts.p];
    }
    const long long P = src.p;
    for (long long i : {P, P - 1, P - 2}) {
        if (i >= 2 && n.count(i) && n[i] > 0) {
            out.status = RuleStatus::Skipped;
            out.reason = "precondition n_" + std::to_string(i) + " = 0 fails";
            out.detail = Json{{"n_" + std::to_string(i), n[i]}};
            return out;
        }
    }
    long long lhs = 4 * n[2] + 3 * n[3];
    long long rhs = 4 * P;
    for (const auto& [i, ni] : n)
        if (i >= 5) rhs += 4 * (2 * i - 9) * ni;
    out.status = lhs >= rhs ? RuleStatus::Pass : RuleStatus::Fail;
    out.detail = Json{{"lhs_4n2_plus_3n3", lhs}, {"rhs", rhs}, {"p", P}};
    return out;
}

RuleOutcome rule_tau_es(const DeformationProblem& p) {
    RuleOutcome out;
    out.id = "rule_tau_es";
    auto tau_src = tau_es(p.source);
    if (!tau_src) {
        out.status = RuleStatus::Skipped;
        out.reason = "tau_es unknown for " + p.source.display();
        return out;
    }
    long long tau_sum = 0;
    for (const auto& t : p.targets) {
        auto tt = tau_es(t);
        if (!tt) {
            out.status = RuleStatus::Skipped;
            out.reason = "tau_es unknown for " + t.display();
            return out;
        }
        tau_sum += *tt;
    }
    out.detail = Json{{"source", *tau_src}, {"targets", tau_sum}};
    if (*tau_src <= tau_sum) {
        out.status = RuleStatus::Warn;
        out.reason = "generic representative cannot deform; special moduli required";
    } else {
        out.status = RuleStatus::Pass;
    }
    return out;
}

namespace {

std::optional<Certificate> find_certificate(const DeformationProblem& p,
                                            const std::vector<RuleOutcome>& rules) {
    if (p.targets.size() == 1 && p.targets[0] == p.source)
        return Certificate{"identity", Json{{"type", p.source.display()}}};
    for (const auto& r : rules)
        if (r.certificate) return r.certificate;
    if (auto row = existence_lookup(p))
        return Certificate{"existence-table",
                           Json{{"source", row->source},
                                {"targets", row->targets},
                                {"basis", row->basis}}};
    // the canonical splitting into ordinary multiple points always deforms
    bool all_omp = true;
    std::map<int, long long> counts;
    for (const auto& t : p.targets) {
        TypeShape ts = shape_of(t);
        if (!ts.unit_complete) {
            all_omp = false;
            break;
        }
        ++counts[ts.p];
    }
    if (all_omp) {
        std::map<int, long long> canonical;
        for (const auto& piece : canonical_omp_decomposition(p.source))
            canonical[piece.p] = piece.count;
        if (counts == canonical)
            return Certificate{"canonical-omp",
                               omp_pieces_to_json(canonical_omp_decomposition(p.source))};
    }
    return std::nullopt;
}

}  // namespace

ObstructionReport aggregate_verdict(const DeformationProblem& p, const SearchBudget& budget,
                                    std::vector<Deviation>* deviations) {
    ObstructionReport report{p};
    report.rules.push_back(rule_counting(p));
    report.rules.push_back(rule_series(p));
    report.rules.push_back(rule_dual_graph(p, budget));
    report.rules.push_back(rule_spectrum_signature(p, deviations));
    report.rules.push_back(rule_hirzebruch(p));
    report.rules.push_back(rule_tau_es(p));

    for (const auto& r : report.rules) {
        if (r.id == "rule_dual_graph") {
            if (r.detail.contains("nodes")) report.search_nodes = r.detail["nodes"].get<long long>();
            if (r.detail.contains("budget_exceeded")) report.budget_exhausted = true;
        }
    }
    for (const auto& r : report.rules)
        if (r.status == RuleStatus::Fail) {
            report.verdict = Verdict::Impossible;
            report.verdict_rule = r.id;
            break;
        }
    if (report.verdict != Verdict::Impossible) {
        report.certificate = find_certificate(p, report.rules);
        report.verdict = report.certificate ? Verdict::Possible : Verdict::Unknown;
    }
    return report;
}

Json report_to_json(const ObstructionReport& r) {
    Json targets = Json::array();
    for (const auto& t : r.problem.targets) targets.push_back(type_to_json(t));
    Json rules = Json::array();
    for (const auto& rule : r.rules) {
        Json j{{"id", rule.id},
               {"status", rule_status_name(rule.status)},
               {"detail", rule.detail.is_null() ? Json::object() : rule.detail}};
        if (!rule.reason.empty()) j["reason"] = rule.reason;
        rules.push_back(j);
    }
    Json out{{"problem",
              Json{{"source", type_to_json(r.problem.source)},
                   {"targets", targets},
                   {"expr", Json{{"source", r.problem.source.display()},
                                 {"targets", print_expression(r.problem.targets)}}}}},
             {"rules", rules},
             {"verdict", verdict_name(r.verdict)},
             {"budget_exhausted", r.budget_exhausted},
             {"search_nodes", r.search_nodes}};
    out["verdict_rule"] = r.verdict_rule ? Json(*r.verdict_rule) : Json(nullptr);
    out["certificate"] = r.certificate
                             ? Json{{"kind", r.certificate->kind}, {"data", r.certificate->data}}
                             : Json(nullptr);
    return out;
}

std::string report_to_text(const ObstructionReport& r, bool one_line) {
    std::string head = r.problem.source.display() + " -> " +
                       print_expression_spaced(r.problem.targets) + ": " +
                       verdict_name(r.verdict);
    if (one_line) return head;
    std::string out = "check: " + r.problem.source.display() + " -> " +
                      print_expression_spaced(r.problem.targets) + "\n";
    for (const auto& rule : r.rules) {
        out += "  " + rule.id + ": " + rule_status_name(rule.status);
        if (!rule.reason.empty()) out += " (" + rule.reason + ")";
        if (rule.status == RuleStatus::Fail && rule.detail.contains("failed"))
            out += " [" + rule.detail["failed"].get<std::string>() + "]";
        out += "\n";
    }
    out += "verdict: " + std::string(verdict_name(r.verdict));
    if (r.verdict_rule) out += " (" + *r.verdict_rule + ")";
    if (r.certificate) out += " [certificate: " + r.certificate->kind + "]";
    out += "\n";
    return out;
}

const std::vector<ExistenceEntry>& existence_table() {
    static const std::vector<ExistenceEntry> table = [] {
        std::vector<ExistenceEntry> out;
        Json j = Json::parse(kExistenceTableJson);
        for (const auto& entry : j["entries"])
            out.push_back({entry["source"].get<std::string>(),
                           entry["targets"].get<std::string>(),
                           entry["basis"].get<std::string>()});
        return out;
    }();
    return table;
}

std::optional<ExistenceEntry> existence_lookup(const DeformationProblem& p) {
    struct ParsedEntry {
        std::string source_key;
        std::vector<std::string> target_keys;
        const ExistenceEntry* row;
    };
    static const std::vector<ParsedEntry> parsed = [] {
        std::vector<ParsedEntry> out;
        for (const auto& row : existence_table()) {
            ParsedEntry pe;
            pe.source_key = parse_expression(row.source).types.at(0).key();
            for (const auto& t : parse_expression(row.targets).types)
                pe.target_keys.push_back(t.key());
            pe.row = &row;
            out.push_back(std::move(pe));
        }
        return out;
    }();
    std::vector<std::string> keys;
    for (const auto& t : p.targets) keys.push_back(t.key());
    for (const auto& pe : parsed)
        if (pe.source_key == p.source.key() && pe.target_keys == keys) return *pe.row;
    return std::nullopt;
}

}  // namespace collidere
