#include <doctest.h>

#include "collidere/expr.hpp"
#include "collidere/obstructions.hpp"

using namespace collidere;

namespace {

DeformationProblem problem(const std::string& source, const std::string& targets) {
    return make_problem(make_named_type(source), parse_expression(targets).types);
}

RuleStatus status_of(const ObstructionReport& r, const std::string& id) {
    for (const auto& rule : r.rules)
        if (rule.id == id) return rule.status;
    FAIL(("missing rule " + id));
    return RuleStatus::Skipped;
}

}  // namespace

TEST_CASE("rule_counting") {
    CHECK(rule_counting(problem("K5", "3K3+A1")).status == RuleStatus::Pass);
    CHECK(rule_counting(problem("X9", "2D4")).status == RuleStatus::Pass);
    RuleOutcome r = rule_counting(problem("D4", "2A1"));
    CHECK(r.status == RuleStatus::Fail);
    bool delta_failed = false;
    for (const auto& c : r.detail["checks"])
        if (c["name"] == "delta_equal" && !c["ok"].get<bool>()) delta_failed = true;
    CHECK(delta_failed);
}

TEST_CASE("rule_dual_graph") {
    CHECK(rule_dual_graph(problem("K5", "3K3+A1"), {}).status == RuleStatus::Fail);
    CHECK(rule_dual_graph(problem("K(4,3)", "7A3+4A1"), {}).status == RuleStatus::Fail);
    RuleOutcome r = rule_dual_graph(problem("J10", "3A3"), {});
    CHECK(r.status == RuleStatus::Pass);
    CHECK(r.detail.contains("witness"));
    CHECK(rule_dual_graph(problem("K5", "3K3+A1"), SearchBudget{2, std::nullopt}).status ==
          RuleStatus::Skipped);
    CHECK(rule_dual_graph(problem("D4", "2A1"), {}).status == RuleStatus::Skipped);  // delta
}

TEST_CASE("rule_spectrum_signature") {
    RuleOutcome j10 = rule_spectrum_signature(problem("J10", "3A3"));
    CHECK(j10.status == RuleStatus::Fail);
    bool minus_failed = false;
    for (const auto& c : j10.detail["checks"])
        if (c["name"] == "mu_minus" && !c["ok"].get<bool>()) {
            minus_failed = true;
            CHECK(c["source"] == 8);
            CHECK(c["targets"] == 9);
        }
    CHECK(minus_failed);

    CHECK(rule_spectrum_signature(problem("K5", "3K3+A1")).status == RuleStatus::Pass);
    CHECK(rule_spectrum_signature(problem("A3", "2A1")).status == RuleStatus::Pass);
    // no Brieskorn model on a target
    CHECK(rule_spectrum_signature(problem("D6", "D4+A1")).status == RuleStatus::Skipped);
}

TEST_CASE("rule_hirzebruch") {
    CHECK(rule_hirzebruch(problem("K21", "21K5")).status == RuleStatus::Fail);
    CHECK(rule_hirzebruch(problem("K9", "12K3")).status == RuleStatus::Pass);
    RuleOutcome r = rule_hirzebruch(problem("K4", "2D4"));
    CHECK(r.status == RuleStatus::Skipped);
    CHECK(r.reason.find("n_3") != std::string::npos);
    CHECK(rule_hirzebruch(problem("J10", "3A3")).status == RuleStatus::Skipped);
}

TEST_CASE("rule_series") {
    CHECK(rule_series(problem("K5", "3K3+A1")).status == RuleStatus::Fail);
    RuleOutcome kpk = rule_series(problem("K(4,3)", "7A3+4A1"));
    CHECK(kpk.status == RuleStatus::Fail);
    CHECK(kpk.detail["failed"] == "k_sum_grouping");
    RuleOutcome ok = rule_series(problem("K(3,2)", "2A3+2A1"));
    CHECK(ok.status == RuleStatus::Pass);
    // p = 3 refinements
    CHECK(rule_series(problem("J10", "3A3")).detail["failed"] == "p3_n_k_bound");
    CHECK(rule_series(problem("K(3,4)", "2A7+A5+A1")).detail["failed"] ==
          "p3_two_maximal_contacts");
    CHECK(rule_series(problem("K(3,4)", "A7+2A5+2A1")).detail["failed"] == "p3_l_plus_m_bound");
    CHECK(rule_series(problem("K(3,4)", "A7+A5+A3+3A1")).status == RuleStatus::Pass);
    // contact bound
    CHECK(rule_series(problem("K(3,2)", "A7+A3")).detail["failed"] == "contact_bound_n_i_gt_k");
    // a non-OMP target of an OMP source is failed outright
    CHECK(rule_series(problem("X9", "A3+2A1+D4")).status == RuleStatus::Fail);
    // mixed targets of a K(p,k) source are out of this rule's reach
    CHECK(rule_series(problem("K(4,2)", "3D4+3A1")).status == RuleStatus::Skipped);
    // certificates come with the possible verdicts
    RuleOutcome cert = rule_series(problem("X9", "D4+3A1"));
    CHECK(cert.status == RuleStatus::Pass);
    REQUIRE(cert.certificate.has_value());
    CHECK(cert.certificate->kind == "omp-arrangement");
}

TEST_CASE("rule_tau_es") {
    RuleOutcome x9 = rule_tau_es(problem("X9", "2D4"));
    CHECK(x9.status == RuleStatus::Warn);
    CHECK(x9.detail["source"] == 8);
    CHECK(x9.detail["targets"] == 8);
    CHECK(rule_tau_es(problem("J10", "3A3")).status == RuleStatus::Warn);
    CHECK(rule_tau_es(problem("K3", "3A1")).status == RuleStatus::Pass);
    CHECK(rule_tau_es(problem("D6", "4A1")).status == RuleStatus::Skipped);
}

TEST_CASE("aggregate verdicts reproduce the worked examples") {
    ObstructionReport x9 = aggregate_verdict(problem("X9", "2D4"), {});
    CHECK(x9.verdict == Verdict::Impossible);

    ObstructionReport k5 = aggregate_verdict(problem("K5", "3K3+A1"), {});
    CHECK(k5.verdict == Verdict::Impossible);
    CHECK(status_of(k5, "rule_spectrum_signature") == RuleStatus::Pass);
    CHECK(status_of(k5, "rule_dual_graph") == RuleStatus::Fail);

    ObstructionReport j10 = aggregate_verdict(problem("J10", "3A3"), {});
    CHECK(j10.verdict == Verdict::Impossible);
    CHECK(status_of(j10, "rule_dual_graph") == RuleStatus::Pass);
    CHECK(status_of(j10, "rule_spectrum_signature") == RuleStatus::Fail);

    CHECK(aggregate_verdict(problem("K(4,3)", "7A3+4A1"), {}).verdict == Verdict::Impossible);

    ObstructionReport unknown = aggregate_verdict(problem("K(3,4)", "6A3"), {});
    CHECK(unknown.verdict == Verdict::Unknown);
    for (const auto& r : unknown.rules) CHECK(r.status != RuleStatus::Fail);

    ObstructionReport poss = aggregate_verdict(problem("K(4,2)", "3D4+3A1"), {});
    CHECK(poss.verdict == Verdict::Possible);
    REQUIRE(poss.certificate.has_value());
    CHECK(poss.certificate->kind == "existence-table");
}

TEST_CASE("possible via the arrangement certificate and via identity") {
    ObstructionReport arr = aggregate_verdict(problem("X9", "D4+3A1"), {});
    CHECK(arr.verdict == Verdict::Possible);
    REQUIRE(arr.certificate.has_value());
    CHECK(arr.certificate->kind == "omp-arrangement");

    ObstructionReport self = aggregate_verdict(problem("J10", "J10"), {});
    CHECK(self.verdict == Verdict::Possible);
    CHECK(self.certificate->kind == "identity");

    ObstructionReport canon = aggregate_verdict(problem("K(4,2)", "2X9"), {});
    CHECK(canon.verdict == Verdict::Possible);
    CHECK(canon.certificate->kind == "canonical-omp");
}

TEST_CASE("a blown budget is never read as impossibility") {
    ObstructionReport r = aggregate_verdict(problem("K(3,4)", "6A3"), SearchBudget{2, std::nullopt});
    CHECK(r.verdict == Verdict::Unknown);
    CHECK(r.budget_exhausted);
    CHECK(status_of(r, "rule_dual_graph") == RuleStatus::Skipped);
}

TEST_CASE("golden deformations never fail a rule") {
    for (const auto& row : existence_table()) {
        DeformationProblem p = make_problem(parse_expression(row.source).types.at(0),
                                            parse_expression(row.targets).types);
        ObstructionReport rep = aggregate_verdict(p, {});
        for (const auto& rule : rep.rules) {
            INFO(row.source << " -> " << row.targets << " rule " << rule.id);
            CHECK(rule.status != RuleStatus::Fail);
        }
        CHECK(rep.verdict == Verdict::Possible);
    }
}

TEST_CASE("canonical OMP splittings never fail a rule") {
    for (long long d = 1; d <= 8; ++d)
        for (const auto& src : enumerate_types_with_delta(d)) {
            std::vector<SingularityType> targets;
            for (const auto& piece : canonical_omp_decomposition(src))
                for (long long i = 0; i < piece.count; ++i)
                    targets.push_back(canonical_form(DualGraph::complete(piece.p, 1)));
            ObstructionReport rep = aggregate_verdict(make_problem(src, targets), {});
            for (const auto& rule : rep.rules) {
                INFO(src.display() << " -> canonical OMPs, rule " << rule.id);
                CHECK(rule.status != RuleStatus::Fail);
            }
            CHECK(rep.verdict == Verdict::Possible);
        }
}

TEST_CASE("existence lookup is keyed on canonical forms") {
    CHECK(existence_lookup(problem("K(4,2)", "3D4+3A1")).has_value());
    CHECK(existence_lookup(problem("K(4,2)", "3K3+3K2")).has_value());  // same multiset
    CHECK_FALSE(existence_lookup(problem("K(3,4)", "6A3")).has_value());
    CHECK(existence_table().size() == 14);
}

TEST_CASE("counting failures survive appending a node to both sides") {
    // formal A_1-append on the numeric level: source side as a multi-germ
    struct Side {
        long long delta = 0, mu = 0, kappa = 0, mult = 0, pairs = 0;
    };
    auto side_of = [](const std::vector<SingularityType>& ts) {
        Side s;
        for (const auto& t : ts) {
            InvariantBundle b = basic_invariants(t);
            s.delta += b.delta;
            s.mu += b.mu;
            s.kappa += b.kappa;
            s.mult = std::max(s.mult, b.mult);
            s.pairs += b.r * (b.r - 1) / 2;
        }
        return s;
    };
    auto fails = [](const Side& src, const Side& tgt) {
        return src.delta != tgt.delta || src.mu < tgt.mu || src.kappa < tgt.kappa ||
               src.mult < tgt.mult || (src.mu - src.delta) < (tgt.mu - tgt.delta) ||
               src.pairs > tgt.pairs;
    };
    auto append_node = [](Side s) {
        s.delta += 1;
        s.mu += 1;
        s.kappa += 2;
        s.mult = std::max(s.mult, 2LL);
        s.pairs += 1;
        return s;
    };
    std::vector<std::pair<std::string, std::string>> cases = {
        {"D4", "2A1"}, {"K4", "A11"}, {"A5", "D4"}, {"X9", "A11+A1"}, {"A9", "D8"}};
    for (const auto& [src_name, tgt_expr] : cases) {
        Side src = side_of({make_named_type(src_name)});
        Side tgt = side_of(parse_expression(tgt_expr).types);
        REQUIRE(fails(src, tgt));
        CHECK(fails(append_node(src), append_node(tgt)));
    }
}
