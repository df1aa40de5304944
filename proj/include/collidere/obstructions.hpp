#pragma once

#include <optional>
#include <string>
#include <vector>

#include "collidere/decompose.hpp"
#include "collidere/invariants.hpp"
#include "collidere/json_io.hpp"

namespace collidere {

struct DeformationProblem {
    SingularityType source;
    std::vector<SingularityType> targets;  // normalized, non-empty
};

DeformationProblem make_problem(SingularityType source, std::vector<SingularityType> targets);

// FAIL is reserved for rules proven sound; report-only comparisons emit
// WARN and can never drive an IMPOSSIBLE verdict.
enum class RuleStatus { Pass, Fail, Skipped, Warn };
const char* rule_status_name(RuleStatus s);

struct Certificate {
    std::string kind;  // "omp-arrangement" | "existence-table" | "canonical-omp" | "identity"
    Json data;
};

struct RuleOutcome {
    std::string id;
    RuleStatus status = RuleStatus::Skipped;
    std::string reason;  // short cause for SKIPPED / WARN
    Json detail;
    std::optional<Certificate> certificate;
};

enum class Verdict { Possible, Impossible, Unknown };
const char* verdict_name(Verdict v);

struct ObstructionReport {
    DeformationProblem problem;
    std::vector<RuleOutcome> rules;
    Verdict verdict = Verdict::Unknown;
    std::optional<std::string> verdict_rule;  // first failing rule when IMPOSSIBLE
    std::optional<Certificate> certificate;
    bool budget_exhausted = false;
    long long search_nodes = 0;
};

// Semicontinuity and graph-functional comparisons on the classical numbers:
// delta equality, mu / kappa / mult / (mu - delta) monotonicity, the branch
// bound C(r,2) <= sum C(r_i,2), Minkowski root sums for e = 1..3, and the
// power-sum bound for e = 2, 3.
RuleOutcome rule_counting(const DeformationProblem& p);

// K_p sources: every target must be an ordinary multiple point, then the
// arrangement criterion decides (with a constructive certificate when
// possible). K(p,k>1) sources with all-A targets: contact bound n_{i>k} = 0,
// delta accounting, the exact k-sum grouping, and the p = 3 refinements.
RuleOutcome rule_series(const DeformationProblem& p);

// Exact decomposition search; BUDGET_EXCEEDED surfaces as SKIPPED, never as
// a failure.
RuleOutcome rule_dual_graph(const DeformationProblem& p, const SearchBudget& budget);

// Spectrum semicontinuity over every half-open unit interval plus the
// signature embedding bounds (mu_plus / mu_minus / mu_zero with dimension
// slack); the latter are exactly the open-window comparisons at (-1,-1/2)
// and (-1/2,1/2). Exceedances on other open windows are recorded in the
// detail but are not failures. Skipped unless the source and all targets
// have Brieskorn models. Closed-form signature mismatches found on the way
// are appended to `deviations` when given.
RuleOutcome rule_spectrum_signature(const DeformationProblem& p,
                                    std::vector<Deviation>* deviations = nullptr);

// 4*n_2 + 3*n_3 >= 4*p + sum_{i>=5} 4*(2i-9)*n_i for line arrangements,
// applied only under its stated precondition n_p = n_{p-1} = n_{p-2} = 0.
RuleOutcome rule_hirzebruch(const DeformationProblem& p);

// Report-only: equal or smaller tau_es means the generic representative
// cannot deform (special moduli may still work), hence WARN, never FAIL.
RuleOutcome rule_tau_es(const DeformationProblem& p);

// Runs the whole battery in fixed order (counting, series, dual_graph,
// spectrum_signature, hirzebruch, tau_es). IMPOSSIBLE iff some sound rule
// fails; POSSIBLE only with a certificate; otherwise UNKNOWN. A blown
// search budget is reported, never read as impossibility.
ObstructionReport aggregate_verdict(const DeformationProblem& p, const SearchBudget& budget,
                                    std::vector<Deviation>* deviations = nullptr);

// Versioned data table of deformations asserted to exist, with the
// construction each row rests on.
struct ExistenceEntry {
    std::string source;   // type expression
    std::string targets;  // type expression
    std::string basis;
};

const std::vector<ExistenceEntry>& existence_table();
std::optional<ExistenceEntry> existence_lookup(const DeformationProblem& p);

Json report_to_json(const ObstructionReport& r);

// One rule per line plus the verdict; `one_line` gives the batch form
// "K(3,4) -> 2A_7 + 4A_1: UNKNOWN".
std::string report_to_text(const ObstructionReport& r, bool one_line = false);

}  // namespace collidere
