#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "collidere/rational.hpp"
#include "collidere/types.hpp"

namespace collidere {

// Classical numbers of a smooth-branch type. They satisfy
// delta = (mu + r - 1)/2, kappa = mu + mult - 1 = 2*delta, mult = r.
struct InvariantBundle {
    long long r = 0;
    long long mult = 0;
    long long delta = 0;
    long long mu = 0;
    long long kappa = 0;
    std::optional<long long> tau_es;
};

// The topological type of x^p + y^q (p <= q). Stabilization adds +z^2.
struct BrieskornModel {
    long long p = 0;
    long long q = 0;

    bool operator==(const BrieskornModel&) const = default;
};

// Eigenvalue sign counts of the stabilized intersection form.
struct Signature {
    long long plus = 0;
    long long zero = 0;
    long long minus = 0;

    long long total() const { return plus + zero + minus; }
    bool operator==(const Signature&) const = default;

    Signature& operator+=(const Signature& o) {
        plus += o.plus;
        zero += o.zero;
        minus += o.minus;
        return *this;
    }
};

// Multiset of exact rational spectral numbers in (-1, 1).
class Spectrum {
public:
    void add(const Rational& s, long long multiplicity = 1);
    Spectrum& operator+=(const Spectrum& o);

    const std::map<Rational, long long>& values() const { return values_; }
    long long total() const;  // = mu
    bool empty() const { return values_.empty(); }
    bool is_symmetric() const;  // invariant under s -> -s

private:
    std::map<Rational, long long> values_;
};

InvariantBundle basic_invariants(const SingularityType& t);

// K_p -> (p, p); K(p,k) -> (p, pk); A_{2k-1} -> (2, 2k); anything whose dual
// graph is not a constant-weight complete graph has no model here (rules
// that need a spectrum are SKIPPED for those, never guessed).
std::optional<BrieskornModel> brieskorn_model(const SingularityType& t);

// Spectrum of x^p + y^q: {(i+1)/p + (j+1)/q - 1 : 0<=i<=p-2, 0<=j<=q-2}.
Spectrum spectrum(const BrieskornModel& m);

// Count with multiplicity; endpoint membership decided by the open flags.
long long interval_count(const Spectrum& s, const Rational& lo, const Rational& hi, bool lo_open,
                         bool hi_open);

enum class SpectralFamily { Omp, Kpk };

// Floor/ceiling evaluation of the spectral count of the family on the open
// interval (-1/2+alpha, 1/2+alpha). Shipped as an oracle to cross-check
// interval_count; the printed two-term forms hold verbatim for small alpha
// and the boundary-saturated branches extend them over the whole
// 0 <= alpha < 3/2 range. For Omp, k is ignored.
long long closed_form_spectral_count(SpectralFamily family, long long p, long long k,
                                     const Rational& alpha);

// Residue-form enumeration for x^p + y^q + z^2: monomial x^a y^b has weight
// l = (a+1)/p + (b+1)/q + 1/2; zero eigenvalues at integer l, positive at
// non-integer l with even floor, negative otherwise.
Signature signature_steenbrink(const BrieskornModel& m);

// mu_minus = #(Sp in (-1/2,1/2)), mu_plus = 2 * #(Sp in (-1,-1/2)),
// mu_zero = mu - mu_plus - mu_minus. Agrees with signature_steenbrink on
// every Brieskorn model (property-tested).
Signature signature_from_spectrum(const Spectrum& s);

// Three-parity-case closed form for x^p + y^{pk} + z^2; an oracle against
// signature_steenbrink (the enumeration is authoritative on mismatch).
Signature signature_closed_form(long long p, long long k);

// Equisingular-stratum codimension; table-driven, only for graphs whose
// value is pinned by worked examples: tau(A_{2k-1}) = 2k-1,
// tau(K_p) = p(p+1)/2 - 2, tau(K(3,2)) = 9.
std::optional<long long> tau_es(const SingularityType& t);

// One closed-form-vs-enumeration disagreement, destined for the deviations
// report.
struct Deviation {
    std::string what;
};

// steenbrink result, cross-checked against signature_closed_form when
// q is a multiple of p; any mismatch is appended to sink (may be null).
Signature signature_with_crosscheck(const BrieskornModel& m, std::vector<Deviation>* sink);

// Sweeps the oracle pairs over parameter boxes; returns every mismatch.
std::vector<Deviation> cross_check_signature_forms(long long p_max, long long k_max);
std::vector<Deviation> cross_check_spectral_count_forms(long long omp_p_max, long long kpk_p_max,
                                                        long long kpk_k_max);

}  // namespace collidere
