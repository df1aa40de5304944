#include "collidere/invariants.hpp"

#include <algorithm>

namespace collidere {

void Spectrum::add(const Rational& s, long long multiplicity) {
    if (multiplicity == 0) return;
    auto it = values_.find(s);
    if (it == values_.end()) {
        values_.emplace(s, multiplicity);
    } else {
        it->second += multiplicity;
        if (it->second == 0) values_.erase(it);
    }
}

Spectrum& Spectrum::operator+=(const Spectrum& o) {
    for (const auto& [s, m] : o.values_) add(s, m);
    return *this;
}

long long Spectrum::total() const {
    long long t = 0;
    for (const auto& [s, m] : values_) t += m;
    return t;
}

bool Spectrum::is_symmetric() const {
    for (const auto& [s, m] : values_) {
        auto it = values_.find(-s);
        if (it == values_.end() || it->second != m) return false;
    }
    return true;
}

InvariantBundle basic_invariants(const SingularityType& t) {
    InvariantBundle b;
    b.r = t.branches();
    b.mult = b.r;
    b.delta = t.delta();
    b.mu = 2 * b.delta - b.r + 1;
    b.kappa = 2 * b.delta;
    b.tau_es = tau_es(t);
    return b;
}

std::optional<BrieskornModel> brieskorn_model(const SingularityType& t) {
    const DualGraph g = t.graph();
    Weight k = g.min_weight();
    if (g.max_weight() != k) return std::nullopt;
    long long p = g.branches();
    return BrieskornModel{p, p * k};
}

Spectrum spectrum(const BrieskornModel& m) {
    if (m.p < 2 || m.q < 2)
        throw Error(ErrorCode::NonPositiveWeight,
                    "Brieskorn exponents must be >= 2, got (" + std::to_string(m.p) + "," +
                        std::to_string(m.q) + ")");
    Spectrum sp;
    for (long long i = 0; i <= m.p - 2; ++i)
        for (long long j = 0; j <= m.q - 2; ++j)
            sp.add(Rational(i + 1, m.p) + Rational(j + 1, m.q) - 1);
    return sp;
}

long long interval_count(const Spectrum& s, const Rational& lo, const Rational& hi, bool lo_open,
                         bool hi_open) {
    long long count = 0;
    for (const auto& [v, m] : s.values()) {
        bool above = lo_open ? (v > lo) : (v >= lo);
        bool below = hi_open ? (v < hi) : (v <= hi);
        if (above && below) count += m;
    }
    return count;
}

namespace {

long long choose2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

// #{(a,b) : 1 <= a,b <= p-1, a+b <= M}; equals C(M,2) until the box bites.
long long box_pairs_below(long long p, long long M) {
    return choose2(M) - 2 * choose2(M - p + 1) + choose2(M - 2 * p + 2);
}

// #{(a,b) : 1 <= a <= p-1, 1 <= b <= pk-1, ka+b <= U}. The middle branch is
// the paper's A*(F - k(A+1)/2) term; the saturated branch appears once the
// interval end leaves the spectral support.
long long strip_pairs_below(long long p, long long k, const Rational& U) {
    long long F = rat_floor(U);
    long long a_hi = std::clamp(floor_div(F - 1, k), 0LL, p - 1);
    long long a_sat = std::clamp(floor_div(F - (p * k - 1), k), 0LL, a_hi);
    // full rows for a <= a_sat, partial rows F - ka for a_sat < a <= a_hi
    return a_sat * (p * k - 1) + (a_hi - a_sat) * F -
           k * (a_hi * (a_hi + 1) - a_sat * (a_sat + 1)) / 2;
}

}  // namespace

long long closed_form_spectral_count(SpectralFamily family, long long p, long long k,
                                     const Rational& alpha) {
    const Rational half(1, 2);
    if (family == SpectralFamily::Omp) {
        long long below = box_pairs_below(p, rat_floor(Rational(p) * (half + alpha)));
        long long above = box_pairs_below(p, rat_floor(Rational(p) * (half - alpha)));
        return (p - 1) * (p - 1) - below - above;
    }
    long long pk = p * k;
    long long below = strip_pairs_below(p, k, Rational(pk) * (half + alpha));
    long long above = strip_pairs_below(p, k, Rational(pk) * (half - alpha));
    return (p - 1) * (pk - 1) - below - above;
}

Signature signature_steenbrink(const BrieskornModel& m) {
    if (m.p < 2 || m.q < 2)
        throw Error(ErrorCode::NonPositiveWeight,
                    "Brieskorn exponents must be >= 2, got (" + std::to_string(m.p) + "," +
                        std::to_string(m.q) + ")");
    Signature sig;
    const Rational half(1, 2);
    for (long long a = 0; a <= m.p - 2; ++a)
        for (long long b = 0; b <= m.q - 2; ++b) {
            Rational l = Rational(a + 1, m.p) + Rational(b + 1, m.q) + half;
            if (rat_is_integer(l))
                ++sig.zero;
            else if (rat_floor(l) % 2 == 0)
                ++sig.plus;
            else
                ++sig.minus;
        }
    return sig;
}

Signature signature_from_spectrum(const Spectrum& s) {
    const Rational half(1, 2);
    Signature sig;
    sig.minus = interval_count(s, -half, half, true, true);
    sig.plus = 2 * interval_count(s, Rational(-1), -half, true, true);
    sig.zero = s.total() - sig.plus - sig.minus;
    return sig;
}

Signature signature_closed_form(long long p, long long k) {
    Signature sig;
    if (p % 2 == 0) {
        sig.zero = p - 2;
        sig.plus = (p - 2) / 2 * (p * k / 2 - 2);
        sig.minus = (3 * p - 2) * k * p / 4 - (p - 1);
    } else if (k % 2 == 0) {
        sig.zero = p - 1;
        sig.plus = (p - 1) / 2 * ((p - 1) / 2) * k - (p - 1);
        sig.minus = (p - 1) * (3 * p * k + k - 4) / 4;
    } else {
        sig.zero = 0;
        sig.plus = (p - 1) / 2 * ((p - 1) / 2) * k - (p - 1) / 2;
        sig.minus = (p - 1) * (3 * p * k + k - 2) / 4;
    }
    return sig;
}

std::optional<long long> tau_es(const SingularityType& t) {
    const DualGraph g = t.graph();
    Weight k = g.min_weight();
    bool constant = g.max_weight() == k;
    if (g.branches() == 2) return 2 * k - 1;
    if (constant && k == 1) {
        long long p = g.branches();
        return p * (p + 1) / 2 - 2;
    }
    if (constant && k == 2 && g.branches() == 3) return 9;
    return std::nullopt;
}

Signature signature_with_crosscheck(const BrieskornModel& m, std::vector<Deviation>* sink) {
    Signature enumerated = signature_steenbrink(m);
    if (sink && m.p >= 2 && m.q % m.p == 0) {
        Signature closed = signature_closed_form(m.p, m.q / m.p);
        if (closed != enumerated) {
            sink->push_back({"signature_closed_form(p=" + std::to_string(m.p) +
                             ",k=" + std::to_string(m.q / m.p) + ") = (" +
                             std::to_string(closed.plus) + "," + std::to_string(closed.zero) +
                             "," + std::to_string(closed.minus) + ") != enumeration (" +
                             std::to_string(enumerated.plus) + "," +
                             std::to_string(enumerated.zero) + "," +
                             std::to_string(enumerated.minus) + ")"});
        }
    }
    return enumerated;
}

std::vector<Deviation> cross_check_signature_forms(long long p_max, long long k_max) {
    std::vector<Deviation> out;
    for (long long p = 2; p <= p_max; ++p)
        for (long long k = 1; k <= k_max; ++k)
            signature_with_crosscheck(BrieskornModel{p, p * k}, &out);
    return out;
}

std::vector<Deviation> cross_check_spectral_count_forms(long long omp_p_max, long long kpk_p_max,
                                                        long long kpk_k_max) {
    std::vector<Deviation> out;
    const Rational half(1, 2);
    auto sweep = [&](SpectralFamily family, long long p, long long k) {
        const BrieskornModel m{p, p * k};
        const Spectrum sp = spectrum(m);
        const long long den = 2 * m.p * m.q;
        // step 1/(2pq) hits every breakpoint of both count functions (the
        // half-shifts land off the 1/(pq) grid for odd pq) plus a point
        // inside every piece
        for (long long num = 0; 2 * num < 3 * den; ++num) {
            Rational alpha(num, den);
            long long direct = interval_count(sp, alpha - half, alpha + half, true, true);
            long long closed = closed_form_spectral_count(family, p, k, alpha);
            if (direct != closed) {
                out.push_back(
                    {std::string(family == SpectralFamily::Omp ? "OMP" : "KPK") +
                     "(p=" + std::to_string(p) + ",k=" + std::to_string(k) +
                     "): closed form " + std::to_string(closed) + " != count " +
                     std::to_string(direct) + " at alpha=" + rat_to_fraction_string(alpha)});
            }
        }
    };
    for (long long p = 2; p <= omp_p_max; ++p) sweep(SpectralFamily::Omp, p, 1);
    for (long long p = 2; p <= kpk_p_max; ++p)
        for (long long k = 1; k <= kpk_k_max; ++k) sweep(SpectralFamily::Kpk, p, k);
    return out;
}

}  // namespace collidere
