#include <doctest.h>

#include <functional>

#include "collidere/invariants.hpp"

using namespace collidere;

namespace {

std::vector<std::pair<Rational, long long>> entries(const Spectrum& s) {
    return {s.values().begin(), s.values().end()};
}

}  // namespace

TEST_CASE("basic invariants") {
    InvariantBundle k5 = basic_invariants(make_named_type("K5"));
    CHECK(k5.delta == 10);
    CHECK(k5.mu == 16);
    CHECK(k5.kappa == 20);
    CHECK(k5.mult == 5);

    InvariantBundle j10 = basic_invariants(make_named_type("J10"));
    CHECK(j10.delta == 6);
    CHECK(j10.mu == 10);
    CHECK(j10.kappa == 12);

    InvariantBundle a1 = basic_invariants(make_named_type("A1"));
    CHECK(a1.delta == 1);
    CHECK(a1.mu == 1);
    CHECK(a1.kappa == 2);
    CHECK(a1.mult == 2);
}

TEST_CASE("brieskorn models") {
    CHECK(brieskorn_model(make_named_type("D4")) == BrieskornModel{3, 3});
    CHECK(brieskorn_model(make_named_type("D6")) == std::nullopt);
    CHECK(brieskorn_model(make_named_type("A7")) == BrieskornModel{2, 8});
    CHECK(brieskorn_model(make_named_type("K(4,3)")) == BrieskornModel{4, 12});
}

TEST_CASE("spectra of small models") {
    Spectrum s55 = spectrum({5, 5});
    CHECK(entries(s55) ==
          std::vector<std::pair<Rational, long long>>{{Rational(-3, 5), 1},
                                                      {Rational(-2, 5), 2},
                                                      {Rational(-1, 5), 3},
                                                      {Rational(0), 4},
                                                      {Rational(1, 5), 3},
                                                      {Rational(2, 5), 2},
                                                      {Rational(3, 5), 1}});
    CHECK(entries(spectrum({2, 2})) ==
          std::vector<std::pair<Rational, long long>>{{Rational(0), 1}});
    CHECK(entries(spectrum({2, 4})) ==
          std::vector<std::pair<Rational, long long>>{
              {Rational(-1, 4), 1}, {Rational(0), 1}, {Rational(1, 4), 1}});
}

TEST_CASE("interval counts") {
    const Rational half(1, 2);
    CHECK(interval_count(spectrum({3, 6}), -half, half, true, true) == 8);
    CHECK(interval_count(spectrum({5, 5}), -half, half, true, true) == 14);
    CHECK(interval_count(Spectrum{}, -half, half, true, true) == 0);
    // endpoint membership
    Spectrum s36 = spectrum({3, 6});
    CHECK(interval_count(s36, -half, half, false, false) == 10);
    CHECK(interval_count(s36, -half, half, false, true) == 9);
}

TEST_CASE("closed-form spectral counts at the origin") {
    CHECK(closed_form_spectral_count(SpectralFamily::Omp, 5, 1, Rational(0)) == 14);
    CHECK(closed_form_spectral_count(SpectralFamily::Omp, 4, 1, Rational(0)) == 7);
    CHECK(closed_form_spectral_count(SpectralFamily::Kpk, 3, 2, Rational(0)) == 8);
}

TEST_CASE("steenbrink signatures") {
    CHECK(signature_steenbrink({3, 6}) == Signature{0, 2, 8});
    CHECK(signature_steenbrink({2, 4}) == Signature{0, 0, 3});
    CHECK(signature_steenbrink({5, 5}) == Signature{2, 0, 14});
}

TEST_CASE("signature from spectrum") {
    CHECK(signature_from_spectrum(spectrum({3, 6})) == Signature{0, 2, 8});
    CHECK(signature_from_spectrum(spectrum({2, 2})) == Signature{0, 0, 1});
    Signature s48 = signature_from_spectrum(spectrum({4, 8}));
    CHECK(s48 == Signature{2, 2, 17});
    CHECK(s48.total() == 21);
    CHECK(signature_closed_form(4, 2) == s48);
}

TEST_CASE("closed-form signatures") {
    CHECK(signature_closed_form(3, 2) == Signature{0, 2, 8});
    CHECK(signature_closed_form(5, 1) == Signature{2, 0, 14});
    CHECK(signature_closed_form(2, 1) == Signature{0, 0, 1});
}

TEST_CASE("tau_es table") {
    CHECK(tau_es(make_named_type("A3")) == 3);
    CHECK(tau_es(make_named_type("K4")) == 8);
    CHECK(tau_es(make_named_type("K3")) == 4);
    CHECK(tau_es(make_named_type("J10")) == 9);
    CHECK(tau_es(make_named_type("D6")) == std::nullopt);
}

TEST_CASE("spectrum size and symmetry for all small models") {
    for (long long p = 2; p <= 12; ++p)
        for (long long q = p; q <= 12; ++q) {
            Spectrum s = spectrum({p, q});
            CHECK(s.total() == (p - 1) * (q - 1));
            CHECK(s.is_symmetric());
        }
}

TEST_CASE("signature routes agree") {
    for (long long p = 2; p <= 9; ++p)
        for (long long q = p; q <= 18; ++q)
            CHECK(signature_from_spectrum(spectrum({p, q})) == signature_steenbrink({p, q}));
}

TEST_CASE("oracle sweeps find no deviations") {
    CHECK(cross_check_signature_forms(8, 4).empty());
    CHECK(cross_check_spectral_count_forms(8, 5, 3).empty());
}

TEST_CASE("codimension identity for splittings of an ordinary multiple point") {
    auto c2 = [](long long n) { return n < 2 ? 0 : n * (n - 1) / 2; };
    auto tau_kp = [](long long p) { return p * (p + 1) / 2 - 2; };
    for (long long p = 2; p <= 9; ++p) {
        // enumerate descending part lists with parts in [2, p]
        std::vector<long long> parts;
        std::function<void(long long)> rec = [&](long long max_part) {
            long long sum_pairs = 0, sum_parts = 0;
            for (long long x : parts) {
                sum_pairs += c2(x);
                sum_parts += x;
            }
            if (sum_pairs > c2(p)) return;
            if (!parts.empty()) {
                long long k = static_cast<long long>(parts.size());
                long long lhs = tau_kp(p);
                for (long long x : parts) lhs -= tau_kp(x);
                lhs -= (c2(p) - sum_pairs) * 1;  // tau(A_1) = 1
                CHECK(lhs == p - sum_parts + 2 * (k - 1));
            }
            for (long long next = std::min(max_part, p); next >= 2; --next) {
                parts.push_back(next);
                rec(next);
                parts.pop_back();
            }
        };
        rec(p);
    }
}
