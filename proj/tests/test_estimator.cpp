// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "goodturing/errors.hpp"
#include "goodturing/estimator.hpp"
#include "goodturing/numeric.hpp"
#include "goodturing/rng.hpp"
#include "goodturing/sampling.hpp"
#include "test_support.hpp"

using namespace goodturing;

namespace {

FrequencyTable table_from(std::uint64_t n,
                          std::map<std::uint64_t, std::uint64_t> phi) {
    FrequencyTable t;
    t.n = n;
    t.phi = std::move(phi);
    return t;
}

}  // namespace

TEST_SUITE("estimator") {

TEST_CASE("totals match the hand-evaluated example") {
    const GoodTuringVector zeta = good_turing_totals(table_from(4, {{1, 2}, {2, 1}}));
    CHECK(zeta.value(0) == 0.5);
    CHECK(zeta.value(1) == 0.5);
    CHECK(zeta.value(2) == 0.0);
    CHECK(zeta.value(3) == 0.0);
    CHECK(zeta.value(4) == 0.0);  // the forced zeta_n = 0 convention
}

TEST_CASE("one symbol repeated n times puts all mass on zeta_{n-1}") {
    const GoodTuringVector zeta = good_turing_totals(table_from(6, {{6, 1}}));
    CHECK(zeta.value(5) == 1.0);
    CHECK(zeta.value(6) == 0.0);
}

TEST_CASE("all symbols distinct puts all mass on zeta_0") {
    const GoodTuringVector zeta = good_turing_totals(table_from(7, {{1, 7}}));
    CHECK(zeta.value(0) == 1.0);
    for (std::uint64_t k = 1; k <= 7; ++k) CHECK(zeta.value(k) == 0.0);
}

TEST_CASE("zeta normalizes exactly in integer arithmetic") {
    Rng rng(0x5eed006);
    for (int i = 0; i < 300; ++i) {
        const DistributionSpec dist = test::random_spec(rng);
        const std::uint64_t n = 1 + rng.below(10000);
        const FrequencyTable freq =
            count_frequencies(sample_string(dist, n, rng.next_u64()));
        const GoodTuringVector zeta = good_turing_totals(freq);

        std::uint64_t numer_total = 0;
        for (const auto& [k, numer] : zeta.numerators()) numer_total += numer;
        CHECK(numer_total == n);

        KahanSum fp;
        for (const auto& [k, v] : zeta.values()) fp.add(v);
        CHECK(std::abs(fp.value() - 1.0) <= 1e-12);
    }
}

TEST_CASE("zeta depends on the sample only through phi") {
    // Different atom_hits, same phi: identical zeta.
    FrequencyTable a = table_from(5, {{1, 3}, {2, 1}});
    a.atom_hits[0] = {1, 1, 2};
    FrequencyTable b = table_from(5, {{1, 3}, {2, 1}});
    b.atom_hits[7] = {2};
    CHECK(good_turing_totals(a).numerators() ==
          good_turing_totals(b).numerators());
}

TEST_CASE("zeta_k may be positive while the class A_k is empty") {
    // phi_1 = 0 but phi_2 = 1: zeta_1 > 0 must be allowed.
    const GoodTuringVector zeta = good_turing_totals(table_from(2, {{2, 1}}));
    CHECK(zeta.value(1) == 1.0);
    CHECK(zeta.value(0) == 0.0);
}

TEST_CASE("per-symbol estimate matches the hand-evaluated example") {
    const FrequencyTable freq = table_from(4, {{1, 2}, {2, 1}});
    CHECK(good_turing_per_symbol(freq, 1) == 0.25);
}

TEST_CASE("per-symbol estimate is zero when the next class is empty") {
    const FrequencyTable freq = table_from(10, {{2, 3}, {4, 1}});
    CHECK(good_turing_per_symbol(freq, 2) == 0.0);
}

TEST_CASE("per-symbol estimate rejects empty classes and k >= n") {
    const FrequencyTable freq = table_from(4, {{2, 2}});
    CHECK_THROWS_AS(good_turing_per_symbol(freq, 1), EmptyFrequencyClassError);
    CHECK_THROWS_AS(good_turing_per_symbol(freq, 0), EmptyFrequencyClassError);
    CHECK_THROWS_AS(good_turing_per_symbol(freq, 4), UnsupportedKError);
    CHECK_THROWS_AS(good_turing_per_symbol(freq, 9), UnsupportedKError);
}

TEST_CASE("per-symbol times class size recovers the total") {
    Rng rng(0x5eed007);
    for (int i = 0; i < 100; ++i) {
        const DistributionSpec dist = test::random_spec(rng);
        const std::uint64_t n = 1 + rng.below(3000);
        const FrequencyTable freq =
            count_frequencies(sample_string(dist, n, rng.next_u64()));
        const GoodTuringVector zeta = good_turing_totals(freq);
        for (const auto& [k, phi_k] : freq.phi) {
            if (phi_k == 0 || k >= n) continue;
            const double per = good_turing_per_symbol(freq, k);
            CHECK(per * static_cast<double>(phi_k) ==
                  doctest::Approx(zeta.value(k)).epsilon(1e-12));
        }
    }
}

TEST_CASE("missing mass is phi_1 over n") {
    CHECK(missing_mass(table_from(4, {{1, 2}, {2, 1}})) == 0.5);
    CHECK(missing_mass(table_from(9, {{3, 3}})) == 0.0);
    CHECK(missing_mass(table_from(5, {{1, 5}})) == 1.0);
}

TEST_CASE("estimators require a nonempty sample") {
    CHECK_THROWS_AS(good_turing_totals(table_from(0, {})), DomainError);
    CHECK_THROWS_AS(missing_mass(table_from(0, {})), DomainError);
}

}  // TEST_SUITE
