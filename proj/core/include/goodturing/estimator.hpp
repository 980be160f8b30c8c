// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>

#include "goodturing/sampling.hpp"

namespace goodturing {

/// The Good-Turing total-probability vector zeta, with
/// zeta_k = (k+1) * phi_{k+1} / n for k in 0..n-1 and zeta_n = 0 by
/// convention. Held as exact rationals over the common denominator n, so
/// the normalization sum(zeta) = 1 is an integer identity rather than a
/// floating-point one.
class GoodTuringVector {
public:
    GoodTuringVector() = default;
    GoodTuringVector(std::uint64_t n,
                     std::map<std::uint64_t, std::uint64_t> numerators)
        : n_(n), numerators_(std::move(numerators)) {}

    std::uint64_t n() const { return n_; }

    /// Nonzero numerators: zeta_k = numerators[k] / n.
    const std::map<std::uint64_t, std::uint64_t>& numerators() const {
        return numerators_;
    }

    /// zeta_k as a double; 0 for absent k (including the forced zeta_n = 0).
    double value(std::uint64_t k) const;

    /// All nonzero entries as doubles.
    std::map<std::uint64_t, double> values() const;

private:
    std::uint64_t n_ = 0;
    std::map<std::uint64_t, std::uint64_t> numerators_;
};

/// The total-probability estimator: sparse zeta from a count-of-counts
/// table. Requires n >= 1.
///
/// This is the basic estimator, deliberately unsmoothed. Smoothed variants
/// (simple Good-Turing, Katz backoff) are transformations of the same
/// FrequencyTable input and can be layered on top without touching this
/// core.
GoodTuringVector good_turing_totals(const FrequencyTable& freq);

/// The classical per-symbol estimate (k+1) * phi_{k+1} / (n * phi_k) for a
/// symbol observed k times.
///
/// Throws UnsupportedKError for k >= n (the all-one-symbol case is not
/// defined) and EmptyFrequencyClassError when phi_k = 0, i.e. there is no
/// symbol to assign the estimate to. k = 0 always falls in the latter
/// bucket: the number of unseen symbols is not part of a FrequencyTable.
double good_turing_per_symbol(const FrequencyTable& freq, std::uint64_t k);

/// The missing mass estimate zeta_0 = phi_1 / n.
double missing_mass(const FrequencyTable& freq);

}  // namespace goodturing
