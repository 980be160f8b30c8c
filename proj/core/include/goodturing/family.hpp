// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "goodturing/distribution.hpp"

namespace goodturing {

enum class FamilyKind { kUniform, kQuantizedDensity, kExplicitSequence };

/// Piecewise-linear probability density on [0, 1], sampled on a strictly
/// ascending grid.
struct PiecewiseLinearDensity {
    std::vector<double> grid;
    std::vector<double> values;
};

/// A sequence of distributions {P_n} together with the mixing distribution Q
/// its scaled shadows converge to.
///
/// * uniform: P_n is uniform over n symbols; Q is a point mass at 1.
/// * quantized_density: P_n quantizes a fixed density f on [0,1] into n
///   equal bins; Q is the exact law of f(U) with U drawn from f (atoms from
///   flat stretches of f, a piecewise-linear density elsewhere).
/// * explicit_sequence: every P_n is one stored spec. A constant sequence
///   has no nondegenerate scaling limit, so Q is declared as the unit-scaled
///   shadow and convergence diagnostics are not meaningful for this kind.
class Family {
public:
    static Family uniform();
    static Family quantized_density(PiecewiseLinearDensity density);
    static Family explicit_sequence(DistributionSpec spec);

    FamilyKind kind() const { return kind_; }
    const MixingDistribution& limit_Q() const& { return limit_q_; }
    MixingDistribution limit_Q() && { return std::move(limit_q_); }

    /// The density after normalization repair; only for kQuantizedDensity.
    const PiecewiseLinearDensity& density() const;
    /// The stored spec; only for kExplicitSequence.
    const DistributionSpec& spec() const;

    /// The family member for block length n.
    /// Throws UnsupportedNError when n == 0.
    DistributionSpec dist_at(std::uint64_t n) const;

private:
    Family(FamilyKind kind, MixingDistribution limit_q)
        : kind_(kind), limit_q_(std::move(limit_q)) {}

    FamilyKind kind_;
    MixingDistribution limit_q_;
    std::optional<PiecewiseLinearDensity> density_;
    std::optional<DistributionSpec> spec_;
};

/// Exact pushforward used for the quantized-density limit: the law of f(U)
/// for U ~ f. Exposed separately so it can be checked against hand-derived
/// closed forms.
MixingDistribution density_value_law(const PiecewiseLinearDensity& density);

}  // namespace goodturing
