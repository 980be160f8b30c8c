// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace goodturing {

/// One class of equiprobable symbols: `multiplicity` symbols of probability
/// `prob` each. Symbol labels are deliberately never stored; sampling
/// materializes ids lazily.
struct Atom {
    double prob = 0.0;
    std::uint64_t multiplicity = 0;
};

/// A label-free underlying distribution: atom classes plus the total mass of
/// an atomless (continuous) component. Immutable after construction; build
/// with make_distribution().
class DistributionSpec {
public:
    /// Atom classes sorted by ascending probability; probabilities are
    /// pairwise distinct (equal ones are merged at construction).
    const std::vector<Atom>& atoms() const { return atoms_; }
    double continuous_mass() const { return continuous_mass_; }

    /// Scale factor that was applied to repair normalization drift
    /// (1.0 when the input was exactly normalized).
    double normalization_correction() const { return correction_; }

    /// Total number of distinct symbols carried by the atoms.
    std::uint64_t alphabet_size() const;

    friend DistributionSpec make_distribution(std::vector<Atom> atoms,
                                              double continuous_mass);

private:
    DistributionSpec() = default;

    std::vector<Atom> atoms_;
    double continuous_mass_ = 0.0;
    double correction_ = 1.0;
};

/// The shadow of a distribution: the law of the probability value of a
/// randomly drawn symbol. `value` 0 carries the continuous mass.
struct ShadowPoint {
    double value = 0.0;
    double weight = 0.0;
};

struct Shadow {
    /// Distinct values, sorted ascending; weights sum to 1.
    std::vector<ShadowPoint> points;
};

/// An atom of a mixing distribution on [0, inf).
struct MixingAtom {
    double y = 0.0;
    double weight = 0.0;
};

/// A distribution on the nonnegative reals: atoms plus an optional
/// piecewise-linear density. A repeated grid point encodes a jump in the
/// density; zero-width intervals carry no mass.
class MixingDistribution {
public:
    MixingDistribution(std::vector<MixingAtom> atoms,
                       std::vector<double> density_grid = {},
                       std::vector<double> density_values = {});

    const std::vector<MixingAtom>& atoms() const { return atoms_; }
    bool has_density() const { return !density_grid_.empty(); }
    const std::vector<double>& density_grid() const { return density_grid_; }
    const std::vector<double>& density_values() const { return density_values_; }

    double atom_mass() const;
    double density_integral() const;

private:
    std::vector<MixingAtom> atoms_;             // sorted by y, distinct
    std::vector<double> density_grid_;          // ascending, may repeat
    std::vector<double> density_values_;
};

/// Validates, repairs normalization drift up to 1e-6 by exact scaling, and
/// canonicalizes (sorts atoms, merges equal probabilities).
///
/// Throws DomainError on nonpositive probability/multiplicity or a
/// continuous mass outside [0, 1]; NormalizationError when total mass
/// deviates from 1 by more than 1e-6.
DistributionSpec make_distribution(std::vector<Atom> atoms,
                                   double continuous_mass);

/// Shadow of a distribution: point (p, p*m) per atom class plus a point at
/// 0 carrying the continuous mass when it is positive.
Shadow shadow_of(const DistributionSpec& dist);

/// Scaled shadow: the law of n * P(X). Atoms (n*p, p*m) plus an atom at 0
/// for the continuous mass.
MixingDistribution scaled_shadow(const DistributionSpec& dist, std::uint64_t n);

}  // namespace goodturing
