// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#include "goodturing/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "goodturing/errors.hpp"
#include "goodturing/numeric.hpp"

namespace goodturing {

namespace {

constexpr double kRepairableDrift = 1e-6;
constexpr double kNormalizedTol = 1e-12;
constexpr double kMixingTol = 1e-9;

double total_mass(const std::vector<Atom>& atoms, double continuous_mass) {
    KahanSum s;
    for (const Atom& a : atoms) {
        s.add(a.prob * static_cast<double>(a.multiplicity));
    }
    s.add(continuous_mass);
    return s.value();
}

}  // namespace

std::uint64_t DistributionSpec::alphabet_size() const {
    std::uint64_t total = 0;
    for (const Atom& a : atoms_) total += a.multiplicity;
    return total;
}

DistributionSpec make_distribution(std::vector<Atom> atoms,
                                   double continuous_mass) {
    for (const Atom& a : atoms) {
        if (!std::isfinite(a.prob) || a.prob <= 0.0) {
            std::ostringstream msg;
            msg << "atom probability must be positive and finite, got " << a.prob;
            throw DomainError(msg.str());
        }
        if (a.multiplicity == 0) {
            throw DomainError("atom multiplicity must be >= 1");
        }
    }
    if (!std::isfinite(continuous_mass) || continuous_mass < 0.0 ||
        continuous_mass > 1.0 + kRepairableDrift) {
        std::ostringstream msg;
        msg << "continuous mass must lie in [0, 1], got " << continuous_mass;
        throw DomainError(msg.str());
    }

    const double total = total_mass(atoms, continuous_mass);
    if (std::abs(total - 1.0) > kRepairableDrift) {
        std::ostringstream msg;
        msg << "total mass " << total << " deviates from 1 by more than "
            << kRepairableDrift;
        throw NormalizationError(msg.str());
    }

    double correction = 1.0;
    if (total != 1.0) {
        correction = 1.0 / total;
        for (Atom& a : atoms) a.prob *= correction;
        continuous_mass *= correction;
    }

    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.prob < b.prob; });
    std::vector<Atom> merged;
    merged.reserve(atoms.size());
    for (const Atom& a : atoms) {
        if (!merged.empty() && merged.back().prob == a.prob) {
            if (merged.back().multiplicity >
                std::numeric_limits<std::uint64_t>::max() - a.multiplicity) {
                throw DomainError("merged multiplicity overflows");
            }
            merged.back().multiplicity += a.multiplicity;
        } else {
            merged.push_back(a);
        }
    }

    DistributionSpec spec;
    spec.atoms_ = std::move(merged);
    spec.continuous_mass_ = continuous_mass;
    spec.correction_ = correction;

    const double repaired = total_mass(spec.atoms_, spec.continuous_mass_);
    if (std::abs(repaired - 1.0) > kNormalizedTol) {
        std::ostringstream msg;
        msg << "normalization repair left residual drift " << (repaired - 1.0);
        throw NormalizationError(msg.str());
    }
    return spec;
}

Shadow shadow_of(const DistributionSpec& dist) {
    Shadow shadow;
    if (dist.continuous_mass() > 0.0) {
        shadow.points.push_back({0.0, dist.continuous_mass()});
    }
    for (const Atom& a : dist.atoms()) {
        shadow.points.push_back(
            {a.prob, a.prob * static_cast<double>(a.multiplicity)});
    }
    return shadow;
}

MixingDistribution scaled_shadow(const DistributionSpec& dist,
                                 std::uint64_t n) {
    if (n == 0) throw DomainError("scaled_shadow requires n >= 1");
    std::vector<MixingAtom> atoms;
    atoms.reserve(dist.atoms().size() + 1);
    if (dist.continuous_mass() > 0.0) {
        atoms.push_back({0.0, dist.continuous_mass()});
    }
    for (const Atom& a : dist.atoms()) {
        atoms.push_back({static_cast<double>(n) * a.prob,
                         a.prob * static_cast<double>(a.multiplicity)});
    }
    return MixingDistribution(std::move(atoms));
}

MixingDistribution::MixingDistribution(std::vector<MixingAtom> atoms,
                                       std::vector<double> density_grid,
                                       std::vector<double> density_values)
    : atoms_(std::move(atoms)),
      density_grid_(std::move(density_grid)),
      density_values_(std::move(density_values)) {
    for (const MixingAtom& a : atoms_) {
        if (!std::isfinite(a.y) || a.y < 0.0) {
            throw DomainError("mixing atom location must be >= 0");
        }
        if (!std::isfinite(a.weight) || a.weight < 0.0) {
            throw DomainError("mixing atom weight must be >= 0");
        }
    }
    if (density_grid_.size() != density_values_.size()) {
        throw DomainError("density grid and values must have equal length");
    }
    if (density_grid_.size() == 1) {
        throw DomainError("density needs at least two grid points");
    }
    for (std::size_t i = 0; i < density_grid_.size(); ++i) {
        if (!std::isfinite(density_grid_[i]) || density_grid_[i] < 0.0) {
            throw DomainError("density grid points must be >= 0");
        }
        if (!std::isfinite(density_values_[i]) || density_values_[i] < 0.0) {
            throw DomainError("density values must be >= 0");
        }
        if (i > 0 && density_grid_[i] < density_grid_[i - 1]) {
            throw DomainError("density grid must be ascending");
        }
    }

    std::sort(atoms_.begin(), atoms_.end(),
              [](const MixingAtom& a, const MixingAtom& b) { return a.y < b.y; });
    std::vector<MixingAtom> merged;
    merged.reserve(atoms_.size());
    for (const MixingAtom& a : atoms_) {
        if (a.weight == 0.0) continue;
        if (!merged.empty() && merged.back().y == a.y) {
            merged.back().weight += a.weight;
        } else {
            merged.push_back(a);
        }
    }
    atoms_ = std::move(merged);

    const double total = atom_mass() + density_integral();
    if (std::abs(total - 1.0) > kMixingTol) {
        std::ostringstream msg;
        msg << "mixing distribution mass " << total << " deviates from 1";
        throw NormalizationError(msg.str());
    }
}

double MixingDistribution::atom_mass() const {
    KahanSum s;
    for (const MixingAtom& a : atoms_) s.add(a.weight);
    return s.value();
}

double MixingDistribution::density_integral() const {
    if (!has_density()) return 0.0;
    return trapezoid(density_grid_, density_values_);
}

}  // namespace goodturing
