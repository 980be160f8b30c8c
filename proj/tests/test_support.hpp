// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "goodturing/distribution.hpp"
#include "goodturing/rng.hpp"
#include "goodturing/sampling.hpp"

namespace goodturing::test {

/// Random spec with 1-5 atom classes, multiplicities 1-10, and a continuous
/// component half the time.
inline DistributionSpec random_spec(Rng& rng) {
    const std::uint64_t classes = 1 + rng.below(5);
    std::vector<Atom> atoms;
    std::vector<double> raw;
    double total = 0.0;
    for (std::uint64_t i = 0; i < classes; ++i) {
        const double w = 0.05 + rng.uniform01();
        const std::uint64_t m = 1 + rng.below(10);
        raw.push_back(w);
        atoms.push_back({w, m});
        total += w * static_cast<double>(m);
    }
    double continuous = 0.0;
    if (rng.below(2) == 0) {
        continuous = 0.05 + rng.uniform01();
        total += continuous;
    }
    for (Atom& a : atoms) a.prob /= total;
    continuous /= total;
    return make_distribution(std::move(atoms), continuous);
}

/// Sup distance between the CDFs of two purely atomic mixing distributions.
inline double cdf_sup_distance(const MixingDistribution& a,
                               const MixingDistribution& b) {
    std::vector<double> points;
    for (const MixingAtom& atom : a.atoms()) points.push_back(atom.y);
    for (const MixingAtom& atom : b.atoms()) points.push_back(atom.y);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    double worst = 0.0;
    std::size_t ia = 0, ib = 0;
    double ca = 0.0, cb = 0.0;
    for (const double y : points) {
        while (ia < a.atoms().size() && a.atoms()[ia].y <= y) {
            ca += a.atoms()[ia++].weight;
        }
        while (ib < b.atoms().size() && b.atoms()[ib].y <= y) {
            cb += b.atoms()[ib++].weight;
        }
        worst = std::max(worst, std::abs(ca - cb));
    }
    return worst;
}

/// Relabels a sample: slots are rotated within each atom class and
/// continuous ids are renumbered in reverse. A valid relabeling never
/// changes phi, xi, or zeta.
inline SampleString relabel(const DistributionSpec& dist,
                            const SampleString& sample) {
    SampleString out;
    out.n = sample.n;
    out.continuous_draws = sample.continuous_draws;
    std::uint64_t next_continuous = sample.continuous_draws;
    for (const auto& [id, count] : sample.counts) {
        std::uint64_t new_id;
        if (symbol_id::is_continuous(id)) {
            new_id = symbol_id::continuous(--next_continuous);
        } else {
            const std::uint64_t idx = symbol_id::atom_index(id);
            const std::uint64_t m = dist.atoms()[idx].multiplicity;
            const std::uint64_t slot = (symbol_id::slot(id) + 1) % m;
            new_id = symbol_id::atom(idx, slot);
        }
        out.counts[new_id] += count;
    }
    return out;
}

}  // namespace goodturing::test
