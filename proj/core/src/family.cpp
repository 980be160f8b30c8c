// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#include "goodturing/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "goodturing/errors.hpp"
#include "goodturing/numeric.hpp"

namespace goodturing {

namespace {

constexpr double kEdgeTol = 1e-9;
constexpr double kRepairableDrift = 1e-6;

void validate_and_repair(PiecewiseLinearDensity& density) {
    auto& grid = density.grid;
    auto& values = density.values;
    if (grid.size() < 2 || grid.size() != values.size()) {
        throw DomainError("density needs matching grid/values with >= 2 points");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || !std::isfinite(values[i]) ||
            values[i] < 0.0) {
            throw DomainError("density values must be finite and >= 0");
        }
        if (i > 0 && grid[i] <= grid[i - 1]) {
            throw DomainError("density grid must be strictly ascending");
        }
    }
    if (std::abs(grid.front()) > kEdgeTol || std::abs(grid.back() - 1.0) > kEdgeTol) {
        throw DomainError("density must cover exactly [0, 1]");
    }
    grid.front() = 0.0;
    grid.back() = 1.0;

    const double integral = trapezoid(grid, values);
    if (std::abs(integral - 1.0) > kRepairableDrift) {
        std::ostringstream msg;
        msg << "density integrates to " << integral << ", not 1";
        throw NormalizationError(msg.str());
    }
    if (integral != 1.0) {
        const double s = 1.0 / integral;
        for (double& v : values) v *= s;
    }
}

// Linear interpolation of the density inside segment [grid[i], grid[i+1]].
double interp(const PiecewiseLinearDensity& d, std::size_t seg, double x) {
    const double x0 = d.grid[seg];
    const double x1 = d.grid[seg + 1];
    const double t = (x - x0) / (x1 - x0);
    return d.values[seg] + t * (d.values[seg + 1] - d.values[seg]);
}

}  // namespace

MixingDistribution density_value_law(const PiecewiseLinearDensity& density) {
    struct Ramp {
        double lo, hi;       // value range covered by the segment
        double inv_slope;    // contributes density y * inv_slope on [lo, hi]
    };
    std::vector<MixingAtom> atoms;
    std::vector<Ramp> ramps;
    std::vector<double> breakpoints;

    const auto& grid = density.grid;
    const auto& values = density.values;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double du = grid[i + 1] - grid[i];
        const double f0 = values[i];
        const double f1 = values[i + 1];
        if (f0 == f1) {
            if (f0 > 0.0) atoms.push_back({f0, f0 * du});
            continue;
        }
        Ramp r;
        r.lo = std::min(f0, f1);
        r.hi = std::max(f0, f1);
        r.inv_slope = du / (r.hi - r.lo);
        ramps.push_back(r);
        breakpoints.push_back(r.lo);
        breakpoints.push_back(r.hi);
    }

    std::vector<double> out_grid;
    std::vector<double> out_values;
    if (!ramps.empty()) {
        std::sort(breakpoints.begin(), breakpoints.end());
        breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                          breakpoints.end());
        for (std::size_t j = 0; j + 1 < breakpoints.size(); ++j) {
            const double lo = breakpoints[j];
            const double hi = breakpoints[j + 1];
            double slope_sum = 0.0;
            for (const Ramp& r : ramps) {
                if (r.lo <= lo && r.hi >= hi) slope_sum += r.inv_slope;
            }
            const double v0 = lo * slope_sum;
            const double v1 = hi * slope_sum;
            if (!out_grid.empty() && out_grid.back() == lo &&
                out_values.back() == v0) {
                out_grid.push_back(hi);
                out_values.push_back(v1);
            } else {
                // Duplicated grid point: a jump in the pushforward density.
                out_grid.push_back(lo);
                out_values.push_back(v0);
                out_grid.push_back(hi);
                out_values.push_back(v1);
            }
        }
    }
    return MixingDistribution(std::move(atoms), std::move(out_grid),
                              std::move(out_values));
}

Family Family::uniform() {
    return Family(FamilyKind::kUniform, MixingDistribution({{1.0, 1.0}}));
}

Family Family::quantized_density(PiecewiseLinearDensity density) {
    validate_and_repair(density);
    Family family(FamilyKind::kQuantizedDensity, density_value_law(density));
    family.density_ = std::move(density);
    return family;
}

Family Family::explicit_sequence(DistributionSpec spec) {
    Family family(FamilyKind::kExplicitSequence, scaled_shadow(spec, 1));
    family.spec_ = std::move(spec);
    return family;
}

const PiecewiseLinearDensity& Family::density() const {
    if (!density_) throw DomainError("family has no density");
    return *density_;
}

const DistributionSpec& Family::spec() const {
    if (!spec_) throw DomainError("family has no stored spec");
    return *spec_;
}

DistributionSpec Family::dist_at(std::uint64_t n) const {
    if (n == 0) throw UnsupportedNError("family members require n >= 1");
    switch (kind_) {
        case FamilyKind::kUniform:
            return make_distribution({{1.0 / static_cast<double>(n), n}}, 0.0);
        case FamilyKind::kExplicitSequence:
            return *spec_;
        case FamilyKind::kQuantizedDensity:
            break;
    }

    const PiecewiseLinearDensity& d = *density_;
    const double width = 1.0 / static_cast<double>(n);
    std::vector<Atom> atoms;
    atoms.reserve(n);
    std::size_t seg = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double a = static_cast<double>(i) / static_cast<double>(n);
        const double b = static_cast<double>(i + 1) / static_cast<double>(n);
        while (seg + 2 < d.grid.size() && d.grid[seg + 1] <= a) ++seg;

        double mass;
        if (d.grid[seg + 1] >= b) {
            // Bin inside one linear segment: trapezoid is exact, and using
            // the constant width keeps equal bins bit-identical so they
            // merge into one atom class.
            mass = width * 0.5 * (interp(d, seg, a) + interp(d, seg, b));
        } else {
            KahanSum s;
            double x = a;
            std::size_t j = seg;
            while (x < b) {
                const double x_next = std::min(b, d.grid[j + 1]);
                s.add((x_next - x) * 0.5 * (interp(d, j, x) + interp(d, j, x_next)));
                x = x_next;
                if (x < b) ++j;
            }
            mass = s.value();
        }
        if (mass > 0.0) atoms.push_back({mass, 1});
    }
    return make_distribution(std::move(atoms), 0.0);
}

}  // namespace goodturing
