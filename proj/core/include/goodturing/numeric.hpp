// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace goodturing {

/// Neumaier-compensated accumulator. Used wherever many terms of one sign
/// are reduced and the result feeds a tight tolerance (oracle expectations,
/// L1 accumulation, normalization checks).
class KahanSum {
public:
    KahanSum() = default;

    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Trapezoid integral of piecewise-linear samples (values on grid).
/// Exact for the piecewise-linear functions it is applied to.
inline double trapezoid(const std::vector<double>& grid,
                        const std::vector<double>& values) {
    KahanSum s;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        s.add(0.5 * (values[i] + values[i + 1]) * (grid[i + 1] - grid[i]));
    }
    return s.value();
}

}  // namespace goodturing
