// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#include "goodturing/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "goodturing/errors.hpp"

namespace goodturing {

double azuma_bound_xi(std::uint64_t n, double epsilon) {
    if (n == 0) throw DomainError("azuma_bound_xi requires n >= 1");
    if (!(epsilon > 0.0)) throw DomainError("azuma_bound_xi requires eps > 0");
    const double raw =
        2.0 * std::exp(-epsilon * epsilon * std::sqrt(static_cast<double>(n)) / 8.0);
    return std::min(1.0, raw);
}

double azuma_bound_zeta(std::uint64_t n, std::uint64_t k, double epsilon) {
    if (n == 0) throw DomainError("azuma_bound_zeta requires n >= 1");
    if (!(epsilon > 0.0)) throw DomainError("azuma_bound_zeta requires eps > 0");
    const double kp1 = static_cast<double>(k) + 1.0;
    const double raw =
        2.0 * std::exp(-epsilon * epsilon * static_cast<double>(n) /
                       (8.0 * kp1 * kp1));
    return std::min(1.0, raw);
}

TruncationBound truncation_bound(std::uint64_t n, std::uint64_t k) {
    if (n == 0 || k >= n) {
        throw DomainError("truncation_bound requires n > k >= 0");
    }
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    const double threshold = std::pow(nd, -0.75);

    TruncationBound bound;
    bound.in_regime = kd / nd < threshold;
    const double log_value = (kd + 3.0) / 4.0 * std::log(nd) -
                             std::lgamma(kd + 1.0) +
                             (nd - kd) * std::log1p(-threshold);
    bound.value = std::exp(log_value);
    return bound;
}

}  // namespace goodturing
