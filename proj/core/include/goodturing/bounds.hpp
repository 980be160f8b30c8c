// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace goodturing {

/// Bounded-differences tail bound for xi_k: one altered sample symbol moves
/// the truncated xi by at most 2/n^{3/4}, giving
/// P(|dev| >= eps) <= 2 exp(-eps^2 sqrt(n) / 8), capped at 1.
double azuma_bound_xi(std::uint64_t n, double epsilon);

/// Bounded-differences tail bound for zeta_k: one altered symbol moves
/// zeta_k by at most 2(k+1)/n, giving
/// P(|dev| > eps) <= 2 exp(-eps^2 n / (8 (k+1)^2)), capped at 1.
double azuma_bound_zeta(std::uint64_t n, std::uint64_t k, double epsilon);

/// Diagnostic bound on the expected mass of frequency-k symbols whose
/// probability exceeds n^{-3/4}:
///   value = n^{(k+3)/4} / k! * (1 - n^{-3/4})^{n-k}.
/// in_regime is false when k/n >= n^{-3/4}, where the bound's derivation
/// does not apply; the value is still returned.
struct TruncationBound {
    double value = 0.0;
    bool in_regime = true;
};

TruncationBound truncation_bound(std::uint64_t n, std::uint64_t k);

}  // namespace goodturing
