// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "goodturing/distribution.hpp"

namespace goodturing {

/// Binomial occupancy kernel g_k^n(y) = C(n,k) (y/n)^k (1 - y/n)^{n-k} for
/// 0 <= y <= n. Evaluated exactly for n <= 30 and through a saddle-point
/// expansion (Loader-style stirlerr/bd0 split) above that, which keeps the
/// relative error near 1e-14 even at n = 1e7 where naive lgamma differences
/// would lose five digits.
double g_binomial(std::uint64_t n, std::uint64_t k, double y);

/// Poisson kernel g_k(y) = y^k e^{-y} / k!, the n -> infinity limit of
/// g_k^n. Same evaluation strategy as g_binomial.
double g_poisson(std::uint64_t k, double y);

/// Poisson mixture truncated at kmax. lambda[k] integrates g_k against the
/// mixing distribution; tail_mass = 1 - sum(lambda) makes the truncation
/// error explicit.
struct PoissonMixtureVector {
    std::vector<double> lambda;
    double tail_mass = 0.0;

    std::uint64_t kmax() const {
        return static_cast<std::uint64_t>(lambda.size()) - 1;
    }
};

/// lambda_k = sum_atoms w * g_k(y) + integral density(y) * g_k(y) dy, the
/// density integral by adaptive Simpson per piecewise-linear segment to
/// absolute tolerance 1e-10 per lambda_k.
PoissonMixtureVector poisson_mixture(const MixingDistribution& Q,
                                     std::uint64_t kmax);

/// Exact E[xi_k^n] = sum_atoms m p g_k^n(n p) + continuous_mass * [k == 0].
double expected_xi(const DistributionSpec& dist, std::uint64_t n,
                   std::uint64_t k);

/// Exact E[zeta_k^n] = sum_atoms m p g_k^{n-1}((n-1) p)
///                     + continuous_mass * [k == 0], for 0 <= k <= n-1.
double expected_zeta(const DistributionSpec& dist, std::uint64_t n,
                     std::uint64_t k);

}  // namespace goodturing
