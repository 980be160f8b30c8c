// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "goodturing/estimator.hpp"
#include "goodturing/family.hpp"
#include "goodturing/mixture.hpp"
#include "goodturing/sampling.hpp"

namespace goodturing {

struct ExperimentConfig {
    Family family;
    std::vector<std::uint64_t> n_grid;
    std::uint32_t trials = 1;
    std::uint64_t kmax = 50;
    std::uint64_t seed = 0;
    std::vector<double> epsilon_grid;
};

/// Throws SchemaError (with the offending field named) when the config
/// violates its invariants: trials >= 1, nonempty strictly ascending n_grid,
/// positive epsilons.
void validate(const ExperimentConfig& config);

/// One sampled string and its diagnostics. The three L1 metrics live on the
/// common projection {0..kmax, tail} induced by lambda, which makes
/// l1_zeta_xi <= l1_xi_lambda + l1_zeta_lambda an exact triangle inequality.
struct TrialResult {
    std::uint64_t n = 0;
    std::uint32_t trial_index = 0;
    TotalProbabilityVector xi;
    GoodTuringVector zeta;
    double l1_xi_lambda = 0.0;
    double l1_zeta_lambda = 0.0;
    double l1_zeta_xi = 0.0;
};

struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double max = 0.0;
};

struct PerNSummary {
    std::uint64_t n = 0;
    std::uint32_t trials = 0;
    SummaryStats l1_xi_lambda;
    SummaryStats l1_zeta_lambda;
    SummaryStats l1_zeta_xi;
};

/// One cell of the concentration table: how often the realized xi_k/zeta_k
/// strayed more than epsilon from their exact expectations, next to the
/// bounded-differences bounds and the +-3 sigma binomial noise allowance of
/// the empirical fraction itself.
struct DeviationCell {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    double epsilon = 0.0;
    double frac_xi = 0.0;
    double frac_zeta = 0.0;
    double bound_xi = 0.0;
    double bound_zeta = 0.0;
    double noise_xi = 0.0;
    double noise_zeta = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    PoissonMixtureVector lambda;
    std::vector<PerNSummary> per_n;
    std::vector<DeviationCell> deviations;
    std::string rng_id;
};

/// L1 distance between two distributions on the nonnegative integers, over
/// the union of their stored supports.
double l1_distance(const std::map<std::uint64_t, double>& a,
                   const std::map<std::uint64_t, double>& b);

/// L1 distance against a truncated Poisson mixture: entries up to kmax plus
/// |mass above kmax - tail_mass|, so truncation shows up in the metric
/// instead of being silently dropped.
double l1_distance(const std::map<std::uint64_t, double>& a,
                   const PoissonMixtureVector& lambda);

/// L1 between two sparse distributions after lumping everything above kmax
/// into one tail bucket (the projection l1_distance-against-lambda uses).
double l1_projected(const std::map<std::uint64_t, double>& a,
                    const std::map<std::uint64_t, double>& b,
                    std::uint64_t kmax);

TrialResult run_trial(const DistributionSpec& dist, std::uint64_t n,
                      std::uint64_t seed, std::uint32_t trial_index,
                      const PoissonMixtureVector& lambda);

TrialResult run_trial(const Family& family, std::uint64_t n,
                      std::uint64_t seed, std::uint32_t trial_index,
                      const PoissonMixtureVector& lambda);

/// Runs the full grid. Trials are distributed over `threads` worker threads
/// (0 = all hardware threads) and reduced in fixed (n, trial) order, so the
/// report is identical for every thread count.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                unsigned threads = 0);

/// Exact finite-n expectations by exhaustive enumeration of all
/// alphabet^n strings, each weighted by its probability. Independent of the
/// g_k^n route: nothing here touches a binomial coefficient.
struct BruteForceExpectations {
    std::vector<double> e_xi;    // k = 0..n
    std::vector<double> e_zeta;  // k = 0..n (entry n is always 0)
};

/// Requires zero continuous mass and alphabet^n <= 1e7.
/// Throws TooLargeError beyond the cap.
BruteForceExpectations brute_force_expectations(const DistributionSpec& dist,
                                                std::uint64_t n);

}  // namespace goodturing
