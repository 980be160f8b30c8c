// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#include "goodturing/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "goodturing/bounds.hpp"
#include "goodturing/errors.hpp"
#include "goodturing/numeric.hpp"
#include "goodturing/rng.hpp"

namespace goodturing {

namespace {

constexpr std::uint64_t kEnumerationCap = 10'000'000;

SummaryStats summarize(std::vector<double> values) {
    SummaryStats stats;
    if (values.empty()) return stats;
    KahanSum sum;
    for (double v : values) sum.add(v);
    stats.mean = sum.value() / static_cast<double>(values.size());
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size();
    stats.median = m % 2 == 1
                       ? values[m / 2]
                       : 0.5 * (values[m / 2 - 1] + values[m / 2]);
    stats.max = values.back();
    return stats;
}

double tail_mass_above(const std::map<std::uint64_t, double>& a,
                       std::uint64_t kmax) {
    KahanSum s;
    for (auto it = a.upper_bound(kmax); it != a.end(); ++it) s.add(it->second);
    return s.value();
}

double binomial_noise(double bound, std::uint32_t trials) {
    return 3.0 * std::sqrt(bound * (1.0 - bound) / static_cast<double>(trials));
}

}  // namespace

void validate(const ExperimentConfig& config) {
    if (config.trials == 0) {
        throw SchemaError("trials: must be >= 1");
    }
    if (config.n_grid.empty()) {
        throw SchemaError("n_grid: must be nonempty");
    }
    for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
        if (config.n_grid[i] == 0) {
            throw SchemaError("n_grid: entries must be >= 1");
        }
        if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1]) {
            throw SchemaError("n_grid: must be strictly ascending");
        }
    }
    for (double eps : config.epsilon_grid) {
        if (!(eps > 0.0)) {
            throw SchemaError("epsilon_grid: entries must be > 0");
        }
    }
}

double l1_distance(const std::map<std::uint64_t, double>& a,
                   const std::map<std::uint64_t, double>& b) {
    KahanSum s;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            s.add(std::abs(ia->second));
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            s.add(std::abs(ib->second));
            ++ib;
        } else {
            s.add(std::abs(ia->second - ib->second));
            ++ia;
            ++ib;
        }
    }
    return s.value();
}

double l1_distance(const std::map<std::uint64_t, double>& a,
                   const PoissonMixtureVector& lambda) {
    KahanSum s;
    for (std::uint64_t k = 0; k < lambda.lambda.size(); ++k) {
        const auto it = a.find(k);
        const double ak = it == a.end() ? 0.0 : it->second;
        s.add(std::abs(ak - lambda.lambda[k]));
    }
    s.add(std::abs(tail_mass_above(a, lambda.kmax()) - lambda.tail_mass));
    return s.value();
}

double l1_projected(const std::map<std::uint64_t, double>& a,
                    const std::map<std::uint64_t, double>& b,
                    std::uint64_t kmax) {
    KahanSum s;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ia->first <= kmax && ib != b.end() &&
           ib->first <= kmax) {
        if (ia->first < ib->first) {
            s.add(std::abs(ia->second));
            ++ia;
        } else if (ib->first < ia->first) {
            s.add(std::abs(ib->second));
            ++ib;
        } else {
            s.add(std::abs(ia->second - ib->second));
            ++ia;
            ++ib;
        }
    }
    for (; ia != a.end() && ia->first <= kmax; ++ia) s.add(std::abs(ia->second));
    for (; ib != b.end() && ib->first <= kmax; ++ib) s.add(std::abs(ib->second));
    s.add(std::abs(tail_mass_above(a, kmax) - tail_mass_above(b, kmax)));
    return s.value();
}

TrialResult run_trial(const DistributionSpec& dist, std::uint64_t n,
                      std::uint64_t seed, std::uint32_t trial_index,
                      const PoissonMixtureVector& lambda) {
    const std::uint64_t stream = derive_stream_seed(seed, n, trial_index);
    const SampleString sample = sample_string(dist, n, stream);
    const FrequencyTable freq = count_frequencies(sample);

    TrialResult result;
    result.n = n;
    result.trial_index = trial_index;
    result.xi = true_total_probabilities(dist, sample);
    result.zeta = good_turing_totals(freq);

    const auto zeta_values = result.zeta.values();
    result.l1_xi_lambda = l1_distance(result.xi.xi, lambda);
    result.l1_zeta_lambda = l1_distance(zeta_values, lambda);
    result.l1_zeta_xi = l1_projected(zeta_values, result.xi.xi, lambda.kmax());
    return result;
}

TrialResult run_trial(const Family& family, std::uint64_t n,
                      std::uint64_t seed, std::uint32_t trial_index,
                      const PoissonMixtureVector& lambda) {
    return run_trial(family.dist_at(n), n, seed, trial_index, lambda);
}

ExperimentReport run_experiment(const ExperimentConfig& config,
                                unsigned threads) {
    validate(config);
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }

    ExperimentReport report{
        config,
        poisson_mixture(config.family.limit_Q(), config.kmax),
        {},
        {},
        kRngId};

    for (const std::uint64_t n : config.n_grid) {
        const DistributionSpec dist = config.family.dist_at(n);
        std::vector<TrialResult> results(config.trials);

        const unsigned workers =
            static_cast<unsigned>(std::min<std::uint64_t>(threads, config.trials));
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::uint32_t t = w; t < config.trials; t += workers) {
                        results[t] =
                            run_trial(dist, n, config.seed, t, report.lambda);
                    }
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (std::thread& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);

        PerNSummary summary;
        summary.n = n;
        summary.trials = config.trials;
        std::vector<double> v0, v1, v2;
        v0.reserve(results.size());
        v1.reserve(results.size());
        v2.reserve(results.size());
        for (const TrialResult& r : results) {
            v0.push_back(r.l1_xi_lambda);
            v1.push_back(r.l1_zeta_lambda);
            v2.push_back(r.l1_zeta_xi);
        }
        summary.l1_xi_lambda = summarize(std::move(v0));
        summary.l1_zeta_lambda = summarize(std::move(v1));
        summary.l1_zeta_xi = summarize(std::move(v2));
        report.per_n.push_back(summary);

        // Concentration table: deviations are measured from the exact
        // finite-n expectations, not from lambda.
        const std::uint64_t k_top = std::min(config.kmax, n - 1);
        for (std::uint64_t k = 0; k <= k_top; ++k) {
            const double exi = expected_xi(dist, n, k);
            const double ezeta = expected_zeta(dist, n, k);
            for (const double eps : config.epsilon_grid) {
                DeviationCell cell;
                cell.n = n;
                cell.k = k;
                cell.epsilon = eps;
                std::uint32_t hits_xi = 0;
                std::uint32_t hits_zeta = 0;
                for (const TrialResult& r : results) {
                    if (std::abs(r.xi.value(k) - exi) > eps) ++hits_xi;
                    if (std::abs(r.zeta.value(k) - ezeta) > eps) ++hits_zeta;
                }
                cell.frac_xi =
                    static_cast<double>(hits_xi) / static_cast<double>(config.trials);
                cell.frac_zeta = static_cast<double>(hits_zeta) /
                                 static_cast<double>(config.trials);
                cell.bound_xi = azuma_bound_xi(n, eps);
                cell.bound_zeta = azuma_bound_zeta(n, k, eps);
                cell.noise_xi = binomial_noise(cell.bound_xi, config.trials);
                cell.noise_zeta = binomial_noise(cell.bound_zeta, config.trials);
                report.deviations.push_back(cell);
            }
        }
    }
    return report;
}

BruteForceExpectations brute_force_expectations(const DistributionSpec& dist,
                                                std::uint64_t n) {
    if (n == 0) throw DomainError("brute_force_expectations requires n >= 1");
    if (dist.continuous_mass() != 0.0) {
        throw DomainError("brute_force_expectations requires zero continuous "
                          "mass");
    }
    const std::uint64_t alphabet = dist.alphabet_size();
    if (alphabet == 0) throw DomainError("empty alphabet");

    std::uint64_t total_strings = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (total_strings > kEnumerationCap / alphabet) {
            std::ostringstream msg;
            msg << "alphabet^n = " << alphabet << "^" << n
                << " exceeds the enumeration cap " << kEnumerationCap;
            throw TooLargeError(msg.str());
        }
        total_strings *= alphabet;
    }

    std::vector<double> probs;
    probs.reserve(alphabet);
    for (const Atom& a : dist.atoms()) {
        for (std::uint64_t j = 0; j < a.multiplicity; ++j) {
            probs.push_back(a.prob);
        }
    }

    std::vector<KahanSum> acc_xi(n + 1);
    std::vector<KahanSum> acc_zeta(n + 1);
    std::vector<std::uint32_t> digits(n, 0);
    std::vector<std::uint32_t> counts(alphabet, 0);
    std::vector<std::uint32_t> touched;
    std::vector<std::uint32_t> phi(n + 1, 0);
    touched.reserve(n);

    for (std::uint64_t s = 0; s < total_strings; ++s) {
        double string_prob = 1.0;
        touched.clear();
        for (std::uint64_t pos = 0; pos < n; ++pos) {
            const std::uint32_t sym = digits[pos];
            string_prob *= probs[sym];
            if (counts[sym]++ == 0) touched.push_back(sym);
        }

        double seen_mass = 0.0;
        std::fill(phi.begin(), phi.end(), 0);
        for (const std::uint32_t sym : touched) {
            const std::uint32_t c = counts[sym];
            acc_xi[c].add(string_prob * probs[sym]);
            seen_mass += probs[sym];
            ++phi[c];
            counts[sym] = 0;
        }
        acc_xi[0].add(string_prob * (1.0 - seen_mass));
        for (std::uint64_t k = 0; k + 1 <= n; ++k) {
            if (phi[k + 1] == 0) continue;
            acc_zeta[k].add(string_prob * static_cast<double>((k + 1) * phi[k + 1]) /
                            static_cast<double>(n));
        }

        // Odometer increment over the alphabet.
        for (std::uint64_t pos = n; pos-- > 0;) {
            if (++digits[pos] < alphabet) break;
            digits[pos] = 0;
        }
    }

    BruteForceExpectations out;
    out.e_xi.resize(n + 1);
    out.e_zeta.resize(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k) {
        out.e_xi[k] = acc_xi[k].value();
        out.e_zeta[k] = acc_zeta[k].value();
    }
    return out;
}

}  // namespace goodturing
