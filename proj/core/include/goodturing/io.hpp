// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "goodturing/estimator.hpp"
#include "goodturing/family.hpp"
#include "goodturing/harness.hpp"
#include "goodturing/mixture.hpp"
#include "goodturing/sampling.hpp"

namespace goodturing {

/// Locale-independent decimal rendering with 12 significant digits, enough
/// to round-trip the doubles compared in tests.
std::string format_double(double v);

/// Count-of-counts CSV: a `# n=<n>` metadata line, a `k,phi_k` header, one
/// row per nonzero phi_k in ascending k.
void write_counts_csv(std::ostream& out, const FrequencyTable& freq);

/// Parses the format written by write_counts_csv. Throws CountTableError on
/// missing metadata, malformed rows, or sum k*phi_k != n.
FrequencyTable read_counts_csv(std::istream& in);

/// True when a chunk of input looks like a counts CSV (its first nonblank
/// line is the `k,phi_k` header or a `# n=` metadata line) rather than raw
/// tokens.
bool looks_like_counts_csv(std::string_view head);

/// `k,zeta_k` rows for the nonzero entries of zeta, ascending k.
void write_zeta_csv(std::ostream& out, const GoodTuringVector& zeta);

/// `k,per_symbol_prob` rows for every k >= 1 with phi_k >= 1 and k <= n-1.
void write_per_symbol_csv(std::ostream& out, const FrequencyTable& freq);

/// `k,lambda_k` rows followed by a trailing `tail,<tail_mass>` row.
void write_lambda_csv(std::ostream& out, const PoissonMixtureVector& lambda);

/// Mixing-distribution JSON:
///   {"atoms": [[y, w], ...], "density": {"grid": [...], "values": [...]}}
/// Either part may be absent, not both. Throws SchemaError.
MixingDistribution load_mixing_json(std::istream& in);

/// Family JSON:
///   {"kind": "uniform"}
///   {"kind": "quantized_density", "density": {"grid": [...], "values": [...]}}
///   {"kind": "explicit_sequence", "atoms": [[p, m], ...],
///    "continuous_mass": c}
/// Throws SchemaError; unknown fields are errors.
Family load_family_json(std::istream& in);

/// Experiment config JSON: {"family": ..., "n_grid": [...], "trials": t,
/// "kmax": K, "seed": s, "epsilon_grid": [...]}. kmax defaults to 50, seed
/// to 0, epsilon_grid to empty. Throws SchemaError with the offending field
/// named.
ExperimentConfig load_config_json(std::istream& in);

void write_report_json(std::ostream& out, const ExperimentReport& report);

/// Flat per-n summary CSV of the three L1 metrics.
void write_report_csv(std::ostream& out, const ExperimentReport& report);

}  // namespace goodturing
