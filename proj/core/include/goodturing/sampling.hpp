// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "goodturing/distribution.hpp"

namespace goodturing {

/// Symbol ids pack (atom class, slot within the class) into 64 bits; draws
/// from the continuous component live in a disjoint range and are handed out
/// by a counter, so they never repeat within a sample.
namespace symbol_id {
inline constexpr std::uint64_t kContinuousFlag = 1ULL << 63;
inline constexpr unsigned kSlotBits = 39;
inline constexpr std::uint64_t kMaxSlots = 1ULL << kSlotBits;
inline constexpr std::uint64_t kMaxAtomClasses = 1ULL << (63 - kSlotBits);

inline std::uint64_t atom(std::uint64_t atom_index, std::uint64_t slot) {
    return (atom_index << kSlotBits) | slot;
}
inline std::uint64_t continuous(std::uint64_t counter) {
    return kContinuousFlag | counter;
}
inline bool is_continuous(std::uint64_t id) {
    return (id & kContinuousFlag) != 0;
}
inline std::uint64_t atom_index(std::uint64_t id) { return id >> kSlotBits; }
inline std::uint64_t slot(std::uint64_t id) { return id & (kMaxSlots - 1); }
}  // namespace symbol_id

/// Per-symbol counts of one observed i.i.d. string. The string itself is not
/// kept, only the counts.
struct SampleString {
    std::uint64_t n = 0;
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t continuous_draws = 0;
};

/// Count-of-counts for one sample: phi[k] is the number of distinct symbols
/// appearing exactly k times. atom_hits maps an atom class to the sorted
/// list of counts of its observed symbols (empty for token-stream tables,
/// where the underlying distribution is unknown).
struct FrequencyTable {
    std::uint64_t n = 0;
    std::map<std::uint64_t, std::uint64_t> phi;
    std::map<std::uint64_t, std::vector<std::uint64_t>> atom_hits;

    std::uint64_t sum_k_phi() const;
};

/// The true total probabilities xi: xi[k] is the mass, under the underlying
/// distribution, of the set of symbols observed exactly k times. k = 0 is
/// always present; other entries only when positive.
struct TotalProbabilityVector {
    std::uint64_t n = 0;
    std::map<std::uint64_t, double> xi;

    double value(std::uint64_t k) const;
    double sum() const;
};

/// Draws an i.i.d. string of length n. Deterministic in (dist, n, seed):
/// the seed names the stream, draws are consumed in position order (one
/// class draw per position, plus one slot draw for atoms with
/// multiplicity > 1).
SampleString sample_string(const DistributionSpec& dist, std::uint64_t n,
                           std::uint64_t seed);

FrequencyTable count_frequencies(const SampleString& sample);

/// Evaluates xi for a sample drawn from dist. Symbols of the continuous
/// component carry zero probability, so they contribute to phi_1 but never
/// to xi_1; their mass stays in xi_0.
/// Throws ConsistencyError if the sample references atoms or slots that
/// dist does not have.
TotalProbabilityVector true_total_probabilities(const DistributionSpec& dist,
                                                const SampleString& sample);

/// Streaming token counter for text input. Tokens are maximal nonempty runs
/// between delimiters: by default any run of ASCII whitespace, otherwise one
/// literal delimiter character. Input must be valid UTF-8; the first bad
/// byte raises Utf8Error with its absolute offset.
class TokenCounter {
public:
    explicit TokenCounter(std::optional<char> delimiter = std::nullopt);

    void feed(const char* data, std::size_t size);
    void finish();

    std::uint64_t token_count() const { return n_; }
    FrequencyTable to_frequency_table() const;

private:
    bool is_delimiter(unsigned char c) const;
    void validate_byte(unsigned char c);

    std::optional<char> delimiter_;
    std::unordered_map<std::string, std::uint64_t> counts_;
    std::string pending_;
    std::uint64_t n_ = 0;
    std::uint64_t offset_ = 0;
    int utf8_remaining_ = 0;
    unsigned char utf8_lo_ = 0x80;
    unsigned char utf8_hi_ = 0xBF;
    bool finished_ = false;
};

/// Convenience wrapper: counts every token in the stream.
FrequencyTable ingest_token_counts(std::istream& in,
                                   std::optional<char> delimiter = std::nullopt);

}  // namespace goodturing
