// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#include "goodturing/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "goodturing/errors.hpp"
#include "goodturing/numeric.hpp"
#include "goodturing/rng.hpp"

namespace goodturing {

std::uint64_t FrequencyTable::sum_k_phi() const {
    std::uint64_t total = 0;
    for (const auto& [k, count] : phi) total += k * count;
    return total;
}

double TotalProbabilityVector::value(std::uint64_t k) const {
    auto it = xi.find(k);
    return it == xi.end() ? 0.0 : it->second;
}

double TotalProbabilityVector::sum() const {
    KahanSum s;
    for (const auto& [k, v] : xi) s.add(v);
    return s.value();
}

SampleString sample_string(const DistributionSpec& dist, std::uint64_t n,
                           std::uint64_t seed) {
    if (n == 0) throw DomainError("sample_string requires n >= 1");
    const auto& atoms = dist.atoms();
    if (atoms.size() >= symbol_id::kMaxAtomClasses) {
        throw DomainError("too many atom classes for symbol-id encoding");
    }
    for (const Atom& a : atoms) {
        if (a.multiplicity >= symbol_id::kMaxSlots) {
            throw DomainError("atom multiplicity too large for symbol-id encoding");
        }
    }

    // Inverse-CDF table over atom classes; the continuous component is the
    // residual tail.
    std::vector<double> cumulative;
    cumulative.reserve(atoms.size());
    double running = 0.0;
    for (const Atom& a : atoms) {
        running += a.prob * static_cast<double>(a.multiplicity);
        cumulative.push_back(running);
    }
    const double atom_total = running;

    SampleString sample;
    sample.n = n;
    sample.counts.reserve(std::min<std::uint64_t>(n, 1 << 20));

    Rng rng(seed);
    for (std::uint64_t pos = 0; pos < n; ++pos) {
        const double u = rng.uniform01();
        std::uint64_t id;
        if (u < atom_total) {
            const auto it =
                std::upper_bound(cumulative.begin(), cumulative.end(), u);
            const auto idx =
                static_cast<std::uint64_t>(it - cumulative.begin());
            const std::uint64_t m = atoms[idx].multiplicity;
            const std::uint64_t slot = m > 1 ? rng.below(m) : 0;
            id = symbol_id::atom(idx, slot);
        } else {
            id = symbol_id::continuous(sample.continuous_draws++);
        }
        ++sample.counts[id];
    }
    return sample;
}

FrequencyTable count_frequencies(const SampleString& sample) {
    FrequencyTable table;
    table.n = sample.n;
    for (const auto& [id, count] : sample.counts) {
        ++table.phi[count];
        if (!symbol_id::is_continuous(id)) {
            table.atom_hits[symbol_id::atom_index(id)].push_back(count);
        }
    }
    for (auto& [idx, hits] : table.atom_hits) {
        std::sort(hits.begin(), hits.end());
    }
    return table;
}

TotalProbabilityVector true_total_probabilities(const DistributionSpec& dist,
                                                const SampleString& sample) {
    const auto& atoms = dist.atoms();
    std::map<std::uint64_t, KahanSum> mass_by_count;
    std::vector<std::uint64_t> seen_distinct(atoms.size(), 0);

    std::uint64_t total_count = 0;
    for (const auto& [id, count] : sample.counts) {
        total_count += count;
        if (symbol_id::is_continuous(id)) {
            if (count != 1) {
                throw ConsistencyError(
                    "continuous-component symbol observed more than once");
            }
            continue;  // probability zero: no xi mass
        }
        const std::uint64_t idx = symbol_id::atom_index(id);
        if (idx >= atoms.size()) {
            throw ConsistencyError(
                "sample references an atom the distribution lacks");
        }
        if (symbol_id::slot(id) >= atoms[idx].multiplicity) {
            throw ConsistencyError("sample references a slot beyond the atom's "
                                   "multiplicity");
        }
        mass_by_count[count].add(atoms[idx].prob);
        ++seen_distinct[idx];
    }
    if (total_count != sample.n) {
        throw ConsistencyError("sample counts do not sum to its length");
    }

    TotalProbabilityVector result;
    result.n = sample.n;
    KahanSum unseen;
    unseen.add(dist.continuous_mass());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (seen_distinct[i] > atoms[i].multiplicity) {
            throw ConsistencyError("atom class observed more distinct symbols "
                                   "than its multiplicity");
        }
        const auto unseen_symbols = atoms[i].multiplicity - seen_distinct[i];
        if (unseen_symbols > 0) {
            unseen.add(atoms[i].prob * static_cast<double>(unseen_symbols));
        }
    }
    result.xi[0] = unseen.value();
    for (const auto& [k, mass] : mass_by_count) {
        const double v = mass.value();
        if (v > 0.0) result.xi[k] = v;
    }
    return result;
}

TokenCounter::TokenCounter(std::optional<char> delimiter)
    : delimiter_(delimiter) {}

bool TokenCounter::is_delimiter(unsigned char c) const {
    if (delimiter_) return c == static_cast<unsigned char>(*delimiter_);
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
}

void TokenCounter::validate_byte(unsigned char c) {
    if (utf8_remaining_ > 0) {
        if (c < utf8_lo_ || c > utf8_hi_) {
            std::ostringstream msg;
            msg << "malformed UTF-8 continuation byte at offset " << offset_;
            throw Utf8Error(msg.str(), offset_);
        }
        --utf8_remaining_;
        utf8_lo_ = 0x80;
        utf8_hi_ = 0xBF;
        return;
    }
    if (c < 0x80) return;
    if (c >= 0xC2 && c <= 0xDF) {
        utf8_remaining_ = 1;
    } else if (c == 0xE0) {
        utf8_remaining_ = 2;
        utf8_lo_ = 0xA0;
    } else if (c >= 0xE1 && c <= 0xEC) {
        utf8_remaining_ = 2;
    } else if (c == 0xED) {
        utf8_remaining_ = 2;
        utf8_hi_ = 0x9F;
    } else if (c >= 0xEE && c <= 0xEF) {
        utf8_remaining_ = 2;
    } else if (c == 0xF0) {
        utf8_remaining_ = 3;
        utf8_lo_ = 0x90;
    } else if (c >= 0xF1 && c <= 0xF3) {
        utf8_remaining_ = 3;
    } else if (c == 0xF4) {
        utf8_remaining_ = 3;
        utf8_hi_ = 0x8F;
    } else {
        std::ostringstream msg;
        msg << "malformed UTF-8 lead byte at offset " << offset_;
        throw Utf8Error(msg.str(), offset_);
    }
}

void TokenCounter::feed(const char* data, std::size_t size) {
    for (std::size_t i = 0; i < size; ++i, ++offset_) {
        const auto c = static_cast<unsigned char>(data[i]);
        validate_byte(c);
        if (utf8_remaining_ == 0 && is_delimiter(c)) {
            if (!pending_.empty()) {
                ++counts_[pending_];
                ++n_;
                pending_.clear();
            }
        } else {
            pending_.push_back(static_cast<char>(c));
        }
    }
}

void TokenCounter::finish() {
    if (finished_) return;
    if (utf8_remaining_ > 0) {
        std::ostringstream msg;
        msg << "truncated UTF-8 sequence at offset " << offset_;
        throw Utf8Error(msg.str(), offset_);
    }
    if (!pending_.empty()) {
        ++counts_[pending_];
        ++n_;
        pending_.clear();
    }
    finished_ = true;
}

FrequencyTable TokenCounter::to_frequency_table() const {
    FrequencyTable table;
    table.n = n_;
    for (const auto& [token, count] : counts_) ++table.phi[count];
    return table;
}

FrequencyTable ingest_token_counts(std::istream& in,
                                   std::optional<char> delimiter) {
    TokenCounter counter(delimiter);
    char buffer[1 << 16];
    while (in) {
        in.read(buffer, sizeof(buffer));
        counter.feed(buffer, static_cast<std::size_t>(in.gcount()));
    }
    counter.finish();
    return counter.to_frequency_table();
}

}  // namespace goodturing
