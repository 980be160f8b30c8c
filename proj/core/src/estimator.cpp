// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#include "goodturing/estimator.hpp"

#include <sstream>

#include "goodturing/errors.hpp"

namespace goodturing {

double GoodTuringVector::value(std::uint64_t k) const {
    auto it = numerators_.find(k);
    if (it == numerators_.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(n_);
}

std::map<std::uint64_t, double> GoodTuringVector::values() const {
    std::map<std::uint64_t, double> out;
    for (const auto& [k, numer] : numerators_) {
        out[k] = static_cast<double>(numer) / static_cast<double>(n_);
    }
    return out;
}

GoodTuringVector good_turing_totals(const FrequencyTable& freq) {
    if (freq.n == 0) {
        throw DomainError("good_turing_totals requires n >= 1");
    }
    std::map<std::uint64_t, std::uint64_t> numerators;
    for (const auto& [j, phi_j] : freq.phi) {
        if (j == 0 || phi_j == 0) continue;
        // j = k+1 contributes zeta_k; the class j = n maps to zeta_{n-1},
        // and zeta_n stays 0 by convention.
        numerators[j - 1] = j * phi_j;
    }
    return GoodTuringVector(freq.n, std::move(numerators));
}

double good_turing_per_symbol(const FrequencyTable& freq, std::uint64_t k) {
    if (k >= freq.n) {
        std::ostringstream msg;
        msg << "per-symbol estimate is not defined for k = " << k
            << " with n = " << freq.n;
        throw UnsupportedKError(msg.str());
    }
    const auto it = freq.phi.find(k);
    const std::uint64_t phi_k = it == freq.phi.end() ? 0 : it->second;
    if (phi_k == 0) {
        std::ostringstream msg;
        msg << "no symbol appears exactly " << k << " times";
        throw EmptyFrequencyClassError(msg.str());
    }
    const auto next = freq.phi.find(k + 1);
    const std::uint64_t phi_next = next == freq.phi.end() ? 0 : next->second;
    return static_cast<double>((k + 1) * phi_next) /
           (static_cast<double>(freq.n) * static_cast<double>(phi_k));
}

double missing_mass(const FrequencyTable& freq) {
    if (freq.n == 0) {
        throw DomainError("missing_mass requires n >= 1");
    }
    const auto it = freq.phi.find(1);
    const std::uint64_t phi_1 = it == freq.phi.end() ? 0 : it->second;
    return static_cast<double>(phi_1) / static_cast<double>(freq.n);
}

}  // namespace goodturing
