// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace goodturing {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside its mathematical domain (negative probability,
/// zero multiplicity, y outside [0, n], ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A distribution's total mass deviates from 1 by more than the repairable
/// drift (1e-6).
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// A family cannot produce a distribution for the requested block length.
class UnsupportedNError : public Error {
public:
    using Error::Error;
};

/// A sample references atoms that do not exist in the distribution it is
/// claimed to have been drawn from.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Per-symbol estimate requested for a frequency class with no observed
/// symbols.
class EmptyFrequencyClassError : public Error {
public:
    using Error::Error;
};

/// Per-symbol estimate requested for k = n, which the estimator does not
/// define.
class UnsupportedKError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature failed to reach the requested tolerance within the
/// depth cap.
class QuadratureError : public Error {
public:
    using Error::Error;
};

/// Exhaustive enumeration would exceed the configured work cap.
class TooLargeError : public Error {
public:
    using Error::Error;
};

/// A JSON or CSV input does not match its documented schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A count-of-counts table is internally inconsistent (sum k*phi_k != n).
class CountTableError : public Error {
public:
    using Error::Error;
};

/// Input text is not valid UTF-8. Carries the byte offset of the first
/// offending byte.
class Utf8Error : public Error {
public:
    Utf8Error(const std::string& what, std::uint64_t byte_offset)
        : Error(what), byte_offset_(byte_offset) {}
    std::uint64_t byte_offset() const { return byte_offset_; }

private:
    std::uint64_t byte_offset_;
};

}  // namespace goodturing
