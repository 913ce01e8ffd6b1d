#pragma once

#include <stdexcept>
#include <string>

namespace sqcc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A covariance matrix (or derived quantity) violates the uncertainty bound
/// beyond tolerance.
struct NonPhysicalCovariance : Error {
    using Error::Error;
};

/// An argument lies outside the mathematical domain of the operation.
struct DomainError : Error {
    using Error::Error;
};

/// The amplifier gain produces a non-normalizable equivalent state at this
/// operating point; the caller should treat the point as unusable.
struct GainOutOfDomain : Error {
    using Error::Error;
};

/// All exponential terms of an expression underflowed; the operating point is
/// outside the device's useful regime.
struct NumericUnderflow : Error {
    using Error::Error;
};

/// A truncated number-basis state lost too much norm to be trusted.
struct TruncationError : Error {
    using Error::Error;
};

/// A heralding pattern has vanishing probability.
struct ZeroProbability : Error {
    using Error::Error;
};

/// Run configuration failed schema validation.
struct ConfigError : Error {
    using Error::Error;
};

/// Every point of an optimization grid failed to evaluate.
struct EmptyFeasibleSet : Error {
    using Error::Error;
};

}  // namespace sqcc
