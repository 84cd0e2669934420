#pragma once

#include <stdexcept>
#include <string>

namespace causalnn {

// Base class for all library errors. Subclasses map to failure categories
// so callers can distinguish bad configuration from bad data or bad state.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid knob values: layer sizes, probabilities out of range, S < 2, ...
class ConfigError : public Error {
public:
    using Error::Error;
};

// Dimension mismatch between matrices/vectors.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Bad data values: non-finite inputs, empty batches, bad feature index.
class InputError : public Error {
public:
    using Error::Error;
};

// Operation called in the wrong lifecycle state (unfitted model, stale cache).
class StateError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

// Estimation cannot proceed (e.g. single-arm data for a T-learner).
class EstimationError : public Error {
public:
    using Error::Error;
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& msg, int epoch_) : Error(msg), epoch(epoch_) {}
    int epoch;
};

// Operation not supported by this model kind.
class UnsupportedOperationError : public Error {
public:
    using Error::Error;
};

// CSV / config file parse failures, with location when known.
class ParseError : public Error {
public:
    using Error::Error;
};

// Filesystem failures.
class IoError : public Error {
public:
    using Error::Error;
};

// Replicated benchmark failed even after resampling.
class BenchmarkError : public Error {
public:
    using Error::Error;
};

}  // namespace causalnn
