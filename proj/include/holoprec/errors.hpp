// Error types shared across the library.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace holoprec {

// 0 < eps < 1 violated in a truncation request.
class InvalidToleranceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The leading theta-coefficient vanishes at 0, or an input is otherwise
// not an ordinary-point operator.
class NotOrdinaryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// b_0(n) = 0 for some n >= 0 reached during a computation.  Carries the
// offending index so the diagnostic can name it.
class SingularRecurrenceError : public std::runtime_error {
public:
    explicit SingularRecurrenceError(std::int64_t n)
        : std::runtime_error("singular recurrence: b0(" + std::to_string(n) +
                             ") = 0; the ordinary-point hypothesis fails"),
          index_(n) {}

    std::int64_t index() const { return index_; }

private:
    std::int64_t index_;
};

// Wrong number of initial values.
class ArityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Inconsistent or unusable evaluation parameters (e.g. tolerance exponent
// overflow; advice for the caller is in the message).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Certified bound machinery gave up on this instance.
class UnsupportedInstanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two evaluation routes disagreed beyond their combined error bounds.
class CorrectnessRegressionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Input text/JSON could not be parsed; message names the offending field.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace holoprec
