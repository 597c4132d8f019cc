#pragma once

#include <stdexcept>
#include <string>

namespace rlsd {

// Shape, finiteness or parameter validation failed.
class InvalidInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Regularizer/constraint combination outside the exact-prox catalog.
class UnsupportedCombinationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A point violates its constraint set beyond tolerance.
class InfeasiblePointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Linear-algebra breakdown or an inner loop that failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A certificate needs a reference solution that was not supplied.
class MissingReferenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The requested check does not apply to the given trace.
class NotApplicableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rlsd
