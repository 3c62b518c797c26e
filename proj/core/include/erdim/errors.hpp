#pragma once

#include <stdexcept>
#include <string>

namespace erdim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Incompatible matrix/tensor dimensions.
struct ShapeError : Error {
    using Error::Error;
};

// Requested object exceeds the configured size budget.
struct SizeError : Error {
    using Error::Error;
};

// Physical or structural precondition violated (non-Hermitian Hamiltonian,
// negative rate, invalid density operator, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Iteration cap reached, overflow, or non-finite intermediate result.
struct NumericalError : Error {
    using Error::Error;
};

// Time step too large for the requested scheme.
struct StepError : Error {
    using Error::Error;
};

// Scalar argument outside its mathematical domain.
struct DomainError : Error {
    using Error::Error;
};

// Index outside the valid range.
struct RangeError : Error {
    using Error::Error;
};

}  // namespace erdim
