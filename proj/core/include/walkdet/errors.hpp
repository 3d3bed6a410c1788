#pragma once

#include <stdexcept>
#include <string>

namespace walkdet {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Chain validation failures.
struct RowSumError : Error { using Error::Error; };
struct NegativeEntryError : Error { using Error::Error; };
struct NotIrreducibleError : Error { using Error::Error; };
struct NotAperiodicError : Error { using Error::Error; };

// Numerical failures.
struct ConvergenceError : Error { using Error::Error; };
struct InversionError : Error { using Error::Error; };

// Enumeration / input guards.
struct TooManyPathsError : Error { using Error::Error; };
struct StateOutOfRangeError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct SizeTooSmallError : Error { using Error::Error; };
struct DisconnectedError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace walkdet
