#pragma once

#include <stdexcept>
#include <string>

namespace h2plan {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- time series ingestion ---
struct MissingColumn : Error { using Error::Error; };
struct NonHourlyStep : Error { using Error::Error; };
struct OutOfRangeCapacityFactor : Error { using Error::Error; };
struct NegativeIntensity : Error { using Error::Error; };
struct OutOfBounds : Error { using Error::Error; };
struct InsufficientHistory : Error { using Error::Error; };

// --- linear programming ---
struct InvalidBounds : Error { using Error::Error; };
struct UnknownVariable : Error { using Error::Error; };
struct SolverNumericalError : Error { using Error::Error; };

// --- dispatch model ---
struct NotOptimal : Error { using Error::Error; };
struct InternalConsistency : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };

// --- planning / simulation ---
struct WindowInfeasible : Error { using Error::Error; };
struct ContractBreach : Error { using Error::Error; };
struct PlanInfeasible : Error { using Error::Error; };

// --- metrics ---
struct ZeroProduction : Error { using Error::Error; };
struct MismatchedAlphas : Error { using Error::Error; };

// --- configuration ---
struct ConfigError : Error { using Error::Error; };

} // namespace h2plan
