#pragma once

#include <stdexcept>
#include <string>

namespace greedylab {

// Thrown when an enumeration would exceed its size guard.
struct SizeError : std::runtime_error {
    explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

// Coordinate outside 1..dim.
struct IndexError : std::out_of_range {
    explicit IndexError(const std::string& what) : std::out_of_range(what) {}
};

// Mathematically invalid argument (bad order, bad exponent, empty set where
// a nonempty one is required, vector not in the stated domain).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Real/complex mixups: complex data handed to a real space and so on.
struct FieldError : std::invalid_argument {
    explicit FieldError(const std::string& what) : std::invalid_argument(what) {}
};

// Bad space construction parameters (dyadic levels, quadrature sizes, ...).
struct LayoutError : std::invalid_argument {
    explicit LayoutError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation cannot meet its stated accuracy (undersampled quadrature).
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Requested frequencies/coordinates do not fit the oracle.
struct RangeError : std::out_of_range {
    explicit RangeError(const std::string& what) : std::out_of_range(what) {}
};

// Malformed configuration input (CLI/JSON).
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace greedylab
