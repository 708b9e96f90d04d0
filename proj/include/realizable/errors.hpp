#pragma once

#include <stdexcept>
#include <string>

namespace realizable {

/// Input outside the supported range (e.g. factoring beyond 2^63).
struct unsupported_input_error : std::runtime_error {
    explicit unsupported_input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A computation was refused because its estimated cost exceeds a cap.
/// Callers normally fall back to modular or bound-based strategies.
struct cost_cap_error : std::runtime_error {
    explicit cost_cap_error(const std::string& what) : std::runtime_error(what) {}
};

/// A theorem hypothesis required by the requested operation does not hold.
struct hypothesis_violation_error : std::runtime_error {
    explicit hypothesis_violation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Not enough data was supplied (e.g. too few terms for minimal-polynomial recovery).
struct needs_more_data_error : std::runtime_error {
    explicit needs_more_data_error(const std::string& what) : std::runtime_error(what) {}
};

/// A splitting-field discriminant override is required but was not supplied.
struct needs_override_error : std::runtime_error {
    explicit needs_override_error(const std::string& what) : std::runtime_error(what) {}
};

/// An orbit census was requested for a sequence failing the Dold condition.
struct census_undefined_error : std::runtime_error {
    census_undefined_error(const std::string& what, std::uint64_t witness)
        : std::runtime_error(what), witness_index(witness) {}
    std::uint64_t witness_index;
};

}  // namespace realizable
