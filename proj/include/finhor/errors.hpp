#pragma once

#include <stdexcept>
#include <string>

namespace finhor {

// Input that fails scenario/rate validation (maps to CLI exit code 2).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Enumeration or search exceeded a configured cap (CLI exit code 3).
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A pair has pending data but zero interference-free rate: its queue can
// never drain, so the drain problem has no solution at any horizon.
struct InfeasiblePairError : std::runtime_error {
    int pair;
    explicit InfeasiblePairError(int pair_index)
        : std::runtime_error("pair " + std::to_string(pair_index + 1) +
                             " has pending data but zero interference-free rate"),
          pair(pair_index) {}
};

// Requested rate-tuple lies outside the T-slot region (CLI exit code 4).
// Carries the rate margin so callers can suggest the scale-down factor.
struct UnachievableError : std::runtime_error {
    double delta;
    UnachievableError(const std::string& what, double delta_t)
        : std::runtime_error(what), delta(delta_t) {}
};

// scale_to_boundary on a direction with zero margin.
struct BoundaryUndefinedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace finhor
