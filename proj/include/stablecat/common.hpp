#pragma once

#include <stdexcept>
#include <string>

namespace stablecat {

inline constexpr const char* kToolVersion = "0.1.0";

/// Malformed input or a violated structural invariant (CLI exit code 2).
struct invariant_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A computational precondition does not hold for otherwise valid input
/// (CLI exit code 3).
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Cross-checked computations disagree; indicates a bug (CLI exit code 4).
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace stablecat
