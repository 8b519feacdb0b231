#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kinwave {

/// Shared equality tolerance: relative 1e-9 with an absolute floor of 1e-12.
/// Every flux formula branches on exact equalities (f_a = d_a vs f_a < d_a),
/// so the whole library classifies through this one epsilon.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

inline bool nearly_equal(double a, double b,
                         double rel = kRelTol, double abs = kAbsTol) {
    return std::fabs(a - b) <= std::max(abs, rel * std::max(std::fabs(a), std::fabs(b)));
}

/// -1, 0, +1 for a < b, a == b, a > b under the shared tolerance.
inline int compare_tol(double a, double b,
                       double rel = kRelTol, double abs = kAbsTol) {
    if (nearly_equal(a, b, rel, abs)) return 0;
    return a < b ? -1 : 1;
}

/// Bad user input: out-of-range values, malformed files, inconsistent specs.
/// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical identity the solver relies on failed to hold numerically.
/// The CLI maps this to exit code 2 and never emits the offending numbers.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace kinwave
