#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace skewflow {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Bad or inconsistent configuration (dimension mismatches, invalid tolerances,
/// unknown names in config files).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition of an operation does not hold on the given data
/// (empty sets, zero epsilon, radius out of range, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A numerical procedure failed to deliver a result at the requested quality
/// (no convergence, unresolved spectral gap, step-size underflow, non-finite
/// values from a user observable).
struct NumericsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw DomainError(what);
}

inline void require_config(bool cond, const std::string& what) {
    if (!cond) throw ConfigError(what);
}

inline bool nearly_equal(double a, double b, double tol) {
    return std::abs(a - b) <= tol;
}

}  // namespace skewflow
