#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "skewflow/base_flow.hpp"
#include "skewflow/cocycle.hpp"
#include "skewflow/common.hpp"

namespace skewflow {

/// A named system: driving torus flow, vector field, and (when meaningful)
/// the analytic linear part l(p, eps) = d_x f(p, 0, eps).
struct BenchmarkSystem {
    std::string name;
    BaseFlow flow;
    VectorField field;
    std::function<Mat(const BasePoint&, double)> linear_part;
};

/// Scalar forced model x' = -x + cos(theta), theta' = sqrt(2). The forcing
/// breaks the origin equilibrium; this is the workhorse for the attractor
/// machinery, run in slow time with eps = 1.
inline BenchmarkSystem make_b1_scalar() {
    BaseFlow flow(Vec::Constant(1, std::sqrt(2.0)));
    VectorField f;
    f.dim = 1;
    f.eval = [](const BasePoint& p, const Vec& x, double) {
        Vec out(1);
        out[0] = -x[0] + std::cos(p.angles[0]);
        return out;
    };
    f.jacobian_x = [](const BasePoint&, const Vec&, double) { return Mat::Constant(1, 1, -1.0); };
    f.lipschitz_hint = 1.0;
    f.origin_equilibrium = false;
    auto lin = [](const BasePoint&, double) { return Mat::Constant(1, 1, -1.0); };
    return {"B1-scalar", std::move(flow), std::move(f), lin};
}

/// Exact invariant graph of the scalar model.
inline double b1_scalar_graph(double theta) {
    const double w = std::sqrt(2.0);
    return (std::cos(theta) + w * std::sin(theta)) / (1.0 + w * w);
}

/// Autonomous linear baseline x' = diag(0, -1) x.
inline BenchmarkSystem make_constant_diag01() {
    BaseFlow flow(Vec::Constant(1, std::sqrt(2.0)));
    Mat l0 = Mat::Zero(2, 2);
    l0(1, 1) = -1.0;
    VectorField f;
    f.dim = 2;
    f.eval = [l0](const BasePoint&, const Vec& x, double) -> Vec { return l0 * x; };
    f.jacobian_x = [l0](const BasePoint&, const Vec&, double) { return l0; };
    f.lipschitz_hint = 1.0;
    f.origin_equilibrium = true;
    auto lin = [l0](const BasePoint&, double) { return l0; };
    return {"constant-diag01", std::move(flow), std::move(f), lin};
}

namespace detail {

inline Mat b1_matrix(const BasePoint& p) {
    Mat l(2, 2);
    l(0, 0) = 0.0;
    l(0, 1) = 0.5 * std::cos(p.angles[0]);
    l(1, 0) = 0.0;
    l(1, 1) = -1.0 + 0.4 * std::sin(p.angles[1]);
    return l;
}

}  // namespace detail

/// Linear family diag(0, -1) plus a zero-average quasi-periodic perturbation
/// on the (1, sqrt(2)) torus flow. Averaged matrix diag(0, -1), so the
/// spectrum splits into a neutral and a stable piece.
inline BenchmarkSystem make_b1() {
    BaseFlow flow((Vec(2) << 1.0, std::sqrt(2.0)).finished());
    VectorField f;
    f.dim = 2;
    f.eval = [](const BasePoint& p, const Vec& x, double) -> Vec { return detail::b1_matrix(p) * x; };
    f.jacobian_x = [](const BasePoint& p, const Vec&, double) { return detail::b1_matrix(p); };
    f.lipschitz_hint = 2.0;
    f.origin_equilibrium = true;
    auto lin = [](const BasePoint& p, double) { return detail::b1_matrix(p); };
    return {"B1", std::move(flow), std::move(f), lin};
}

/// B1 plus a quadratic coupling with a cubic-damped neutral direction:
///   n(theta, x) = ( -x1^3 + 0.3 sin(theta2) x1 x2,  0.4 cos(theta2) x1^2 ).
/// The reduced dynamics on the integral manifold is u' = -u^3 (1 + small
/// oscillation), which admits u^2 as a Lyapunov function.
inline BenchmarkSystem make_b2() {
    BaseFlow flow((Vec(2) << 1.0, std::sqrt(2.0)).finished());
    VectorField f;
    f.dim = 2;
    f.eval = [](const BasePoint& p, const Vec& x, double) -> Vec {
        Vec out = detail::b1_matrix(p) * x;
        out[0] += -x[0] * x[0] * x[0] + 0.3 * std::sin(p.angles[1]) * x[0] * x[1];
        out[1] += 0.4 * std::cos(p.angles[1]) * x[0] * x[0];
        return out;
    };
    f.jacobian_x = [](const BasePoint& p, const Vec& x, double) {
        Mat J = detail::b1_matrix(p);
        J(0, 0) += -3.0 * x[0] * x[0] + 0.3 * std::sin(p.angles[1]) * x[1];
        J(0, 1) += 0.3 * std::sin(p.angles[1]) * x[0];
        J(1, 0) += 0.8 * std::cos(p.angles[1]) * x[0];
        return J;
    };
    f.lipschitz_hint = 2.5;
    f.origin_equilibrium = true;
    auto lin = [](const BasePoint& p, double) { return detail::b1_matrix(p); };
    return {"B2", std::move(flow), std::move(f), lin};
}

inline std::vector<std::string> benchmark_names() {
    return {"B1-scalar", "constant-diag01", "B1", "B2"};
}

inline BenchmarkSystem make_benchmark(const std::string& name) {
    if (name == "B1-scalar") return make_b1_scalar();
    if (name == "constant-diag01") return make_constant_diag01();
    if (name == "B1") return make_b1();
    if (name == "B2") return make_b2();
    throw ConfigError("unknown benchmark system: " + name);
}

}  // namespace skewflow
