#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "skewflow/base_flow.hpp"
#include "skewflow/common.hpp"
#include "skewflow/integrate.hpp"
#include "skewflow/rng.hpp"

namespace skewflow {

/// Right-hand side family f(p, x, eps) on the product of the torus and R^d.
/// Fields driving the rapid-coefficient machinery must have an equilibrium at
/// the origin (origin_equilibrium = true); the attractor machinery also
/// accepts forced fields without one.
struct VectorField {
    int dim = 0;
    std::function<Vec(const BasePoint&, const Vec&, double)> eval;
    /// Analytic Jacobian in x; leave empty to fall back to finite differences.
    std::function<Mat(const BasePoint&, const Vec&, double)> jacobian_x;
    double lipschitz_hint = 0.0;  // 0 = unknown
    bool origin_equilibrium = false;

    /// d_x f, analytic when supplied, else 5-point central differences with
    /// step 1e-5 * (1 + |x|).
    Mat jacobian(const BasePoint& p, const Vec& x, double eps) const {
        if (jacobian_x) return jacobian_x(p, x, eps);
        const double h = 1e-5 * (1.0 + x.norm());
        Mat J(dim, dim);
        Vec xp = x;
        for (int j = 0; j < dim; ++j) {
            const double xj = x[j];
            xp[j] = xj + 2 * h;
            Vec f_p2 = eval(p, xp, eps);
            xp[j] = xj + h;
            Vec f_p1 = eval(p, xp, eps);
            xp[j] = xj - h;
            Vec f_m1 = eval(p, xp, eps);
            xp[j] = xj - 2 * h;
            Vec f_m2 = eval(p, xp, eps);
            xp[j] = xj;
            J.col(j) = (-f_p2 + 8.0 * f_p1 - 8.0 * f_m1 + f_m2) / (12.0 * h);
        }
        return J;
    }
};

/// Integration policy for the skew-product local flow.
struct FlowConfig {
    enum class Integrator { rk45_adaptive, rk4_fixed };
    Integrator integrator = Integrator::rk45_adaptive;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    /// Step cap for the adaptive scheme; the step itself for fixed RK4.
    double max_step = 0.25;
    /// Leaving |x| > blowup_radius models exit from the maximal domain.
    double blowup_radius = 1e3;

    void validate() const {
        require_config(rel_tol > 0 && abs_tol > 0, "FlowConfig: tolerances must be positive");
        require_config(blowup_radius > 0, "FlowConfig: blowup radius must be positive");
        require_config(integrator == Integrator::rk45_adaptive || max_step > 0,
                       "FlowConfig: fixed RK4 needs a positive step");
    }
};

struct FlowPoint {
    BasePoint p;
    Vec x;
};

/// Result of a trajectory leg: either the end point or the escape time at
/// which the solution left the chart.
struct FlowResult {
    FlowPoint z;
    bool escaped = false;
    double exit_time = 0;

    bool ok() const { return !escaped; }
};

namespace detail {

template <class Rhs>
FlowResult run_leg(const BaseFlow& flow, const BasePoint& p0, Vec x, double base_rate, double t,
                   Rhs&& rhs, const FlowConfig& cfg) {
    cfg.validate();
    bool escaped = false;
    double t_exit = 0;
    auto monitor = [&](double tau, const Vec& state) {
        if (state.norm() > cfg.blowup_radius) {
            escaped = true;
            t_exit = tau;
            return false;
        }
        return true;
    };
    IntegrateResult res;
    if (cfg.integrator == FlowConfig::Integrator::rk4_fixed)
        res = integrate_rk4(rhs, x, 0.0, t, cfg.max_step, monitor);
    else
        res = integrate_rk45(rhs, x, 0.0, t, cfg.rel_tol, cfg.abs_tol, cfg.max_step, monitor);
    if (res.status == IntegrateStatus::step_underflow)
        throw NumericsError("evolve: step size underflow at t = " + std::to_string(res.t));
    if (escaped) return {FlowPoint{flow.advance(p0, base_rate * t_exit), std::move(x)}, true, t_exit};
    return {FlowPoint{flow.advance(p0, base_rate * t), std::move(x)}, false, 0};
}

}  // namespace detail

/// Slow-time flow of x' = |eps| f(tau_t(p), x, eps). The base component always
/// advances by exactly t; pass eps = 1 for families in which eps plays no
/// role. Returns an escape marker if |x| leaves the blowup radius.
inline FlowResult evolve(const BaseFlow& flow, const FlowPoint& z, double t,
                         const VectorField& field, double eps, const FlowConfig& cfg) {
    require(z.p.dim() == flow.dim(), "evolve: base dimension mismatch");
    require(int(z.x.size()) == field.dim, "evolve: fiber dimension mismatch");
    require(std::isfinite(t), "evolve: time must be finite");
    const double scale = std::abs(eps);
    const BasePoint p0 = z.p;
    auto rhs = [&](double tau, const Vec& x, Vec& dxdt) {
        dxdt = scale * field.eval(flow.advance(p0, tau), x, eps);
    };
    return detail::run_leg(flow, p0, z.x, 1.0, t, rhs, cfg);
}

/// Fast-time flow of dx/ds = f(tau_{s/|eps|}(p), x, eps); the base advances by
/// s/|eps|. Consistent with evolve through the substitution s = |eps| t.
inline FlowResult fast_evolve(const BaseFlow& flow, const FlowPoint& z, double s,
                              const VectorField& field, double eps, const FlowConfig& cfg) {
    require(eps != 0, "fast_evolve: eps must be nonzero");
    require(z.p.dim() == flow.dim(), "fast_evolve: base dimension mismatch");
    require(int(z.x.size()) == field.dim, "fast_evolve: fiber dimension mismatch");
    const double rate = 1.0 / std::abs(eps);
    const BasePoint p0 = z.p;
    auto rhs = [&](double sigma, const Vec& x, Vec& dxds) {
        dxds = field.eval(flow.advance(p0, sigma * rate), x, eps);
    };
    return detail::run_leg(flow, p0, z.x, rate, s, rhs, cfg);
}

/// Distance on the product space: d(z1, z2) = d_P(p1, p2) + |x1 - x2|.
inline double product_metric(const BaseFlow& flow, const FlowPoint& a, const FlowPoint& b) {
    return flow.metric(a.p, b.p) + (a.x - b.x).norm();
}

/// Defect of the cocycle law d(tau_t(tau_s(z)), tau_{s+t}(z)) in slow time.
/// Escape on either leg makes the two sides incomparable (nullopt).
inline std::optional<double> cocycle_defect(const BaseFlow& flow, const FlowPoint& z, double s,
                                            double t, const VectorField& field, double eps,
                                            const FlowConfig& cfg) {
    FlowResult leg1 = evolve(flow, z, s, field, eps, cfg);
    if (!leg1.ok()) return std::nullopt;
    FlowResult leg2 = evolve(flow, leg1.z, t, field, eps, cfg);
    if (!leg2.ok()) return std::nullopt;
    FlowResult direct = evolve(flow, z, s + t, field, eps, cfg);
    if (!direct.ok()) return std::nullopt;
    return product_metric(flow, leg2.z, direct.z);
}

/// Spot-check that f(p, 0, eps) = 0 on random base points. Returns the worst
/// |f(p, 0, eps)| seen.
inline double origin_equilibrium_defect(const BaseFlow& flow, const VectorField& field, double eps,
                                        int probes = 16, std::uint64_t seed = 1) {
    double worst = 0;
    Vec zero = Vec::Zero(field.dim);
    for (int i = 0; i < probes; ++i) {
        Rng rng = Rng::for_index(seed, i);
        Vec a(flow.dim());
        for (int j = 0; j < flow.dim(); ++j) a[j] = rng.uniform(0, two_pi);
        worst = std::max(worst, field.eval(BasePoint(a), zero, eps).norm());
    }
    return worst;
}

/// Worst relative disagreement between the field's Jacobian and central
/// finite differences of eval, over random probes.
inline double jacobian_consistency_defect(const BaseFlow& flow, const VectorField& field,
                                          double eps, int probes = 8, std::uint64_t seed = 2) {
    double worst = 0;
    for (int i = 0; i < probes; ++i) {
        Rng rng = Rng::for_index(seed, i);
        Vec a(flow.dim());
        for (int j = 0; j < flow.dim(); ++j) a[j] = rng.uniform(0, two_pi);
        Vec x(field.dim);
        for (int j = 0; j < field.dim; ++j) x[j] = rng.uniform(-0.5, 0.5);
        BasePoint p(a);
        Mat J = field.jacobian(p, x, eps);
        VectorField fd{field.dim, field.eval, nullptr};
        Mat Jfd = fd.jacobian(p, x, eps);
        double scale = std::max(1.0, J.norm());
        worst = std::max(worst, (J - Jfd).norm() / scale);
    }
    return worst;
}

}  // namespace skewflow
