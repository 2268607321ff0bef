#pragma once

#include <algorithm>
#include <cmath>

#include "skewflow/common.hpp"

namespace skewflow {

enum class IntegrateStatus {
    done,            // reached the requested end time
    stopped,         // monitor asked to stop (e.g. escape detected)
    step_underflow,  // adaptive controller drove the step below resolution
};

struct IntegrateResult {
    IntegrateStatus status = IntegrateStatus::done;
    double t = 0;  // time actually reached
};

struct NullMonitor {
    bool operator()(double, const Vec&) const { return true; }
};

/// Classical fixed-step RK4. The span [t0, t1] is cut into ceil(|t1-t0|/step)
/// equal steps; integrates backward when t1 < t0.
template <class Rhs, class Monitor = NullMonitor>
IntegrateResult integrate_rk4(Rhs&& rhs, Vec& x, double t0, double t1, double step,
                              Monitor&& monitor = Monitor{}) {
    require(step > 0, "integrate_rk4: step must be positive");
    const double span = t1 - t0;
    if (span == 0) return {IntegrateStatus::done, t1};
    const long n = std::max<long>(1, long(std::ceil(std::abs(span) / step)));
    const double h = span / double(n);
    Vec k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size()), tmp(x.size());
    double t = t0;
    for (long i = 0; i < n; ++i) {
        rhs(t, x, k1);
        tmp = x + (0.5 * h) * k1;
        rhs(t + 0.5 * h, tmp, k2);
        tmp = x + (0.5 * h) * k2;
        rhs(t + 0.5 * h, tmp, k3);
        tmp = x + h * k3;
        rhs(t + h, tmp, k4);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = t0 + span * double(i + 1) / double(n);
        if (!monitor(t, x)) return {IntegrateStatus::stopped, t};
    }
    return {IntegrateStatus::done, t1};
}

/// Adaptive Dormand-Prince 5(4) embedded pair with standard PI-free step
/// control. Step sizes are chosen against a mixed absolute/relative error
/// norm; integrates in either time direction.
template <class Rhs, class Monitor = NullMonitor>
IntegrateResult integrate_rk45(Rhs&& rhs, Vec& x, double t0, double t1, double rel_tol,
                               double abs_tol, double max_step = 0.0,
                               Monitor&& monitor = Monitor{}) {
    require(rel_tol > 0 && abs_tol > 0, "integrate_rk45: tolerances must be positive");
    const double span = t1 - t0;
    if (span == 0) return {IntegrateStatus::done, t1};
    const double dir = span > 0 ? 1.0 : -1.0;

    const long d = x.size();
    Vec k1(d), k2(d), k3(d), k4(d), k5(d), k6(d), k7(d), y(d), err(d);

    double t = t0;
    double h = dir * std::min(std::abs(span), max_step > 0 ? max_step : std::abs(span) / 10.0 + 1e-4);

    while (dir * (t1 - t) > 0) {
        if (dir * (t + h) > dir * t1) h = t1 - t;
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
            return {IntegrateStatus::step_underflow, t};

        rhs(t, x, k1);
        y = x + h * (0.2 * k1);
        rhs(t + 0.2 * h, y, k2);
        y = x + h * ((3.0 / 40.0) * k1 + (9.0 / 40.0) * k2);
        rhs(t + 0.3 * h, y, k3);
        y = x + h * ((44.0 / 45.0) * k1 + (-56.0 / 15.0) * k2 + (32.0 / 9.0) * k3);
        rhs(t + 0.8 * h, y, k4);
        y = x + h * ((19372.0 / 6561.0) * k1 + (-25360.0 / 2187.0) * k2 + (64448.0 / 6561.0) * k3 +
                     (-212.0 / 729.0) * k4);
        rhs(t + (8.0 / 9.0) * h, y, k5);
        y = x + h * ((9017.0 / 3168.0) * k1 + (-355.0 / 33.0) * k2 + (46732.0 / 5247.0) * k3 +
                     (49.0 / 176.0) * k4 + (-5103.0 / 18656.0) * k5);
        rhs(t + h, y, k6);
        // 5th order solution
        y = x + h * ((35.0 / 384.0) * k1 + (500.0 / 1113.0) * k3 + (125.0 / 192.0) * k4 +
                     (-2187.0 / 6784.0) * k5 + (11.0 / 84.0) * k6);
        rhs(t + h, y, k7);
        // difference against the embedded 4th order solution
        err = h * ((35.0 / 384.0 - 5179.0 / 57600.0) * k1 + (500.0 / 1113.0 - 7571.0 / 16695.0) * k3 +
                   (125.0 / 192.0 - 393.0 / 640.0) * k4 +
                   (-2187.0 / 6784.0 + 92097.0 / 339200.0) * k5 + (11.0 / 84.0 - 187.0 / 2100.0) * k6 +
                   (-1.0 / 40.0) * k7);

        double norm2 = 0;
        for (long i = 0; i < d; ++i) {
            double scale = abs_tol + rel_tol * std::max(std::abs(x[i]), std::abs(y[i]));
            double q = err[i] / scale;
            norm2 += q * q;
        }
        double err_norm = std::sqrt(norm2 / double(d));

        if (err_norm <= 1.0) {
            t += h;
            x = y;
            if (!monitor(t, x)) return {IntegrateStatus::stopped, t};
        }
        double factor = 0.9 * std::pow(std::max(err_norm, 1e-10), -0.2);
        h *= std::clamp(factor, 0.2, 5.0);
        if (max_step > 0 && std::abs(h) > max_step) h = dir * max_step;
    }
    return {IntegrateStatus::done, t1};
}

}  // namespace skewflow
