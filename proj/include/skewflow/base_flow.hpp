#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "skewflow/common.hpp"

namespace skewflow {

/// Point on the m-torus, all angles reduced to [0, 2*pi).
struct BasePoint {
    Vec angles;

    BasePoint() = default;
    explicit BasePoint(Vec a) : angles(std::move(a)) { reduce(); }
    BasePoint(std::initializer_list<double> a) : angles(Eigen::Map<const Vec>(a.begin(), long(a.size()))) {
        reduce();
    }

    int dim() const { return int(angles.size()); }

    void reduce() {
        for (long i = 0; i < angles.size(); ++i) {
            angles[i] = std::fmod(angles[i], two_pi);
            if (angles[i] < 0) angles[i] += two_pi;
        }
    }
};

/// Rotation flow on the m-torus with rationally independent frequencies.
/// Independence is validated at construction over all integer combinations
/// with |k|_1 up to resonance_check_bound; this is a finite certificate for
/// minimality and unique ergodicity at the working resolution, not a proof.
class BaseFlow {
  public:
    explicit BaseFlow(Vec frequencies, int resonance_check_bound = 50)
        : freq_(std::move(frequencies)), bound_(resonance_check_bound) {
        require_config(freq_.size() >= 1, "BaseFlow: need at least one frequency");
        require_config(bound_ >= 1, "BaseFlow: resonance bound must be positive");
        check_resonances();
    }

    int dim() const { return int(freq_.size()); }
    const Vec& frequencies() const { return freq_; }
    int resonance_check_bound() const { return bound_; }

    /// tau_t: advance the rotation by time t. Exact group law up to rounding.
    BasePoint advance(const BasePoint& p, double t) const {
        require(p.dim() == dim(), "advance: dimension mismatch");
        return BasePoint(Vec(p.angles + t * freq_));
    }

    /// Flat torus metric: sum over coordinates of the circle distance.
    double metric(const BasePoint& p1, const BasePoint& p2) const {
        require(p1.dim() == p2.dim(), "base_metric: dimension mismatch");
        double s = 0;
        for (long i = 0; i < p1.angles.size(); ++i) {
            double d = std::abs(p1.angles[i] - p2.angles[i]);
            s += std::min(d, two_pi - d);
        }
        return s;
    }

    /// Time average (1/T) * integral of g along the orbit of p, composite
    /// trapezoid with a fixed step. By unique ergodicity this approximates the
    /// space average independently of p.
    Vec ergodic_average(const std::function<Vec(const BasePoint&)>& g, const BasePoint& p,
                        double horizon, double step = 1e-2) const {
        require(horizon > 0, "ergodic_average: horizon must be positive");
        require(step > 0, "ergodic_average: step must be positive");
        long n = std::max<long>(1, long(std::ceil(horizon / step)));
        double h = horizon / double(n);
        Vec acc = 0.5 * eval_checked(g, p);
        for (long k = 1; k < n; ++k) acc += eval_checked(g, advance(p, double(k) * h));
        acc += 0.5 * eval_checked(g, advance(p, horizon));
        return acc * (h / horizon);
    }

  private:
    static Vec eval_checked(const std::function<Vec(const BasePoint&)>& g, const BasePoint& p) {
        Vec v = g(p);
        if (!v.allFinite()) throw NumericsError("ergodic_average: observable returned a non-finite value");
        return v;
    }

    // Reject integer relations sum_i k_i w_i = 0 with 0 < |k|_1 <= bound.
    void check_resonances() const {
        const double tol = 1e-9 * freq_.cwiseAbs().maxCoeff();
        std::vector<long> k(freq_.size(), 0);
        std::function<void(long, long)> walk = [&](long idx, long budget) {
            if (idx == long(freq_.size())) {
                long l1 = 0;
                double dot = 0;
                for (long i = 0; i < long(k.size()); ++i) {
                    l1 += std::abs(k[i]);
                    dot += double(k[i]) * freq_[i];
                }
                if (l1 > 0 && std::abs(dot) <= tol) {
                    std::ostringstream msg;
                    msg << "BaseFlow: resonant frequencies, relation k = (";
                    for (long i = 0; i < long(k.size()); ++i) msg << (i ? "," : "") << k[i];
                    msg << ")";
                    throw ConfigError(msg.str());
                }
                return;
            }
            for (long v = -budget; v <= budget; ++v) {
                k[idx] = v;
                walk(idx + 1, budget - std::abs(v));
            }
            k[idx] = 0;
        };
        walk(0, bound_);
    }

    Vec freq_;
    int bound_;
};

}  // namespace skewflow
