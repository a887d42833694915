#pragma once

/**
 * @file valuation.hpp
 * @brief Early-exercise-premium representation of the American put value
 *
 *   V(t, x) = K(A, 1, t, x, T, A)
 *           + int_t^T K(lambda A + theta(u) alpha(u), lambda + theta(u), t, x, u, b(u)) du,
 *
 * with the integral discretized exactly like the free-boundary equation: a
 * right Riemann sum over the boundary's mesh nodes after t, where t itself
 * acts as a temporary node when it is off the mesh.
 */

#include <cstddef>
#include <vector>

#include "osbou/mesh.hpp"
#include "osbou/ou_model.hpp"

namespace osbou {

struct ValuePoint {
    double t = 0.0;
    double x = 0.0;
    double value = 0.0;
    double european = 0.0;
    double premium = 0.0;
    double gain = 0.0;
    bool in_stopping_region = false;
};

/// Value function of a unit-volatility model with a solved boundary.
class ValueFunction {
public:
    ValueFunction(const OUModel& model, Boundary boundary, QuadratureSpec spec = {});

    double european(double t, double x) const;
    double premium(double t, double x) const;
    ValuePoint operator()(double t, double x) const;

    /// (V(t, b(t) + h) - V(t, b(t))) / h + 1; default h = 1e-4 (A - b(t) + 1).
    double smooth_fit_gap(double t, double h = 0.0) const;

    const OUModel& model() const noexcept { return model_; }
    const Boundary& boundary() const noexcept { return boundary_; }

private:
    OUModel model_;
    Boundary boundary_;
    TransitionCalculator calc_;
    /// Transition over mesh interval j-1 -> j, index j.
    std::vector<Transition> steps_;
    std::vector<double> premium_intercept_;
    std::vector<double> premium_slope_;

    void check_time(double t) const;
};

double european_term(const OUModel& m, double t, double x);
double premium_term(const OUModel& m, const Boundary& b, double t, double x);
ValuePoint value(const OUModel& m, const Boundary& b, double t, double x);
double smooth_fit_gap(const OUModel& m, const Boundary& b, double t, double h = 0.0);

/// (A - x)^+
double put_gain(double strike, double x);

/**
 * Model of X^c = 2A - X: same theta and sigma, pulling level 2A - alpha.
 * The American call on X^c with strike A has value V_c(t, y) = V_p(t, 2A - y)
 * and boundary 2A - b_p, where the call is exercised once X^c rises to or
 * above that level.
 */
OUModel reflect(const OUModel& m);

/// Call value at (t, y) on the model `call_model`, through the put on its
/// reflection. `put` must be built on reflect(call_model).
double call_value(const ValueFunction& put, double t, double y);

}  // namespace osbou
