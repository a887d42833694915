#pragma once

#include <vector>

#include "osbou/params.hpp"
#include "osbou/quadrature.hpp"

namespace osbou {

/**
 * Deterministic volatility clock s = H(t) = int_0^t sigma^2(u) du on
 * [0, horizon], with its inverse.
 *
 * Constant sigma is handled in closed form. Otherwise H is accumulated with
 * composite Gauss-Legendre on a fixed panel grid and inverted by bisection
 * to 1e-12 time units.
 */
class VolatilityClock {
public:
    VolatilityClock(ParamFn sigma, double horizon, QuadratureSpec spec = {});

    double forward(double t) const;
    double inverse(double s) const;

    double horizon() const noexcept { return horizon_; }
    double transformed_horizon() const noexcept { return transformed_horizon_; }

private:
    ParamFn sigma_;
    double horizon_;
    bool constant_ = false;
    double sigma2_ = 1.0;
    std::vector<double> grid_;
    std::vector<double> cumulative_;
    double transformed_horizon_ = 0.0;

    double panel_integral(double a, double b) const;
};

}  // namespace osbou
