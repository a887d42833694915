#pragma once

/**
 * @file ou_model.hpp
 * @brief Pricing problem definition and Gaussian transition statistics.
 *
 * The underlying follows
 *
 *   dX_t = theta(t) (alpha(t) - X_t) dt + sigma(t) dW_t,  0 <= t <= T,
 *
 * and the American put pays (A - X)^+ discounted at rate lambda. Given
 * X_{t1} = x, X_{t2} is normal with mean nu(t1, x, t2) and variance
 * gamma^2(t1, t2). Both are computed in unit-volatility form (sigma == 1);
 * other volatilities go through to_unit_volatility first.
 */

#include <cstddef>
#include <memory>
#include <vector>

#include "osbou/clock.hpp"
#include "osbou/mesh.hpp"
#include "osbou/params.hpp"
#include "osbou/quadrature.hpp"

namespace osbou {

class OUModel {
public:
    /**
     * Validates T > 0, lambda >= 0, finite A, theta and sigma strictly
     * positive and alpha finite on [0, T]. Throws std::invalid_argument.
     *
     * `rate_scale` multiplies lambda pointwise. User models leave it at 1;
     * the volatility time change sets it to 1 / sigma^2(h(s)) so that
     * discounting keeps running on the original clock.
     */
    OUModel(ParamFn theta, ParamFn alpha, ParamFn sigma, double horizon, double lambda,
            double strike, ParamFn rate_scale = constant(1.0));

    const ParamFn& theta() const noexcept { return theta_; }
    const ParamFn& alpha() const noexcept { return alpha_; }
    const ParamFn& sigma() const noexcept { return sigma_; }
    const ParamFn& rate_scale() const noexcept { return rate_scale_; }
    double horizon() const noexcept { return horizon_; }
    double lambda() const noexcept { return lambda_; }
    double strike() const noexcept { return strike_; }

    /// sigma is the constant 1.
    bool unit_volatility() const noexcept;

    /// lambda * rate_scale(t).
    double rate(double t) const { return lambda_ * rate_scale_(t); }

    /// Same dynamics with a different strike / pulling level / rate.
    OUModel with_alpha(ParamFn alpha) const;
    OUModel with_lambda(double lambda) const;

private:
    ParamFn theta_;
    ParamFn alpha_;
    ParamFn sigma_;
    ParamFn rate_scale_;
    double horizon_;
    double lambda_;
    double strike_;
};

/**
 * Transition of the unit-volatility process over [t1, t2]:
 *
 *   X_{t2} | X_{t1} = x  ~  Normal(exp(log_slope) x + offset, variance)
 *
 * plus the discount exposure int rate_scale, so the discount factor is
 * exp(-lambda * rate_exposure). Transitions compose along adjacent
 * intervals (Chapman-Kolmogorov).
 */
struct Transition {
    double log_slope = 0.0;
    double offset = 0.0;
    double variance = 0.0;
    double rate_exposure = 0.0;

    double slope() const;
    double mean(double x) const { return slope() * x + offset; }
    double discount(double lambda) const;

    /// This transition followed by `next`.
    Transition then(const Transition& next) const;
};

struct TransitionStats {
    double nu = 0.0;
    double gamma2 = 0.0;
};

/// Quadrature-backed transition computation for one model.
class TransitionCalculator {
public:
    explicit TransitionCalculator(const OUModel& model, QuadratureSpec spec = {});

    /// Identity transition when t2 == t1; throws std::domain_error on t2 < t1.
    Transition operator()(double t1, double t2) const;

    const OUModel& model() const noexcept { return model_; }

private:
    OUModel model_;
    QuadratureSpec spec_;
    GaussLegendre rule_;
    bool constant_rate_scale_;
    double rate_scale_value_ = 1.0;

    Transition panel(double a, double b) const;
};

Transition transition(const OUModel& m, double t1, double t2);

/// nu(t1, x, t2). Requires a unit-volatility model.
double transition_mean(const OUModel& m, double t1, double x, double t2);

/// gamma^2(t1, t2). Requires a unit-volatility model.
double transition_var(const OUModel& m, double t1, double t2);

TransitionStats transition_stats(const OUModel& m, double t1, double x, double t2);

/// (theta(t) + lambda)^{-1} (theta(t) alpha(t) + lambda A), the upper bound
/// of the exercise boundary.
double gamma_bound(const OUModel& m, double t);

/// min{A, gamma_bound(T)}, the boundary value at expiry.
double terminal_boundary(const OUModel& m);

/**
 * Upper-triangular table of transitions between every pair of mesh nodes,
 * built from per-interval quadrature and composed along the mesh.
 */
class PairTable {
public:
    PairTable(const OUModel& m, const Mesh& mesh, QuadratureSpec spec = {});

    /// Transition from node i to node j >= i.
    const Transition& operator()(std::size_t i, std::size_t j) const {
        return data_[row_start_[i] + (j - i)];
    }

    std::size_t nodes() const noexcept { return row_start_.size(); }

private:
    std::vector<std::size_t> row_start_;
    std::vector<Transition> data_;
};

/**
 * Unit-volatility representation of a model with arbitrary sigma via the
 * clock s = H(t) = int_0^t sigma^2.
 */
struct TimeChangedModel {
    OUModel inner;
    std::shared_ptr<const VolatilityClock> clock;

    double to_inner_time(double t) const { return clock->forward(t); }
    double to_outer_time(double s) const { return clock->inverse(s); }
    double transformed_horizon() const { return inner.horizon(); }
};

/// theta~(s) = theta(h(s)) / sigma^2(h(s)), alpha~(s) = alpha(h(s)),
/// T~ = H(T). sigma == 1 returns the model unchanged with an identity clock.
TimeChangedModel to_unit_volatility(const OUModel& m);

/// b(t) = b~(H(t)); throws std::domain_error for t outside [0, T].
double pull_back_boundary(const TimeChangedModel& tc, const Boundary& b_tilde, double t);

/// The whole boundary in original time: mesh nodes h(s_i), values b~(s_i).
Boundary pull_back(const TimeChangedModel& tc, const Boundary& b_tilde);

}  // namespace osbou
