#pragma once

/**
 * @file params.hpp
 * @brief Time-dependent coefficient functions theta(t), alpha(t), sigma(t).
 *
 * A ParamFn is one member of a closed set of function families. The set is
 * large enough to express every slope, pulling level and volatility used by
 * the shipped scenario presets, including bounded approximations of the
 * exploding Brownian-bridge and OU-bridge slopes.
 *
 * Two families (Warped, Affine) are internal: they are produced by the
 * volatility time change and the put/call reflection and cannot be read
 * from a config file.
 */

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace osbou {

class ParamFn;
class VolatilityClock;

namespace family {

/// c
struct Constant {
    double c = 0.0;
};

/// a * exp(b t)
struct Exponential {
    double a = 1.0;
    double b = 0.0;
};

/// a * sin(2 pi freq t + phase) + c
struct Sinusoid {
    double a = 1.0;
    double freq = 1.0;
    double phase = 0.0;
    double c = 0.0;
};

/// sum_i coeffs[i] t^i
struct Polynomial {
    std::vector<double> coeffs;
};

/// a + b Phi((t - m) / s)
struct NormalCdfStep {
    double a = 0.0;
    double b = 1.0;
    double m = 0.0;
    double s = 1.0;
};

/// a + b phi((t - m) / s)
struct NormalPdfBump {
    double a = 0.0;
    double b = 1.0;
    double m = 0.0;
    double s = 1.0;
};

/// a * sech(k (horizon - t))
struct Sech {
    double a = 1.0;
    double k = 1.0;
    double horizon = 1.0;
};

/**
 * OU-bridge slope a coth(a (horizon - t)) with a smooth cap on the last
 * eps time units:
 *
 *   t <= horizon - eps:  a coth(a (horizon - t))
 *   t >  horizon - eps:  1 - exp(-a^2 (t - horizon + eps) / sinh^2(a eps)) + a coth(a eps)
 *
 * The cap matches value and first derivative at t = horizon - eps.
 */
struct CothCapped {
    double a = 1.0;
    double horizon = 1.0;
    double eps = 0.01;
};

/// Piecewise-linear interpolation through (knots, values); flat outside.
struct Tabulated {
    std::vector<double> knots;
    std::vector<double> values;
};

/// base(h(s)) / divisor(h(s))^2 where h is the inverse volatility clock.
/// A null divisor means no division.
struct Warped {
    std::shared_ptr<const ParamFn> base;
    std::shared_ptr<const ParamFn> divisor;
    std::shared_ptr<const VolatilityClock> clock;
};

/// shift + scale * base(t)
struct Affine {
    std::shared_ptr<const ParamFn> base;
    double scale = 1.0;
    double shift = 0.0;
};

}  // namespace family

class ParamFn {
public:
    using Family = std::variant<family::Constant, family::Exponential, family::Sinusoid,
                                family::Polynomial, family::NormalCdfStep,
                                family::NormalPdfBump, family::Sech, family::CothCapped,
                                family::Tabulated, family::Warped, family::Affine>;

    /// Defaults to the constant 1.
    ParamFn();

    /// Validates the coefficients; throws std::invalid_argument on a
    /// malformed family (non-positive scale, unsorted knots, ...).
    ParamFn(Family f);  // NOLINT(google-explicit-constructor)

    /// Unchecked evaluation.
    double operator()(double t) const;

    const Family& family() const noexcept { return family_; }

    /// Config-file name of the family ("constant", "exponential", ...).
    std::string_view kind() const noexcept;

    /// True for Constant(c); writes c to *value when given.
    bool is_constant(double* value = nullptr) const noexcept;

    /// Breakpoints that should be sampled when validating, e.g. tabulated
    /// knots and the coth cap switch point.
    std::vector<double> special_points() const;

private:
    Family family_;
};

ParamFn constant(double c);

/// Domain-checked evaluation; throws std::domain_error when t is outside
/// [0, horizon].
double eval(const ParamFn& f, double t, double horizon);

/// Rejects f unless it is finite and strictly positive on [0, horizon].
/// Samples 1001 equispaced points plus every special point. `name` is used
/// in the error message.
void require_positive(const ParamFn& f, double horizon, std::string_view name);

/// Rejects f unless it is finite on the same sample set.
void require_finite(const ParamFn& f, double horizon, std::string_view name);

/// Builds a ParamFn from a config-style kind name and flat parameter list.
/// Tabulated takes [k0, v0, k1, v1, ...]. Throws std::invalid_argument.
ParamFn make_param_fn(std::string_view kind, std::span<const double> params);

/// Inverse of make_param_fn for the serializable families.
std::vector<double> serialize_params(const ParamFn& f);

}  // namespace osbou
