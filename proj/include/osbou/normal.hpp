#pragma once

#include <cmath>
#include <numbers>

namespace osbou {

/// Standard normal density.
inline double normal_pdf(double z) noexcept {
    return std::exp(-0.5 * z * z) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

/// Standard normal distribution function. erfc keeps full relative accuracy
/// in the left tail, where 1 + erf would cancel.
inline double normal_cdf(double z) noexcept {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

}  // namespace osbou
