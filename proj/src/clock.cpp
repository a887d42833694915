#include "osbou/clock.hpp"

#include <algorithm>
#include <stdexcept>

namespace osbou {

VolatilityClock::VolatilityClock(ParamFn sigma, double horizon, QuadratureSpec spec)
    : sigma_(std::move(sigma)), horizon_(horizon) {
    if (!(horizon > 0.0)) throw std::invalid_argument("VolatilityClock: horizon must be > 0");
    double c = 0.0;
    if (sigma_.is_constant(&c)) {
        constant_ = true;
        sigma2_ = c * c;
        transformed_horizon_ = sigma2_ * horizon_;
        return;
    }
    const std::size_t panels = panel_count(0.0, horizon_, spec.max_panel);
    grid_.resize(panels + 1);
    cumulative_.resize(panels + 1);
    for (std::size_t k = 0; k <= panels; ++k) {
        grid_[k] = horizon_ * static_cast<double>(k) / static_cast<double>(panels);
    }
    grid_.back() = horizon_;
    cumulative_[0] = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
        cumulative_[k + 1] = cumulative_[k] + panel_integral(grid_[k], grid_[k + 1]);
    }
    transformed_horizon_ = cumulative_.back();
}

double VolatilityClock::panel_integral(double a, double b) const {
    return default_rule().integrate(
        [this](double u) {
            const double s = sigma_(u);
            return s * s;
        },
        a, b);
}

double VolatilityClock::forward(double t) const {
    t = std::clamp(t, 0.0, horizon_);
    if (constant_) return sigma2_ * t;
    if (t == horizon_) return transformed_horizon_;
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
    const auto k = static_cast<std::size_t>(it - grid_.begin()) - 1;
    return cumulative_[k] + panel_integral(grid_[k], t);
}

double VolatilityClock::inverse(double s) const {
    if (s <= 0.0) return 0.0;
    if (s >= transformed_horizon_) return horizon_;
    if (constant_) return s / sigma2_;
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    const auto k = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    double lo = grid_[k];
    double hi = grid_[std::min(k + 1, grid_.size() - 1)];
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (cumulative_[k] + panel_integral(grid_[k], mid) < s) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace osbou
