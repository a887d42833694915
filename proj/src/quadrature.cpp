#include "osbou/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace osbou {

GaussLegendre::GaussLegendre(std::size_t n) : nodes(n), weights(n) {
    if (n == 0) throw std::invalid_argument("GaussLegendre: need at least one node");
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                const auto jd = static_cast<double>(j);
                p0 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p2) / jd;
            }
            dp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // Derivative at the converged root.
        double p0 = 1.0;
        double p1 = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            const double p2 = p1;
            p1 = p0;
            const auto jd = static_cast<double>(j);
            p0 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p2) / jd;
        }
        dp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
}

const GaussLegendre& default_rule() {
    static const GaussLegendre rule(16);
    return rule;
}

std::size_t panel_count(double a, double b, double max_panel) {
    const double width = b - a;
    if (!(width > 0.0)) return 0;
    const double n = std::ceil(width / max_panel - 1e-12);
    return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

}  // namespace osbou
