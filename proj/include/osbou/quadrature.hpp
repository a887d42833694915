#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace osbou {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    /// Newton iteration on P_n from the Chebyshev-like initial guesses.
    explicit GaussLegendre(std::size_t n);

    std::size_t size() const noexcept { return nodes.size(); }

    /// Single-panel integral of f over [a, b].
    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double acc = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k) acc += weights[k] * f(mid + half * nodes[k]);
        return half * acc;
    }
};

/// Shared 16-point rule.
const GaussLegendre& default_rule();

/// Quadrature resolution: `nodes`-point panels no wider than `max_panel`.
struct QuadratureSpec {
    std::size_t nodes = 16;
    double max_panel = 1.0 / 64.0;
};

/// Number of panels that splits [a, b] into pieces no wider than max_panel.
std::size_t panel_count(double a, double b, double max_panel);

}  // namespace osbou
