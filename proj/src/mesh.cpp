#include "osbou/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace osbou {

Mesh::Mesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) throw std::invalid_argument("Mesh: need at least two nodes");
    if (nodes_.front() != 0.0) throw std::invalid_argument("Mesh: first node must be 0");
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (!(nodes_[i] > nodes_[i - 1])) {
            throw std::invalid_argument("Mesh: nodes must be strictly increasing");
        }
    }
}

std::size_t Mesh::first_after(double t) const {
    return static_cast<std::size_t>(std::upper_bound(nodes_.begin(), nodes_.end(), t) -
                                    nodes_.begin());
}

Mesh make_log_mesh(double horizon, std::size_t intervals) {
    if (intervals < 2) throw std::invalid_argument("make_log_mesh: N must be >= 2");
    if (!(horizon > 0.0)) throw std::invalid_argument("make_log_mesh: T must be > 0");
    std::vector<double> t(intervals + 1);
    const double n = static_cast<double>(intervals);
    for (std::size_t i = 0; i <= intervals; ++i) {
        t[i] = horizon * std::log1p(static_cast<double>(i) * (std::numbers::e - 1.0) / n);
    }
    t.front() = 0.0;
    t.back() = horizon;
    return Mesh(std::move(t));
}

Mesh make_uniform_mesh(double horizon, std::size_t intervals) {
    if (intervals < 1) throw std::invalid_argument("make_uniform_mesh: need >= 1 interval");
    std::vector<double> t(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) {
        t[i] = horizon * static_cast<double>(i) / static_cast<double>(intervals);
    }
    t.back() = horizon;
    return Mesh(std::move(t));
}

Boundary::Boundary(Mesh mesh, std::vector<double> values)
    : mesh_(std::move(mesh)), values_(std::move(values)) {
    if (values_.size() != mesh_.size()) {
        throw std::invalid_argument("Boundary: one value per mesh node required");
    }
}

double Boundary::at(double t) const {
    const auto& n = mesh_.nodes();
    if (t <= n.front()) return values_.front();
    if (t >= n.back()) return values_.back();
    const std::size_t hi = mesh_.first_after(t);
    const std::size_t lo = hi - 1;
    if (t == n[lo]) return values_[lo];
    const double w = (t - n[lo]) / (n[hi] - n[lo]);
    return values_[lo] + w * (values_[hi] - values_[lo]);
}

}  // namespace osbou
