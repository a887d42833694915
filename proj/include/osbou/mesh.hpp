#pragma once

#include <cstddef>
#include <vector>

namespace osbou {

/// Strictly increasing time partition 0 = t_0 < ... < t_N = T.
class Mesh {
public:
    explicit Mesh(std::vector<double> nodes);

    const std::vector<double>& nodes() const noexcept { return nodes_; }
    double operator[](std::size_t i) const { return nodes_[i]; }
    std::size_t intervals() const noexcept { return nodes_.size() - 1; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double horizon() const noexcept { return nodes_.back(); }

    /// Width t_i - t_{i-1} of the interval ending at node i (i >= 1).
    double step(std::size_t i) const { return nodes_[i] - nodes_[i - 1]; }

    /// Index of the first node strictly greater than t (size() if none).
    std::size_t first_after(double t) const;

    bool operator==(const Mesh&) const = default;

private:
    std::vector<double> nodes_;
};

/// t_i = T ln(1 + i (e - 1) / N), i = 0..N, with t_N pinned to T.
Mesh make_log_mesh(double horizon, std::size_t intervals);

/// Equispaced partition of [0, T].
Mesh make_uniform_mesh(double horizon, std::size_t intervals);

/// Boundary values on a mesh, linearly interpolated in between.
class Boundary {
public:
    Boundary(Mesh mesh, std::vector<double> values);

    const Mesh& mesh() const noexcept { return mesh_; }
    const std::vector<double>& values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    /// Piecewise-linear interpolation; flat extrapolation outside the mesh.
    double at(double t) const;

private:
    Mesh mesh_;
    std::vector<double> values_;
};

}  // namespace osbou
