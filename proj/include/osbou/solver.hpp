#pragma once

/**
 * @file solver.hpp
 * @brief Free-boundary solvers for the American put on a time-dependent OU.
 *
 * The exercise boundary b solves
 *
 *   b(t) = A - K(A, 1, t, b(t), T, A)
 *            - int_t^T K(lambda A + theta(u) alpha(u), lambda + theta(u), t, b(t), u, b(u)) du
 *
 * with b(T) = min{A, gamma(T)}. On a mesh the integral becomes a right
 * Riemann sum with weight t_j - t_{j-1} attached to node t_j, j > i. Two
 * solvers are provided for the discretized equation: Picard iteration over
 * the whole boundary and node-by-node backward induction.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "osbou/mesh.hpp"
#include "osbou/ou_model.hpp"

namespace osbou {

struct SolverConfig {
    std::size_t intervals = 200;
    double delta = 1e-3;
    std::size_t max_iter = 500;
    /// Lower clamp for iterates; FreeBoundaryProblem::default_clamp_low when unset.
    std::optional<double> clamp_low;

    /// Throws std::invalid_argument unless N >= 2, delta > 0, max_iter >= 1.
    void validate() const;
};

struct SolverReport {
    Boundary boundary;
    /// Picard: d_k for k = 1, 2, ... Backward induction: a single entry, the
    /// squared distance between the result and one Picard step applied to it.
    std::vector<double> errors;
    std::size_t iterations = 0;
    bool converged = false;
    /// Some iterate was clamped at clamp_low.
    bool hit_clamp = false;
    /// Backward induction only: first node whose scalar solve failed.
    std::optional<std::size_t> failed_node;
};

enum class SolverMethod { picard, backward };

/**
 * Discretized free-boundary equation on a fixed mesh: the pair table of
 * transitions and the premium coefficients at every node are computed once.
 */
class FreeBoundaryProblem {
public:
    /// Requires a unit-volatility model whose horizon equals mesh.horizon().
    FreeBoundaryProblem(const OUModel& model, Mesh mesh, QuadratureSpec spec = {});

    const OUModel& model() const noexcept { return model_; }
    const Mesh& mesh() const noexcept { return mesh_; }
    const PairTable& pairs() const noexcept { return pairs_; }

    /// min{A, gamma(T)}.
    double terminal_value() const noexcept { return terminal_; }

    /// min{A, min_i gamma(t_i)} - 20 max_i sqrt(gamma^2(0, t_i)).
    double default_clamp_low() const;

    /// Right-hand side of the discretized equation at node i < N, with x in
    /// place of b(t_i) and values[j] for b(t_j), j > i.
    double rhs(std::size_t i, double x, std::span<const double> values) const;

private:
    OUModel model_;
    Mesh mesh_;
    PairTable pairs_;
    double terminal_;
    std::vector<double> premium_intercept_;
    std::vector<double> premium_slope_;
};

/// One sweep: every node i < N is updated from `prev` alone (a pure Picard
/// map, not Gauss-Seidel); node N stays pinned. Values below clamp_low are
/// raised to it and reported through *hit_clamp.
Boundary picard_step(const FreeBoundaryProblem& problem, const Boundary& prev, double clamp_low,
                     bool* hit_clamp = nullptr);

/// Convenience overload on prev's mesh with the default clamp.
Boundary picard_step(const OUModel& model, const Boundary& prev);

/// sum_i (b_new(t_i) - b_prev(t_i))^2. Throws std::invalid_argument when the
/// meshes differ.
double error_dk(const Boundary& b_new, const Boundary& b_prev);

/// Iterates from the constant boundary b(T) until d_k < delta or max_iter.
/// Non-convergence is reported, not thrown.
SolverReport picard_solve(const FreeBoundaryProblem& problem, const SolverConfig& cfg);
SolverReport picard_solve(const OUModel& model, const SolverConfig& cfg);

/// Solves node N-1 down to 0, each as a scalar equation in b(t_i) with
/// later nodes fixed, by bracketed root finding to 1e-12.
SolverReport backward_induction_solve(const FreeBoundaryProblem& problem,
                                      const SolverConfig& cfg);
SolverReport backward_induction_solve(const OUModel& model, const SolverConfig& cfg);

/// Call boundary 2A - b_put(t).
Boundary put_call_transform(const Boundary& b_put, double strike);

/// Result of solving a model with arbitrary volatility.
struct Solution {
    TimeChangedModel time_change;
    /// Report on the unit-volatility clock.
    SolverReport inner;
    /// Boundary in original time, nodes h(s_i).
    Boundary boundary;
};

/// Applies the volatility time change when sigma != 1, solves on a log mesh
/// of the transformed horizon and pulls the boundary back.
Solution solve(const OUModel& model, const SolverConfig& cfg,
               SolverMethod method = SolverMethod::picard);

}  // namespace osbou
