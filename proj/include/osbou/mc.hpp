#pragma once

/**
 * @file mc.hpp
 * @brief Monte Carlo checks for the boundary and value formula.
 *
 * Paths use the exact Gaussian transition of the OU process on an
 * equispaced grid of [t0, T], so the only discretization left is that
 * stopping is checked at grid times. Normals come from a counter-based
 * generator keyed by (seed, stream, path, step): any thread schedule gives
 * the same numbers, and payoffs are reduced in path order.
 */

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "osbou/mesh.hpp"
#include "osbou/ou_model.hpp"

namespace osbou {

struct MCConfig {
    std::size_t n_paths = 100000;
    std::size_t n_steps = 1000;
    std::uint64_t seed = 20240611;

    void validate() const;
};

struct MCResult {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
};

enum class OptionKind { put, call };

/// Standard normal draw for counter (seed, stream, path, step).
double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t path,
                      std::uint64_t step);

/// Mean and standard error (sample std / sqrt(n)) with compensated summation.
MCResult summarize(std::span<const double> samples);

/// Materialized paths, row-major: values[p * (n_steps + 1) + k].
struct PathEnsemble {
    std::vector<double> times;
    std::vector<double> values;
    std::size_t n_paths = 0;

    double at(std::size_t path, std::size_t step) const {
        return values[path * times.size() + step];
    }
};

/// Requires a unit-volatility model and t0 < T.
PathEnsemble simulate_paths(const OUModel& m, double t0, double x0, const MCConfig& cfg);

/// Follows the boundary: a put stops the first grid time with X <= b(s), a
/// call (kind == call, b already reflected) the first time X >= b(s);
/// otherwise exercise at T. Mean of the discounted payoff.
MCResult boundary_strategy_value(const OUModel& m, const Boundary& b, double t0, double x0,
                                 const MCConfig& cfg, OptionKind kind = OptionKind::put);

/// Least-squares Monte Carlo put value with basis {1, x, x^2, x^3} on
/// in-the-money paths, regression on one stream and the reported
/// (low-biased) estimate from an independent resimulation.
MCResult lsmc_value(const OUModel& m, double t0, double x0, const MCConfig& cfg);

/// e^{-lambda (T - t0)} (A - X_T)^+ from one exact transition per path.
MCResult european_mc(const OUModel& m, double t0, double x0, const MCConfig& cfg);

}  // namespace osbou
