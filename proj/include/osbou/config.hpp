#pragma once

/**
 * @file config.hpp
 * @brief JSON scenario configs for the command-line front end.
 *
 *   {
 *     "model": {
 *       "theta": {"kind": "constant", "params": [1]},
 *       "alpha": {"kind": "sinusoid", "params": [1, 1, 0, 0]},
 *       "sigma": 1,
 *       "T": 1, "lambda": 1, "A": 0
 *     },
 *     "solver": {"N": 200, "delta": 1e-3, "max_iter": 500, "method": "picard"},
 *     "mc": {"n_paths": 100000, "n_steps": 1000, "seed": 20240611,
 *            "points": [[0, 0], [0, 0.5]]},
 *     "value_grid": {"t": [0, 0.5], "x": [-0.5, 0, 0.5]},
 *     "outputs": "out"
 *   }
 *
 * A bare number is shorthand for {"kind": "constant", "params": [c]}. Every
 * section except "model" is optional.
 */

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "osbou/mc.hpp"
#include "osbou/ou_model.hpp"
#include "osbou/solver.hpp"

namespace osbou {

/// Config problem located at a 1-based line of the source text (0 when
/// the location is unknown).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct ScenarioConfig {
    ParamFn theta = constant(1.0);
    ParamFn alpha = constant(0.0);
    ParamFn sigma = constant(1.0);
    double horizon = 1.0;
    double lambda = 1.0;
    double strike = 0.0;

    SolverConfig solver;
    SolverMethod method = SolverMethod::picard;

    std::optional<MCConfig> mc;
    /// (t, x) points checked by mc-check.
    std::vector<std::array<double, 2>> mc_points;

    std::vector<double> value_t;
    std::vector<double> value_x;

    std::string outputs = "out";

    /// Throws std::invalid_argument when the coefficients do not make a
    /// valid model.
    OUModel model() const;
};

/// Parses and validates; throws ConfigError.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

/// Pretty-printed JSON that parse_config reads back to the same config.
std::string dump_config(const ScenarioConfig& cfg);

/// mc_points, or (0, A), (0, A + 0.5), (T / 2, A + 0.25) when empty.
std::vector<std::array<double, 2>> mc_points_or_default(const ScenarioConfig& cfg);
/// value_t / value_x, or a default grid around the strike when empty.
std::vector<double> value_times_or_default(const ScenarioConfig& cfg);
std::vector<double> value_prices_or_default(const ScenarioConfig& cfg);

}  // namespace osbou
