#pragma once

/**
 * @file presets.hpp
 * @brief Built-in scenario families and the sweep runner behind `scenario`.
 *
 *   fig1a      theta = 1, sigma = 1, alpha in {smooth step up, smooth step down, bump}
 *   fig1b      sigma = 1, alpha = e^{t/2}, theta in {1/2, 1, 5, smooth step 1 -> 10}
 *   fig1c      theta = 1, alpha = sin(2 pi t), sigma in {1, two volatility spikes}
 *   fig2a-bb   theta = sum_{i<=n} t^i for n in {2, 5, 8, 12}, alpha = 0, lambda = 0
 *   fig2b-oub  theta = capped 5 coth(5 (1 - t)) for several caps, alpha = 2 sech(5 (1 - t)),
 *              lambda = 0
 *   fig3       theta = 1, alpha = 0, lambda in {0, 0.5, 1, 2, 5}, N in {5, 20, 200}
 *
 * fig1* use T = 1, lambda = 1, A = 0; fig2* use T = 1, A = 0.
 *
 * A run writes, for each member with label L,
 *
 *   boundary_L.csv, errors_L.csv, alpha_L.csv
 *
 * and a manifest.json listing the members in order:
 *
 *   {"figure": "fig3",
 *    "reference": {...} | null,
 *    "members": [{"label", "panel", "legend", "boundary", "errors", "alpha",
 *                 "converged", "iterations", "hit_clamp", "config": {...}}]}
 *
 * File names in the manifest are relative to its directory. The fig2a-bb
 * reference is {"kind": "brownian_bridge", "B": 0.8399, "A": 0, "sigma": 1,
 * "T": 1}, the curve A - B sigma sqrt(T - t).
 */

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "osbou/config.hpp"
#include "osbou/solver.hpp"

namespace osbou {

inline constexpr double kBrownianBridgeConstant = 0.8399;

struct PresetMember {
    std::string label;
    /// Subfigure the member belongs to (fig3: one panel per N).
    std::string panel;
    std::string legend;
    ScenarioConfig config;
};

struct Preset {
    std::string name;
    std::vector<PresetMember> members;
};

const std::vector<std::string>& preset_names();

/// Throws std::invalid_argument for an unknown name.
Preset make_preset(std::string_view name);

struct MemberRun {
    std::string label;
    OUModel model;
    Solution solution;
};

/// Solves every member in order, writes the CSVs and manifest.json into
/// `out_dir` (created if missing). `adjust` is applied to each member
/// config first (command-line overrides).
std::vector<MemberRun> run_preset(const Preset& preset, const std::string& out_dir,
                                  const std::function<void(ScenarioConfig&)>& adjust = {});

}  // namespace osbou
