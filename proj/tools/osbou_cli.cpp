// osbou: exercise boundaries and values of American options on a
// time-dependent Ornstein-Uhlenbeck process.
//
//   osbou boundary  --config run.json [--solver backward] [--N 400]
//   osbou value     --preset fig3 --out out/
//   osbou mc-check  --preset fig3 --paths 100000 --steps 1000
//   osbou scenario  fig2a-bb --out out/fig2a
//
// Exit codes: 0 success, 1 bad config / arguments, 2 solver did not
// converge, 3 an mc-check criterion failed.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "osbou/config.hpp"
#include "osbou/csv.hpp"
#include "osbou/mc.hpp"
#include "osbou/presets.hpp"
#include "osbou/solver.hpp"
#include "osbou/valuation.hpp"

namespace {

using namespace osbou;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitCheckFailed = 3;

struct Overrides {
    std::string config_path;
    std::string preset;
    std::string member;
    std::string out;
    std::string solver;
    std::optional<std::size_t> intervals;
    std::optional<double> delta;
    std::optional<std::size_t> max_iter;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<std::size_t> steps;
    double perturb = 0.0;
    bool dump = false;

    void apply(ScenarioConfig& cfg) const {
        if (!out.empty()) cfg.outputs = out;
        if (solver == "picard") cfg.method = SolverMethod::picard;
        if (solver == "backward") cfg.method = SolverMethod::backward;
        if (intervals) cfg.solver.intervals = *intervals;
        if (delta) cfg.solver.delta = *delta;
        if (max_iter) cfg.solver.max_iter = *max_iter;
        if (seed || paths || steps) {
            MCConfig mc = cfg.mc.value_or(MCConfig{});
            if (seed) mc.seed = *seed;
            if (paths) mc.n_paths = *paths;
            if (steps) mc.n_steps = *steps;
            cfg.mc = mc;
        }
        cfg.solver.validate();
        if (cfg.mc) cfg.mc->validate();
    }
};

void add_common(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "JSON scenario config");
    cmd->add_option("--preset", o.preset, "take the model from a built-in preset");
    cmd->add_option("--member", o.member, "preset member label (default: first; fig3: N_200_lambda_1)");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--solver", o.solver, "picard or backward")
        ->check(CLI::IsMember({"picard", "backward"}));
    cmd->add_option("--N", o.intervals, "mesh intervals");
    cmd->add_option("--delta", o.delta, "Picard stopping tolerance on d_k");
    cmd->add_option("--max-iter", o.max_iter, "Picard iteration cap");
    cmd->add_option("--seed", o.seed, "Monte Carlo seed");
    cmd->add_option("--paths", o.paths, "Monte Carlo paths");
    cmd->add_option("--steps", o.steps, "Monte Carlo time steps");
    cmd->add_flag("--dump-config", o.dump, "print the effective config and exit");
}

ScenarioConfig resolve(const Overrides& o) {
    ScenarioConfig cfg;
    if (!o.config_path.empty() && !o.preset.empty()) {
        throw ConfigError(0, "give either --config or --preset, not both");
    }
    if (!o.config_path.empty()) {
        cfg = load_config(o.config_path);
    } else if (!o.preset.empty()) {
        const Preset p = make_preset(o.preset);
        std::string label = o.member;
        if (label.empty()) label = p.name == "fig3" ? "N_200_lambda_1" : p.members.front().label;
        bool found = false;
        for (const auto& m : p.members) {
            if (m.label == label) {
                cfg = m.config;
                found = true;
            }
        }
        if (!found) throw ConfigError(0, "preset " + p.name + " has no member " + label);
    } else {
        throw ConfigError(0, "one of --config or --preset is required");
    }
    o.apply(cfg);
    return cfg;
}

std::string out_file(const ScenarioConfig& cfg, const char* name) {
    std::filesystem::create_directories(cfg.outputs);
    return (std::filesystem::path(cfg.outputs) / name).string();
}

bool solved(const Solution& s) { return s.inner.converged && !s.inner.failed_node; }

void report_solve(const Solution& s) {
    std::printf("solver: %s after %zu iteration(s)%s\n", solved(s) ? "converged" : "NOT converged",
                s.inner.iterations, s.inner.hit_clamp ? " (hit lower clamp)" : "");
    if (s.inner.failed_node) std::printf("solver: scalar solve failed at node %zu\n", *s.inner.failed_node);
    if (!s.inner.errors.empty()) std::printf("solver: last d_k = %.6e\n", s.inner.errors.back());
}

int cmd_boundary(const ScenarioConfig& cfg) {
    const OUModel model = cfg.model();
    const Solution s = solve(model, cfg.solver, cfg.method);
    write_csv(out_file(cfg, "boundary.csv"), boundary_table(model, s.boundary));
    write_csv(out_file(cfg, "errors.csv"), errors_table(s.inner.errors));
    report_solve(s);
    std::printf("wrote %s/boundary.csv, errors.csv\n", cfg.outputs.c_str());
    return solved(s) ? kExitOk : kExitNotConverged;
}

int cmd_value(const ScenarioConfig& cfg) {
    const OUModel model = cfg.model();
    const Solution s = solve(model, cfg.solver, cfg.method);
    const ValueFunction vf(s.time_change.inner, s.inner.boundary);
    std::vector<ValuePoint> points;
    for (double t : value_times_or_default(cfg)) {
        for (double x : value_prices_or_default(cfg)) {
            ValuePoint p = vf(s.time_change.to_inner_time(t), x);
            p.t = t;
            points.push_back(p);
        }
    }
    write_csv(out_file(cfg, "value.csv"), value_table(points));
    report_solve(s);
    std::printf("wrote %s/value.csv (%zu rows)\n", cfg.outputs.c_str(), points.size());
    return solved(s) ? kExitOk : kExitNotConverged;
}

int cmd_mc_check(const ScenarioConfig& cfg, double perturb) {
    const OUModel model = cfg.model();
    const MCConfig mc = cfg.mc.value_or(MCConfig{});
    const Solution s = solve(model, cfg.solver, cfg.method);
    report_solve(s);
    const OUModel& inner = s.time_change.inner;
    const ValueFunction vf(inner, s.inner.boundary);

    std::vector<double> shifted = s.inner.boundary.values();
    for (double& v : shifted) v += perturb;
    const Boundary strategy_boundary(s.inner.boundary.mesh(), shifted);

    CsvTable table{{"t", "x", "V", "strategy", "strategy_se", "lsmc", "lsmc_se", "european",
                    "european_mc", "european_mc_se", "value_pass", "lsmc_dominance_pass",
                    "european_dominance_pass", "european_pass"},
                   {}};
    bool all_pass = true;
    const auto line = [&](bool ok, const char* what, double t, double x, double lhs, double rhs,
                          double tol) {
        all_pass = all_pass && ok;
        std::printf("%s %-20s t=%-6g x=%-6g %.6f vs %.6f (tol %.2e)\n", ok ? "PASS" : "FAIL", what,
                    t, x, lhs, rhs, tol);
        return ok;
    };
    for (const auto& [t, x] : mc_points_or_default(cfg)) {
        const double s0 = s.time_change.to_inner_time(t);
        const ValuePoint vp = vf(s0, x);
        const MCResult strat = boundary_strategy_value(inner, strategy_boundary, s0, x, mc);
        const MCResult ls = lsmc_value(inner, s0, x, mc);
        const MCResult eu = european_mc(inner, s0, x, mc);

        const double tol_value = 3.0 * strat.std_error;
        const double tol_ls = 3.0 * std::hypot(strat.std_error, ls.std_error);
        const double tol_eu_dom = 3.0 * std::hypot(strat.std_error, eu.std_error);
        const double tol_eu = 3.0 * eu.std_error;
        const bool ok_value =
            line(std::abs(vp.value - strat.mean) <= tol_value, "value", t, x, vp.value, strat.mean,
                 tol_value);
        const bool ok_ls = line(strat.mean >= ls.mean - tol_ls, "dominance-lsmc", t, x, strat.mean,
                                ls.mean, tol_ls);
        const bool ok_eu_dom = line(strat.mean >= eu.mean - tol_eu_dom, "dominance-european", t, x,
                                    strat.mean, eu.mean, tol_eu_dom);
        const bool ok_eu = line(std::abs(vp.european - eu.mean) <= tol_eu, "european", t, x,
                                vp.european, eu.mean, tol_eu);
        table.rows.push_back({t, x, vp.value, strat.mean, strat.std_error, ls.mean, ls.std_error,
                              vp.european, eu.mean, eu.std_error, ok_value ? 1.0 : 0.0,
                              ok_ls ? 1.0 : 0.0, ok_eu_dom ? 1.0 : 0.0, ok_eu ? 1.0 : 0.0});
    }
    write_csv(out_file(cfg, "mc.csv"), table);
    std::printf("wrote %s/mc.csv\n", cfg.outputs.c_str());
    if (!solved(s)) return kExitNotConverged;
    return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_scenario(const std::string& name, const Overrides& o) {
    const Preset preset = make_preset(name);
    const std::string out = o.out.empty() ? "out/" + name : o.out;
    if (o.dump) {
        std::filesystem::create_directories(out);
        for (const auto& m : preset.members) {
            if (!o.member.empty() && m.label != o.member) continue;
            ScenarioConfig cfg = m.config;
            o.apply(cfg);
            cfg.outputs = out;
            if (!o.member.empty()) {
                std::cout << dump_config(cfg);
                return kExitOk;
            }
            const auto path = std::filesystem::path(out) / ("config_" + m.label + ".json");
            std::ofstream(path, std::ios::binary) << dump_config(cfg);
            std::printf("wrote %s\n", path.string().c_str());
        }
        return kExitOk;
    }
    const auto runs = run_preset(preset, out, [&](ScenarioConfig& cfg) { o.apply(cfg); });
    bool all = true;
    for (const auto& r : runs) {
        const bool ok = solved(r.solution);
        all = all && ok;
        std::printf("%-24s %s, %zu iteration(s)%s\n", r.label.c_str(),
                    ok ? "converged" : "NOT converged", r.solution.inner.iterations,
                    r.solution.inner.hit_clamp ? ", hit clamp" : "");
    }
    std::printf("wrote %s/manifest.json\n", out.c_str());
    return all ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal exercise boundaries for American options on a time-dependent OU process"};
    app.require_subcommand(1);

    Overrides o;
    auto* boundary = app.add_subcommand("boundary", "solve the free-boundary equation");
    auto* value = app.add_subcommand("value", "evaluate the value function on a grid");
    auto* mc = app.add_subcommand("mc-check", "compare closed-form values with Monte Carlo");
    auto* scenario = app.add_subcommand("scenario", "run a built-in preset sweep");
    for (auto* cmd : {boundary, value, mc}) add_common(cmd, o);
    mc->add_option("--perturb", o.perturb, "shift the boundary used by the MC strategy");

    std::string preset_name;
    scenario->add_option("name", preset_name, "preset name")->required();
    scenario->add_option("--out", o.out, "output directory (default out/<name>)");
    scenario->add_option("--member", o.member, "with --dump-config: print one member's config");
    scenario->add_option("--solver", o.solver, "picard or backward")
        ->check(CLI::IsMember({"picard", "backward"}));
    scenario->add_option("--N", o.intervals, "mesh intervals for every member");
    scenario->add_option("--delta", o.delta, "Picard stopping tolerance on d_k");
    scenario->add_option("--max-iter", o.max_iter, "Picard iteration cap");
    scenario->add_flag("--dump-config", o.dump, "write the member configs instead of running");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (scenario->parsed()) return cmd_scenario(preset_name, o);
        const ScenarioConfig cfg = resolve(o);
        if (o.dump) {
            std::cout << dump_config(cfg);
            return kExitOk;
        }
        if (boundary->parsed()) return cmd_boundary(cfg);
        if (value->parsed()) return cmd_value(cfg);
        return cmd_mc_check(cfg, o.perturb);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
}
