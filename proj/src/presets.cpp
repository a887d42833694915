#include "osbou/presets.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "osbou/csv.hpp"

namespace osbou {

namespace {

using json = nlohmann::ordered_json;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

ScenarioConfig base(double lambda) {
    ScenarioConfig c;
    c.horizon = 1.0;
    c.lambda = lambda;
    c.strike = 0.0;
    return c;
}

PresetMember member(std::string label, std::string panel, std::string legend, ScenarioConfig c) {
    return {std::move(label), std::move(panel), std::move(legend), std::move(c)};
}

Preset fig1a() {
    Preset p{"fig1a", {}};
    const struct {
        const char* label;
        const char* legend;
        ParamFn alpha;
    } rows[] = {
        {"step_up", "alpha = -1 + 2 Phi((t - 0.5)/0.1)", ParamFn(family::NormalCdfStep{-1.0, 2.0, 0.5, 0.1})},
        {"step_down", "alpha = 1 - 2 Phi((t - 0.5)/0.1)", ParamFn(family::NormalCdfStep{1.0, -2.0, 0.5, 0.1})},
        {"bump", "alpha = -1 + 2.5 phi((t - 0.5)/0.1)", ParamFn(family::NormalPdfBump{-1.0, 2.5, 0.5, 0.1})},
    };
    for (const auto& r : rows) {
        ScenarioConfig c = base(1.0);
        c.alpha = r.alpha;
        p.members.push_back(member(r.label, "a", r.legend, c));
    }
    return p;
}

Preset fig1b() {
    Preset p{"fig1b", {}};
    const struct {
        const char* label;
        const char* legend;
        ParamFn theta;
    } rows[] = {
        {"theta_0.5", "theta = 0.5", constant(0.5)},
        {"theta_1", "theta = 1", constant(1.0)},
        {"theta_5", "theta = 5", constant(5.0)},
        {"theta_step", "theta = 1 + 9 Phi((t - 0.5)/0.05)", ParamFn(family::NormalCdfStep{1.0, 9.0, 0.5, 0.05})},
    };
    for (const auto& r : rows) {
        ScenarioConfig c = base(1.0);
        c.theta = r.theta;
        c.alpha = ParamFn(family::Exponential{1.0, 0.5});
        p.members.push_back(member(r.label, "b", r.legend, c));
    }
    return p;
}

Preset fig1c() {
    Preset p{"fig1c", {}};
    const struct {
        const char* label;
        const char* legend;
        ParamFn sigma;
    } rows[] = {
        {"sigma_1", "sigma = 1", constant(1.0)},
        {"sigma_spike", "sigma = 1 + 2.5 phi((t - 0.5)/0.05)", ParamFn(family::NormalPdfBump{1.0, 2.5, 0.5, 0.05})},
        {"sigma_wide", "sigma = 1 + 5 phi((t - 0.5)/0.1)", ParamFn(family::NormalPdfBump{1.0, 5.0, 0.5, 0.1})},
    };
    for (const auto& r : rows) {
        ScenarioConfig c = base(1.0);
        c.alpha = ParamFn(family::Sinusoid{1.0, 1.0, 0.0, 0.0});
        c.sigma = r.sigma;
        p.members.push_back(member(r.label, "c", r.legend, c));
    }
    return p;
}

Preset fig2a() {
    Preset p{"fig2a-bb", {}};
    for (int n : {2, 5, 8, 12}) {
        ScenarioConfig c = base(0.0);
        c.theta = ParamFn(family::Polynomial{std::vector<double>(static_cast<std::size_t>(n) + 1, 1.0)});
        p.members.push_back(member("n_" + std::to_string(n), "a", "n = " + std::to_string(n), c));
    }
    return p;
}

Preset fig2b() {
    Preset p{"fig2b-oub", {}};
    for (double eps : {0.2, 0.1, 0.05, 0.01}) {
        ScenarioConfig c = base(0.0);
        c.theta = ParamFn(family::CothCapped{5.0, 1.0, eps});
        c.alpha = ParamFn(family::Sech{2.0, 5.0, 1.0});
        p.members.push_back(member("eps_" + num(eps), "b", "epsilon = " + num(eps), c));
    }
    return p;
}

Preset fig3() {
    Preset p{"fig3", {}};
    for (std::size_t n : {5, 20, 200}) {
        for (double lambda : {0.0, 0.5, 1.0, 2.0, 5.0}) {
            ScenarioConfig c = base(lambda);
            c.solver.intervals = n;
            p.members.push_back(member("N_" + std::to_string(n) + "_lambda_" + num(lambda),
                                       "N = " + std::to_string(n), "lambda = " + num(lambda), c));
        }
    }
    return p;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig1a",    "fig1b",     "fig1c",
                                                "fig2a-bb", "fig2b-oub", "fig3"};
    return names;
}

Preset make_preset(std::string_view name) {
    if (name == "fig1a") return fig1a();
    if (name == "fig1b") return fig1b();
    if (name == "fig1c") return fig1c();
    if (name == "fig2a-bb") return fig2a();
    if (name == "fig2b-oub") return fig2b();
    if (name == "fig3") return fig3();
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

std::vector<MemberRun> run_preset(const Preset& preset, const std::string& out_dir,
                                  const std::function<void(ScenarioConfig&)>& adjust) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    json manifest;
    manifest["figure"] = preset.name;
    if (preset.name == "fig2a-bb") {
        manifest["reference"] = {{"kind", "brownian_bridge"},
                                 {"B", kBrownianBridgeConstant},
                                 {"A", 0.0},
                                 {"sigma", 1.0},
                                 {"T", 1.0}};
    } else {
        manifest["reference"] = nullptr;
    }
    manifest["members"] = json::array();

    std::vector<MemberRun> runs;
    for (const auto& m : preset.members) {
        ScenarioConfig cfg = m.config;
        if (adjust) adjust(cfg);
        cfg.outputs = out_dir;
        const OUModel model = cfg.model();
        Solution sol = solve(model, cfg.solver, cfg.method);

        const std::string boundary_file = "boundary_" + m.label + ".csv";
        const std::string errors_file = "errors_" + m.label + ".csv";
        const std::string alpha_file = "alpha_" + m.label + ".csv";
        write_csv((dir / boundary_file).string(), boundary_table(model, sol.boundary));
        write_csv((dir / errors_file).string(), errors_table(sol.inner.errors));
        write_csv((dir / alpha_file).string(), alpha_table(model));

        json entry;
        entry["label"] = m.label;
        entry["panel"] = m.panel;
        entry["legend"] = m.legend;
        entry["boundary"] = boundary_file;
        entry["errors"] = errors_file;
        entry["alpha"] = alpha_file;
        entry["converged"] = sol.inner.converged;
        entry["iterations"] = sol.inner.iterations;
        entry["hit_clamp"] = sol.inner.hit_clamp;
        entry["config"] = json::parse(dump_config(cfg));
        manifest["members"].push_back(std::move(entry));

        runs.push_back(MemberRun{m.label, model, std::move(sol)});
    }

    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error((dir / "manifest.json").string() + ": cannot open");
    out << manifest.dump(2) << '\n';
    return runs;
}

}  // namespace osbou
