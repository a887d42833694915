#include "osbou/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace osbou {

namespace {

using json = nlohmann::ordered_json;
using Path = std::initializer_list<std::string_view>;

std::size_t line_at(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

std::string join(Path path) {
    std::string out;
    for (auto key : path) {
        if (!out.empty()) out += '.';
        out += key;
    }
    return out;
}

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    /// Line of the last key of `path`, found by scanning for each quoted
    /// key in turn; 0 if the first key is absent.
    std::size_t locate(Path path) const {
        std::size_t pos = 0;
        std::size_t line = 0;
        for (auto key : path) {
            const std::string quoted = "\"" + std::string(key) + "\"";
            const std::size_t hit = text_.find(quoted, pos);
            if (hit == std::string_view::npos) break;
            pos = hit + quoted.size();
            line = line_at(text_, hit);
        }
        return line;
    }

    [[noreturn]] void fail(Path path, const std::string& message) const {
        const std::size_t line = locate(path);
        std::ostringstream os;
        if (line > 0) os << "line " << line << ": ";
        os << join(path) << ": " << message;
        throw ConfigError(line, os.str());
    }

    double number(const json& j, Path path) const {
        if (!j.is_number()) fail(path, "expected a number");
        return j.get<double>();
    }

    std::size_t count(const json& j, Path path) const {
        if (!j.is_number_integer() && !j.is_number_unsigned()) fail(path, "expected an integer");
        const auto v = j.get<long long>();
        if (v < 0) fail(path, "expected a non-negative integer");
        return static_cast<std::size_t>(v);
    }

    std::vector<double> numbers(const json& j, Path path) const {
        if (!j.is_array()) fail(path, "expected an array of numbers");
        std::vector<double> out;
        for (const auto& v : j) out.push_back(number(v, path));
        return out;
    }

    ParamFn param(const json& j, Path path) const {
        if (j.is_number()) return constant(j.get<double>());
        if (!j.is_object()) fail(path, "expected a number or {\"kind\", \"params\"}");
        reject_unknown(j, path, {"kind", "params"});
        if (!j.contains("kind") || !j["kind"].is_string()) fail(path, "missing string \"kind\"");
        const std::string kind = j["kind"].get<std::string>();
        std::vector<double> params;
        if (j.contains("params")) params = numbers(j["params"], path);
        try {
            return make_param_fn(kind, params);
        } catch (const std::invalid_argument& e) {
            fail(path, e.what());
        }
    }

    void reject_unknown(const json& j, Path path, std::initializer_list<std::string_view> known) const {
        for (const auto& [key, value] : j.items()) {
            if (std::find(known.begin(), known.end(), key) == known.end()) {
                const std::size_t line = locate_child(path, key);
                std::ostringstream os;
                if (line > 0) os << "line " << line << ": ";
                os << (path.size() ? join(path) + ": " : std::string()) << "unknown key \"" << key
                   << "\"";
                throw ConfigError(line, os.str());
            }
        }
    }

private:
    std::string_view text_;

    std::size_t locate_child(Path path, const std::string& key) const {
        std::size_t pos = 0;
        for (auto k : path) {
            const std::string quoted = "\"" + std::string(k) + "\"";
            const std::size_t hit = text_.find(quoted, pos);
            if (hit == std::string_view::npos) break;
            pos = hit + quoted.size();
        }
        const std::size_t hit = text_.find("\"" + key + "\"", pos);
        return hit == std::string_view::npos ? 0 : line_at(text_, hit);
    }
};

void parse_model(const Reader& r, const json& j, ScenarioConfig& cfg) {
    if (!j.is_object()) r.fail({"model"}, "expected an object");
    r.reject_unknown(j, {"model"}, {"theta", "alpha", "sigma", "T", "lambda", "A"});
    if (j.contains("T")) cfg.horizon = r.number(j["T"], {"model", "T"});
    if (!(cfg.horizon > 0.0)) r.fail({"model", "T"}, "horizon must be > 0");
    if (j.contains("lambda")) cfg.lambda = r.number(j["lambda"], {"model", "lambda"});
    if (!(cfg.lambda >= 0.0)) r.fail({"model", "lambda"}, "discount rate must be >= 0");
    if (j.contains("A")) cfg.strike = r.number(j["A"], {"model", "A"});

    if (j.contains("theta")) cfg.theta = r.param(j["theta"], {"model", "theta"});
    if (j.contains("alpha")) cfg.alpha = r.param(j["alpha"], {"model", "alpha"});
    if (j.contains("sigma")) cfg.sigma = r.param(j["sigma"], {"model", "sigma"});
    try {
        require_positive(cfg.theta, cfg.horizon, "theta");
    } catch (const std::invalid_argument& e) {
        r.fail({"model", "theta"}, e.what());
    }
    try {
        require_positive(cfg.sigma, cfg.horizon, "sigma");
    } catch (const std::invalid_argument& e) {
        r.fail({"model", "sigma"}, e.what());
    }
    try {
        require_finite(cfg.alpha, cfg.horizon, "alpha");
    } catch (const std::invalid_argument& e) {
        r.fail({"model", "alpha"}, e.what());
    }
}

void parse_solver(const Reader& r, const json& j, ScenarioConfig& cfg) {
    if (!j.is_object()) r.fail({"solver"}, "expected an object");
    r.reject_unknown(j, {"solver"}, {"N", "delta", "max_iter", "clamp_low", "method"});
    SolverConfig& s = cfg.solver;
    if (j.contains("N")) s.intervals = r.count(j["N"], {"solver", "N"});
    if (j.contains("delta")) s.delta = r.number(j["delta"], {"solver", "delta"});
    if (j.contains("max_iter")) s.max_iter = r.count(j["max_iter"], {"solver", "max_iter"});
    if (j.contains("clamp_low") && !j["clamp_low"].is_null()) {
        s.clamp_low = r.number(j["clamp_low"], {"solver", "clamp_low"});
    }
    if (j.contains("method")) {
        const json& m = j["method"];
        if (m == "picard") {
            cfg.method = SolverMethod::picard;
        } else if (m == "backward") {
            cfg.method = SolverMethod::backward;
        } else {
            r.fail({"solver", "method"}, "expected \"picard\" or \"backward\"");
        }
    }
    if (s.intervals < 2) r.fail({"solver", "N"}, "N must be >= 2");
    if (!(s.delta > 0.0)) r.fail({"solver", "delta"}, "delta must be > 0");
    if (s.max_iter < 1) r.fail({"solver", "max_iter"}, "max_iter must be >= 1");
}

void parse_mc(const Reader& r, const json& j, ScenarioConfig& cfg) {
    if (!j.is_object()) r.fail({"mc"}, "expected an object");
    r.reject_unknown(j, {"mc"}, {"n_paths", "n_steps", "seed", "points"});
    MCConfig mc;
    if (j.contains("n_paths")) mc.n_paths = r.count(j["n_paths"], {"mc", "n_paths"});
    if (j.contains("n_steps")) mc.n_steps = r.count(j["n_steps"], {"mc", "n_steps"});
    if (j.contains("seed")) mc.seed = r.count(j["seed"], {"mc", "seed"});
    if (mc.n_paths < 1) r.fail({"mc", "n_paths"}, "n_paths must be >= 1");
    if (mc.n_steps < 1) r.fail({"mc", "n_steps"}, "n_steps must be >= 1");
    if (j.contains("points")) {
        const json& pts = j["points"];
        if (!pts.is_array()) r.fail({"mc", "points"}, "expected an array of [t, x] pairs");
        for (const auto& p : pts) {
            const std::vector<double> tx = r.numbers(p, {"mc", "points"});
            if (tx.size() != 2) r.fail({"mc", "points"}, "each point must be [t, x]");
            if (!(tx[0] >= 0.0 && tx[0] < cfg.horizon)) {
                r.fail({"mc", "points"}, "point time must lie in [0, T)");
            }
            cfg.mc_points.push_back({tx[0], tx[1]});
        }
    }
    cfg.mc = mc;
}

void parse_grid(const Reader& r, const json& j, ScenarioConfig& cfg) {
    if (!j.is_object()) r.fail({"value_grid"}, "expected an object");
    r.reject_unknown(j, {"value_grid"}, {"t", "x"});
    if (j.contains("t")) cfg.value_t = r.numbers(j["t"], {"value_grid", "t"});
    if (j.contains("x")) cfg.value_x = r.numbers(j["x"], {"value_grid", "x"});
    for (double t : cfg.value_t) {
        if (!(t >= 0.0 && t <= cfg.horizon)) r.fail({"value_grid", "t"}, "times must lie in [0, T]");
    }
}

json param_json(const ParamFn& f) {
    json j;
    j["kind"] = std::string(f.kind());
    j["params"] = serialize_params(f);
    return j;
}

}  // namespace

ConfigError::ConfigError(std::size_t line, const std::string& what)
    : std::runtime_error(what), line_(line) {}

OUModel ScenarioConfig::model() const {
    return OUModel(theta, alpha, sigma, horizon, lambda, strike);
}

ScenarioConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t line = line_at(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError(line, "line " + std::to_string(line) + ": malformed JSON: " + e.what());
    }
    const Reader r(text);
    if (!root.is_object()) throw ConfigError(1, "line 1: config must be a JSON object");
    r.reject_unknown(root, {}, {"model", "solver", "mc", "value_grid", "outputs"});
    if (!root.contains("model")) throw ConfigError(0, "config: missing \"model\" section");

    ScenarioConfig cfg;
    parse_model(r, root["model"], cfg);
    if (root.contains("solver")) parse_solver(r, root["solver"], cfg);
    if (root.contains("mc")) parse_mc(r, root["mc"], cfg);
    if (root.contains("value_grid")) parse_grid(r, root["value_grid"], cfg);
    if (root.contains("outputs")) {
        if (!root["outputs"].is_string()) r.fail({"outputs"}, "expected a directory path");
        cfg.outputs = root["outputs"].get<std::string>();
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, path + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(e.line(), path + ": " + e.what());
    }
}

std::string dump_config(const ScenarioConfig& cfg) {
    json root;
    json& model = root["model"];
    model["theta"] = param_json(cfg.theta);
    model["alpha"] = param_json(cfg.alpha);
    model["sigma"] = param_json(cfg.sigma);
    model["T"] = cfg.horizon;
    model["lambda"] = cfg.lambda;
    model["A"] = cfg.strike;

    json& solver = root["solver"];
    solver["N"] = cfg.solver.intervals;
    solver["delta"] = cfg.solver.delta;
    solver["max_iter"] = cfg.solver.max_iter;
    if (cfg.solver.clamp_low) solver["clamp_low"] = *cfg.solver.clamp_low;
    solver["method"] = cfg.method == SolverMethod::picard ? "picard" : "backward";

    if (cfg.mc) {
        json& mc = root["mc"];
        mc["n_paths"] = cfg.mc->n_paths;
        mc["n_steps"] = cfg.mc->n_steps;
        mc["seed"] = cfg.mc->seed;
        if (!cfg.mc_points.empty()) {
            mc["points"] = json::array();
            for (const auto& p : cfg.mc_points) mc["points"].push_back({p[0], p[1]});
        }
    }
    if (!cfg.value_t.empty() || !cfg.value_x.empty()) {
        json& grid = root["value_grid"];
        if (!cfg.value_t.empty()) grid["t"] = cfg.value_t;
        if (!cfg.value_x.empty()) grid["x"] = cfg.value_x;
    }
    root["outputs"] = cfg.outputs;
    return root.dump(2) + "\n";
}

std::vector<std::array<double, 2>> mc_points_or_default(const ScenarioConfig& cfg) {
    if (!cfg.mc_points.empty()) return cfg.mc_points;
    const double a = cfg.strike;
    return {{0.0, a}, {0.0, a + 0.5}, {0.5 * cfg.horizon, a + 0.25}};
}

std::vector<double> value_times_or_default(const ScenarioConfig& cfg) {
    if (!cfg.value_t.empty()) return cfg.value_t;
    std::vector<double> t;
    for (int i = 0; i <= 4; ++i) t.push_back(cfg.horizon * i / 4.0);
    return t;
}

std::vector<double> value_prices_or_default(const ScenarioConfig& cfg) {
    if (!cfg.value_x.empty()) return cfg.value_x;
    std::vector<double> x;
    for (int i = -8; i <= 4; ++i) x.push_back(cfg.strike + 0.125 * i);
    return x;
}

}  // namespace osbou
