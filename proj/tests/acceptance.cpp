// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// line fails. Tolerances and budgets are fixed here, not taken from flags.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "osbou/mc.hpp"
#include "osbou/presets.hpp"
#include "osbou/solver.hpp"
#include "osbou/valuation.hpp"

namespace {

using namespace osbou;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(bool ok, const char* name, const std::string& detail) {
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

OUModel fig3_model() {
    return OUModel(constant(1.0), constant(0.0), constant(1.0), 1.0, 1.0, 0.0);
}

struct PresetRun {
    std::string preset;
    std::string label;
    OUModel model;
    Solution solution;
    double seconds;
};

std::vector<PresetRun> solve_all_presets() {
    std::vector<PresetRun> out;
    for (const auto& name : preset_names()) {
        for (const auto& m : make_preset(name).members) {
            const auto start = Clock::now();
            const OUModel model = m.config.model();
            Solution s = solve(model, m.config.solver, m.config.method);
            out.push_back({name, m.label, model, std::move(s), seconds_since(start)});
        }
    }
    return out;
}

void terminal_pin(const std::vector<PresetRun>& runs) {
    std::size_t bad = 0;
    std::string first;
    for (const auto& r : runs) {
        const double expected = std::min(r.model.strike(), gamma_bound(r.model, r.model.horizon()));
        if (r.solution.boundary.values().back() != expected) {
            if (bad++ == 0) first = r.preset + "/" + r.label;
        }
    }
    report(bad == 0, "terminal_pin",
           fmt("%zu members, %zu mismatches%s%s", runs.size(), bad, bad ? ", first " : "",
               first.c_str()));
}

void bound_compliance(const std::vector<PresetRun>& runs) {
    double worst_gamma = -INFINITY, worst_strike = -INFINITY, slowest = 0.0;
    std::string where;
    for (const auto& r : runs) {
        const Boundary& b = r.solution.boundary;
        double preset_seconds = 0.0;
        for (const auto& q : runs) {
            if (q.preset == r.preset) preset_seconds += q.seconds;
        }
        slowest = std::max(slowest, preset_seconds);
        for (std::size_t i = 0; i + 1 < b.values().size(); ++i) {
            const double t = b.mesh()[i];
            const double over = b[i] - gamma_bound(r.model, t);
            if (over > worst_gamma) {
                worst_gamma = over;
                where = r.preset + "/" + r.label;
            }
            worst_strike = std::max(worst_strike, b[i] - r.model.strike());
        }
    }
    const bool ok = worst_gamma <= 1e-6 && worst_strike < 0.0 && slowest < 10.0;
    report(ok, "bound_compliance",
           fmt("max b - gamma = %.3e (%s, tol 1e-6), max b - A = %.3e (< 0), "
               "slowest preset %.2f s (< 10 s)",
               worst_gamma, where.c_str(), worst_strike, slowest));
}

void convergence() {
    const auto start = Clock::now();
    const SolverReport r = picard_solve(fig3_model(), SolverConfig{});
    const double secs = seconds_since(start);
    bool decreasing = true;
    for (std::size_t k = 2; k < r.errors.size(); ++k) {
        if (!(r.errors[k] < r.errors[k - 1])) decreasing = false;
    }
    const bool ok = r.converged && r.iterations <= 100 && decreasing && secs < 30.0;
    report(ok, "convergence",
           fmt("converged=%d in %zu iterations (<= 100), d_k strictly decreasing for k >= 2: %s, "
               "last d_k = %.3e, %.2f s (< 30 s)",
               r.converged, r.iterations, decreasing ? "yes" : "no", r.errors.back(), secs));
}

double sup_diff(const Boundary& a, const Boundary& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// The discrete equation is nearly flat in b(t_i) near T, so Picard creeps
// toward its fixed point there; the comparison uses a Picard run iterated
// until successive sweeps agree to 1e-12.
void cross_solver() {
    const auto start = Clock::now();
    const OUModel m = fig3_model();
    const FreeBoundaryProblem problem(m, make_log_mesh(1.0, 200));
    SolverConfig tight;
    tight.delta = 1e-12;
    tight.max_iter = 1'000'000;
    const SolverReport backward = backward_induction_solve(problem, tight);
    const SolverReport picard = picard_solve(problem, tight);
    const SolverReport loose = picard_solve(problem, SolverConfig{});
    const double secs = seconds_since(start);
    const double d = sup_diff(picard.boundary, backward.boundary);
    const bool ok = backward.converged && picard.converged && d <= 1e-2 && secs < 120.0;
    report(ok, "cross_solver",
           fmt("sup |picard - backward| = %.4e (tol 1e-2) with picard delta 1e-12 after %zu "
               "iterations; at delta 1e-3 the gap is %.4e; %.2f s (< 120 s)",
               d, picard.iterations, sup_diff(loose.boundary, backward.boundary), secs));
}

struct McPoint {
    double t, x;
};

const McPoint kPoints[] = {{0.0, 0.0}, {0.0, 0.5}, {0.5, 0.25}};

void monte_carlo(const ValueFunction& v) {
    const OUModel& m = v.model();
    const MCConfig cfg;  // 1e5 paths, 1e3 steps

    auto start = Clock::now();
    std::vector<MCResult> strategy;
    bool value_ok = true;
    std::string detail;
    for (const auto& p : kPoints) {
        const MCResult s = boundary_strategy_value(m, v.boundary(), p.t, p.x, cfg);
        strategy.push_back(s);
        const double closed = v(p.t, p.x).value;
        const bool ok = std::abs(closed - s.mean) <= 3.0 * s.std_error;
        value_ok = value_ok && ok;
        detail += fmt("(%g, %g) V = %.6f vs MC %.6f +- %.2e; ", p.t, p.x, closed, s.mean,
                      s.std_error);
    }
    double secs = seconds_since(start);
    report(value_ok && secs < 180.0, "mc_value", detail + fmt("%.1f s (< 180 s)", secs));

    start = Clock::now();
    bool dom_ok = true;
    detail.clear();
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& p = kPoints[k];
        const MCResult l = lsmc_value(m, p.t, p.x, cfg);
        const MCResult e = european_mc(m, p.t, p.x, cfg);
        const MCResult& s = strategy[k];
        const double se_l = std::hypot(s.std_error, l.std_error);
        const double se_e = std::hypot(s.std_error, e.std_error);
        dom_ok = dom_ok && s.mean >= l.mean - 3.0 * se_l && s.mean >= e.mean - 3.0 * se_e;
        detail += fmt("(%g, %g) strategy %.6f, LSMC %.6f, European %.6f; ", p.t, p.x, s.mean,
                      l.mean, e.mean);
    }
    secs = seconds_since(start);
    report(dom_ok && secs < 180.0, "strategy_dominance", detail + fmt("%.1f s (< 180 s)", secs));

    start = Clock::now();
    const MCResult e = european_mc(m, 0.0, 0.0, cfg);
    const double closed = european_term(m, 0.0, 0.0);
    secs = seconds_since(start);
    const bool e_ok = std::abs(closed - e.mean) <= 3.0 * e.std_error &&
                      std::abs(closed - 0.09650) < 5e-6 && secs < 60.0;
    report(e_ok, "european_closed_form",
           fmt("closed %.6f vs MC %.6f +- %.2e (reference 0.09650), %.1f s", closed, e.mean,
               e.std_error, secs));
}

void brownian_bridge() {
    const auto start = Clock::now();
    std::vector<double> dev;
    std::string detail;
    for (const auto& m : make_preset("fig2a-bb").members) {
        const OUModel model = m.config.model();
        const Boundary b = solve(model, m.config.solver).boundary;
        double d = 0.0;
        for (std::size_t i = 0; i < b.values().size(); ++i) {
            const double t = b.mesh()[i];
            if (t > 0.8) break;
            d = std::max(d, std::abs(b[i] + kBrownianBridgeConstant * std::sqrt(1.0 - t)));
        }
        dev.push_back(d);
        detail += m.label + " " + fmt("%.5f", d) + ", ";
    }
    bool decreasing = true;
    for (std::size_t k = 1; k < dev.size(); ++k) decreasing = decreasing && dev[k] < dev[k - 1];
    // Frozen from the calibration run (0.0075291 at n = 12).
    const double threshold = 0.0076;
    const double secs = seconds_since(start);
    report(decreasing && dev.back() < threshold && secs < 60.0 * dev.size(), "bb_benchmark",
           detail + fmt("strictly decreasing: %s, n = 12 below %.4f, %.1f s", decreasing ? "yes" : "no",
                        threshold, secs));
}

void smooth_fit(const ValueFunction& v) {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    for (double t : {0.25, 0.5, 0.75}) {
        const double gap = v.smooth_fit_gap(t);
        ok = ok && std::abs(gap) < 0.05;
        detail += fmt("t = %g gap %.4f; ", t, gap);
    }
    const double secs = seconds_since(start);
    report(ok && secs < 30.0, "smooth_fit", detail + fmt("tol 0.05, %.2f s", secs));
}

void put_call(const ValueFunction& v) {
    const auto start = Clock::now();
    const ScenarioConfig cfg = make_preset("fig1a").members.front().config;
    const OUModel put_model = cfg.model();
    const OUModel call_model = reflect(put_model);
    const double a = put_model.strike();
    const Boundary b_put = solve(put_model, cfg.solver).boundary;
    const Boundary b_call = put_call_transform(solve(reflect(call_model), cfg.solver).boundary, a);
    double worst = 0.0;
    for (std::size_t i = 0; i < b_put.values().size(); ++i) {
        worst = std::max(worst, std::abs(b_call[i] - (2.0 * a - b_put[i])));
    }

    const OUModel& m = v.model();
    const MCResult c = boundary_strategy_value(reflect(m), put_call_transform(v.boundary(), m.strike()),
                                               0.0, 2.0 * m.strike() - 0.0, MCConfig{},
                                               OptionKind::call);
    const double vp = v(0.0, 0.0).value;
    const double secs = seconds_since(start);
    const bool ok = worst <= 1e-10 && std::abs(c.mean - vp) <= 3.0 * c.std_error && secs < 120.0;
    report(ok, "put_call_identity",
           fmt("fig1a step_up max |b_c - (2A - b_p)| = %.3e (tol 1e-10); fig3 call MC at y = 0 "
               "%.6f +- %.2e vs V_p(0, 0) = %.6f; %.1f s",
               worst, c.mean, c.std_error, vp, secs));
}

void time_change() {
    const auto start = Clock::now();
    const OUModel unit(constant(1.0), ParamFn(family::Sinusoid{1.0, 1.0, 0.0, 0.0}), constant(1.0),
                       1.0, 1.0, 0.0);
    const Solution s1 = solve(unit, SolverConfig{});
    const SolverReport direct1 = picard_solve(unit, SolverConfig{});
    const bool identity = s1.boundary.mesh() == direct1.boundary.mesh() &&
                          s1.boundary.values() == direct1.boundary.values();

    const OUModel vol2(constant(1.0), constant(0.0), constant(2.0), 1.0, 1.0, 0.0);
    const Solution s2 = solve(vol2, SolverConfig{});
    const OUModel rescaled(constant(0.25), constant(0.0), constant(1.0), 4.0, 0.25, 0.0);
    const SolverReport direct2 = picard_solve(rescaled, SolverConfig{});
    double worst = 0.0;
    for (std::size_t i = 0; i < direct2.boundary.values().size(); ++i) {
        worst = std::max(worst, std::abs(s2.boundary[i] - direct2.boundary[i]));
        worst = std::max(worst, std::abs(s2.boundary.mesh()[i] - direct2.boundary.mesh()[i] / 4.0));
    }
    const double secs = seconds_since(start);
    report(identity && worst <= 1e-6 && secs < 60.0, "time_change_identity",
           fmt("sigma = 1 identical: %s; sigma = 2 vs direct (theta 0.25, lambda 0.25, T 4) "
               "max diff %.3e (tol 1e-6); %.2f s",
               identity ? "yes" : "no", worst, secs));
}

}  // namespace

int main() {
    const std::vector<PresetRun> runs = solve_all_presets();
    terminal_pin(runs);
    bound_compliance(runs);
    convergence();
    cross_solver();

    const OUModel m = fig3_model();
    const ValueFunction v(m, picard_solve(m, SolverConfig{}).boundary);
    monte_carlo(v);
    brownian_bridge();
    smooth_fit(v);
    put_call(v);
    time_change();

    std::printf("%d of 11 criteria failed\n", failures);
    return failures ? 1 : 0;
}
