#include "osbou/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "osbou/kernel.hpp"
#include "osbou/parallel.hpp"

namespace osbou {

namespace {

const OUModel& unit_volatility_only(const OUModel& m) {
    if (!m.unit_volatility()) {
        throw std::invalid_argument("FreeBoundaryProblem: model must be in unit-volatility form");
    }
    return m;
}

}  // namespace

void SolverConfig::validate() const {
    if (intervals < 2) throw std::invalid_argument("SolverConfig: N must be >= 2");
    if (!(delta > 0.0)) throw std::invalid_argument("SolverConfig: delta must be > 0");
    if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
}

FreeBoundaryProblem::FreeBoundaryProblem(const OUModel& model, Mesh mesh, QuadratureSpec spec)
    : model_(unit_volatility_only(model)),
      mesh_(std::move(mesh)),
      pairs_(model_, mesh_, spec),
      terminal_(terminal_boundary(model_)) {
    if (std::abs(mesh_.horizon() - model_.horizon()) > 1e-12 * model_.horizon()) {
        throw std::invalid_argument("FreeBoundaryProblem: mesh must end at the model horizon");
    }
    const std::size_t n = mesh_.size();
    premium_intercept_.resize(n);
    premium_slope_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = mesh_[j];
        const double th = model_.theta()(t);
        const double lam = model_.rate(t);
        premium_intercept_[j] = lam * model_.strike() + th * model_.alpha()(t);
        premium_slope_[j] = lam + th;
    }
}

double FreeBoundaryProblem::default_clamp_low() const {
    double lowest = model_.strike();
    double spread = 0.0;
    for (std::size_t j = 0; j < mesh_.size(); ++j) {
        lowest = std::min(lowest, gamma_bound(model_, mesh_[j]));
        spread = std::max(spread, std::sqrt(pairs_(0, j).variance));
    }
    return lowest - 20.0 * spread;
}

double FreeBoundaryProblem::rhs(std::size_t i, double x, std::span<const double> values) const {
    const std::size_t last = mesh_.intervals();
    const double strike = model_.strike();
    const double lambda = model_.lambda();
    double premium = 0.0;
    for (std::size_t j = i + 1; j <= last; ++j) {
        premium += mesh_.step(j) * k_lambda(pairs_(i, j), lambda, premium_intercept_[j],
                                            premium_slope_[j], x, values[j]);
    }
    return strike - k_lambda(pairs_(i, last), lambda, strike, 1.0, x, strike) - premium;
}

Boundary picard_step(const FreeBoundaryProblem& problem, const Boundary& prev, double clamp_low,
                     bool* hit_clamp) {
    if (prev.mesh() != problem.mesh()) {
        throw std::invalid_argument("picard_step: boundary is not on the problem mesh");
    }
    const std::size_t last = problem.mesh().intervals();
    const std::vector<double>& old = prev.values();
    std::vector<double> next(old.size());
    std::vector<std::uint8_t> clamped(old.size(), 0);
    parallel_for(last, [&](std::size_t i) {
        const double v = problem.rhs(i, old[i], old);
        if (v < clamp_low || std::isnan(v)) {
            next[i] = clamp_low;
            clamped[i] = 1;
        } else {
            next[i] = v;
        }
    });
    next[last] = problem.terminal_value();
    if (hit_clamp) {
        *hit_clamp = std::any_of(clamped.begin(), clamped.end(), [](auto c) { return c != 0; });
    }
    return Boundary(prev.mesh(), std::move(next));
}

Boundary picard_step(const OUModel& model, const Boundary& prev) {
    const FreeBoundaryProblem problem(model, prev.mesh());
    return picard_step(problem, prev, problem.default_clamp_low());
}

double error_dk(const Boundary& b_new, const Boundary& b_prev) {
    if (b_new.mesh() != b_prev.mesh()) {
        throw std::invalid_argument("error_dk: boundaries live on different meshes");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < b_new.values().size(); ++i) {
        const double diff = b_new[i] - b_prev[i];
        d += diff * diff;
    }
    return d;
}

SolverReport picard_solve(const FreeBoundaryProblem& problem, const SolverConfig& cfg) {
    cfg.validate();
    const double clamp_low = cfg.clamp_low.value_or(problem.default_clamp_low());
    Boundary current(problem.mesh(),
                     std::vector<double>(problem.mesh().size(), problem.terminal_value()));
    SolverReport report{current, {}, 0, false, false, std::nullopt};
    for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
        bool clamped = false;
        Boundary next = picard_step(problem, current, clamp_low, &clamped);
        const double d = error_dk(next, current);
        report.errors.push_back(d);
        report.hit_clamp = report.hit_clamp || clamped;
        report.iterations = k;
        current = std::move(next);
        if (d < cfg.delta) {
            report.converged = true;
            break;
        }
    }
    report.boundary = std::move(current);
    return report;
}

SolverReport picard_solve(const OUModel& model, const SolverConfig& cfg) {
    cfg.validate();
    const FreeBoundaryProblem problem(model, make_log_mesh(model.horizon(), cfg.intervals));
    return picard_solve(problem, cfg);
}

SolverReport backward_induction_solve(const FreeBoundaryProblem& problem,
                                      const SolverConfig& cfg) {
    cfg.validate();
    const double clamp_low = cfg.clamp_low.value_or(problem.default_clamp_low());
    const Mesh& mesh = problem.mesh();
    const std::size_t last = mesh.intervals();
    std::vector<double> values(mesh.size(), problem.terminal_value());

    SolverReport report{Boundary(mesh, values), {}, last, true, false, std::nullopt};

    for (std::size_t step = 0; step < last; ++step) {
        const std::size_t i = last - 1 - step;
        const auto residual = [&](double x) { return x - problem.rhs(i, x, values); };

        const double guess = values[i + 1];
        double width = 1e-3 + 0.1 * std::sqrt(problem.pairs()(i, last).variance);
        double lo = guess;
        double hi = guess;
        double g_lo = residual(guess);
        double g_hi = g_lo;
        bool bracketed = (g_lo == 0.0);
        bool at_clamp = false;
        for (int expand = 0; expand < 80 && !bracketed; ++expand) {
            if (g_lo > 0.0) {
                // Root lies below: push lo down.
                hi = lo;
                g_hi = g_lo;
                lo = std::max(lo - width, clamp_low);
                g_lo = residual(lo);
                if (g_lo <= 0.0) {
                    bracketed = true;
                } else if (lo == clamp_low) {
                    at_clamp = true;
                    break;
                }
            } else {
                lo = hi;
                g_lo = g_hi;
                hi = hi + width;
                g_hi = residual(hi);
                bracketed = g_hi >= 0.0;
            }
            width *= 2.0;
        }

        double root = std::numeric_limits<double>::quiet_NaN();
        if (at_clamp) {
            root = clamp_low;
            report.hit_clamp = true;
        } else if (bracketed) {
            if (g_lo == 0.0) {
                root = lo;
            } else if (g_hi == 0.0) {
                root = hi;
            } else {
                std::uintmax_t max_evals = 200;
                const auto [a, b] = boost::math::tools::toms748_solve(
                    residual, lo, hi, g_lo, g_hi,
                    [](double x, double y) { return std::abs(y - x) <= 1e-12; }, max_evals);
                root = 0.5 * (a + b);
                if (!(std::abs(b - a) <= 1e-12)) root = std::numeric_limits<double>::quiet_NaN();
            }
        }
        if (!std::isfinite(root)) {
            report.converged = false;
            report.failed_node = i;
            break;
        }
        values[i] = root;
    }

    report.boundary = Boundary(mesh, values);
    if (report.converged) {
        const Boundary stepped = picard_step(problem, report.boundary, clamp_low);
        report.errors.push_back(error_dk(stepped, report.boundary));
    }
    return report;
}

SolverReport backward_induction_solve(const OUModel& model, const SolverConfig& cfg) {
    cfg.validate();
    const FreeBoundaryProblem problem(model, make_log_mesh(model.horizon(), cfg.intervals));
    return backward_induction_solve(problem, cfg);
}

Boundary put_call_transform(const Boundary& b_put, double strike) {
    std::vector<double> v(b_put.values().size());
    std::transform(b_put.values().begin(), b_put.values().end(), v.begin(),
                   [strike](double b) { return 2.0 * strike - b; });
    return Boundary(b_put.mesh(), std::move(v));
}

Solution solve(const OUModel& model, const SolverConfig& cfg, SolverMethod method) {
    cfg.validate();
    TimeChangedModel tc = to_unit_volatility(model);
    const FreeBoundaryProblem problem(tc.inner, make_log_mesh(tc.inner.horizon(), cfg.intervals));
    SolverReport inner = method == SolverMethod::picard ? picard_solve(problem, cfg)
                                                        : backward_induction_solve(problem, cfg);
    Boundary outer = pull_back(tc, inner.boundary);
    return Solution{std::move(tc), std::move(inner), std::move(outer)};
}

}  // namespace osbou
