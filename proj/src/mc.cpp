#include "osbou/mc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "osbou/parallel.hpp"

namespace osbou {

namespace {

constexpr std::uint64_t kStrategyStream = 0x10;
constexpr std::uint64_t kLsmcTrainStream = 0x20;
constexpr std::uint64_t kLsmcResimStream = 0x21;
constexpr std::uint64_t kEuropeanStream = 0x30;

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Neumaier {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

void require_unit_volatility(const OUModel& m) {
    if (!m.unit_volatility()) {
        throw std::invalid_argument("Monte Carlo needs a unit-volatility model; time-change first");
    }
}

/// Equispaced monitoring grid on [t0, T] with per-step transitions and
/// cumulative discount factors back to t0.
struct PathGrid {
    std::vector<double> times;
    std::vector<Transition> steps;  // steps[k]: times[k-1] -> times[k]
    std::vector<double> discount;   // discount[k]: from t0 to times[k]
    std::vector<Transition> from_start;  // t0 -> times[k]

    PathGrid(const OUModel& m, double t0, std::size_t n_steps) {
        require_unit_volatility(m);
        const double horizon = m.horizon();
        if (!(t0 >= 0.0 && t0 < horizon)) {
            throw std::domain_error("Monte Carlo: t0 must lie in [0, T)");
        }
        const TransitionCalculator calc(m);
        times.resize(n_steps + 1);
        steps.resize(n_steps + 1);
        discount.resize(n_steps + 1);
        from_start.resize(n_steps + 1);
        for (std::size_t k = 0; k <= n_steps; ++k) {
            times[k] = t0 + (horizon - t0) * static_cast<double>(k) / static_cast<double>(n_steps);
        }
        times.back() = horizon;
        discount[0] = 1.0;
        for (std::size_t k = 1; k <= n_steps; ++k) {
            steps[k] = calc(times[k - 1], times[k]);
            from_start[k] = from_start[k - 1].then(steps[k]);
            discount[k] = from_start[k].discount(m.lambda());
        }
    }

    std::size_t n_steps() const { return times.size() - 1; }

    double advance(std::size_t k, double x, double z) const {
        return steps[k].mean(x) + std::sqrt(steps[k].variance) * z;
    }
};

}  // namespace

void MCConfig::validate() const {
    if (n_paths < 1) throw std::invalid_argument("MCConfig: n_paths must be >= 1");
    if (n_steps < 1) throw std::invalid_argument("MCConfig: n_steps must be >= 1");
}

double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t path,
                      std::uint64_t step) {
    std::uint64_t h = mix(seed);
    h = mix(h ^ stream);
    h = mix(h ^ path);
    h = mix(h ^ step);
    const std::uint64_t a = mix(h ^ 0x5bd1e995ULL);
    const std::uint64_t b = mix(h ^ 0x1b873593ULL);
    constexpr double kScale = 0x1.0p-53;
    const double u1 = static_cast<double>((a >> 11) + 1) * kScale;  // (0, 1]
    const double u2 = static_cast<double>(b >> 11) * kScale;        // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

MCResult summarize(std::span<const double> samples) {
    MCResult r;
    r.n_paths = samples.size();
    if (samples.empty()) return r;
    Neumaier s;
    for (double v : samples) s.add(v);
    r.mean = s.total() / static_cast<double>(samples.size());
    if (samples.size() < 2) return r;
    Neumaier ss;
    for (double v : samples) ss.add((v - r.mean) * (v - r.mean));
    const double n = static_cast<double>(samples.size());
    r.std_error = std::sqrt(ss.total() / (n - 1.0)) / std::sqrt(n);
    return r;
}

PathEnsemble simulate_paths(const OUModel& m, double t0, double x0, const MCConfig& cfg) {
    cfg.validate();
    const PathGrid grid(m, t0, cfg.n_steps);
    PathEnsemble out;
    out.times = grid.times;
    out.n_paths = cfg.n_paths;
    const std::size_t width = grid.times.size();
    out.values.resize(cfg.n_paths * width);
    parallel_for(cfg.n_paths, [&](std::size_t p) {
        double* row = &out.values[p * width];
        row[0] = x0;
        for (std::size_t k = 1; k < width; ++k) {
            row[k] = grid.advance(k, row[k - 1], counter_normal(cfg.seed, kStrategyStream, p, k));
        }
    });
    return out;
}

MCResult boundary_strategy_value(const OUModel& m, const Boundary& b, double t0, double x0,
                                 const MCConfig& cfg, OptionKind kind) {
    cfg.validate();
    const PathGrid grid(m, t0, cfg.n_steps);
    const std::size_t n = grid.n_steps();
    const double strike = m.strike();
    std::vector<double> level(n + 1);
    for (std::size_t k = 0; k <= n; ++k) level[k] = b.at(grid.times[k]);

    const auto gain = [&](double x) {
        return kind == OptionKind::put ? std::max(strike - x, 0.0) : std::max(x - strike, 0.0);
    };
    const auto stop = [&](double x, std::size_t k) {
        return kind == OptionKind::put ? x <= level[k] : x >= level[k];
    };

    std::vector<double> payoff(cfg.n_paths);
    parallel_for(cfg.n_paths, [&](std::size_t p) {
        double x = x0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k > 0) x = grid.advance(k, x, counter_normal(cfg.seed, kStrategyStream, p, k));
            if (stop(x, k)) {
                payoff[p] = grid.discount[k] * gain(x);
                return;
            }
        }
        x = grid.advance(n, x, counter_normal(cfg.seed, kStrategyStream, p, n));
        payoff[p] = grid.discount[n] * gain(x);
    });
    return summarize(payoff);
}

MCResult european_mc(const OUModel& m, double t0, double x0, const MCConfig& cfg) {
    cfg.validate();
    require_unit_volatility(m);
    if (!(t0 >= 0.0 && t0 < m.horizon())) {
        throw std::domain_error("european_mc: t0 must lie in [0, T)");
    }
    const Transition tr = transition(m, t0, m.horizon());
    const double mean = tr.mean(x0);
    const double sd = std::sqrt(tr.variance);
    const double disc = tr.discount(m.lambda());
    const double strike = m.strike();
    std::vector<double> payoff(cfg.n_paths);
    parallel_for(cfg.n_paths, [&](std::size_t p) {
        const double x = mean + sd * counter_normal(cfg.seed, kEuropeanStream, p, 0);
        payoff[p] = disc * std::max(strike - x, 0.0);
    });
    return summarize(payoff);
}

MCResult lsmc_value(const OUModel& m, double t0, double x0, const MCConfig& cfg) {
    cfg.validate();
    const PathGrid grid(m, t0, cfg.n_steps);
    const std::size_t n = grid.n_steps();
    const std::size_t paths = cfg.n_paths;
    const double strike = m.strike();
    const double scale = std::sqrt(grid.from_start[n].variance) + 1e-12;
    const auto gain = [strike](double x) { return std::max(strike - x, 0.0); };
    const auto basis = [strike, scale](double x) {
        const double u = (x - strike) / scale;
        return Eigen::Vector4d(1.0, u, u * u, u * u * u);
    };

    // Regression pass. Paths are generated backward from X_T with the
    // Gaussian bridge X_k | X_{k+1}, so only one time slice is stored.
    std::vector<double> x(paths);
    std::vector<double> cash(paths);
    {
        const Transition& total = grid.from_start[n];
        parallel_for(paths, [&](std::size_t p) {
            x[p] = total.mean(x0) +
                   std::sqrt(total.variance) * counter_normal(cfg.seed, kLsmcTrainStream, p, n);
            cash[p] = grid.discount[n] * gain(x[p]);
        });
    }
    std::vector<Eigen::Vector4d> coeffs(n + 1, Eigen::Vector4d::Zero());
    std::vector<char> usable(n + 1, 0);
    for (std::size_t k = n - 1; k >= 1; --k) {
        const Transition& prior = grid.from_start[k];
        const Transition& step = grid.steps[k + 1];
        const double s = step.slope();
        const double prior_mean = prior.mean(x0);
        parallel_for(paths, [&](std::size_t p) {
            const double denom = step.variance + s * s * prior.variance;
            const double mean =
                (step.variance * prior_mean + s * prior.variance * (x[p] - step.offset)) / denom;
            const double var = prior.variance * step.variance / denom;
            x[p] = mean + std::sqrt(var) * counter_normal(cfg.seed, kLsmcTrainStream, p, k);
        });

        Eigen::Matrix4d gram = Eigen::Matrix4d::Zero();
        Eigen::Vector4d rhs = Eigen::Vector4d::Zero();
        std::size_t itm = 0;
        for (std::size_t p = 0; p < paths; ++p) {
            if (gain(x[p]) <= 0.0) continue;
            const Eigen::Vector4d phi = basis(x[p]);
            gram.noalias() += phi * phi.transpose();
            rhs.noalias() += phi * cash[p];
            ++itm;
        }
        if (itm >= 8) {
            const auto qr = gram.colPivHouseholderQr();
            if (qr.rank() == 4) {
                coeffs[k] = qr.solve(rhs);
                usable[k] = 1;
            }
        }
        if (usable[k]) {
            for (std::size_t p = 0; p < paths; ++p) {
                const double g = gain(x[p]);
                if (g <= 0.0) continue;
                const double exercise = grid.discount[k] * g;
                if (exercise >= coeffs[k].dot(basis(x[p]))) cash[p] = exercise;
            }
        }
    }
    const double continuation0 = summarize(cash).mean;
    const bool exercise_now = gain(x0) > 0.0 && gain(x0) >= continuation0;

    // Independent resimulation under the fitted rule.
    std::vector<double> payoff(paths);
    parallel_for(paths, [&](std::size_t p) {
        if (exercise_now) {
            payoff[p] = gain(x0);
            return;
        }
        double xp = x0;
        for (std::size_t k = 1; k <= n; ++k) {
            xp = grid.advance(k, xp, counter_normal(cfg.seed, kLsmcResimStream, p, k));
            const double g = gain(xp);
            if (k == n) {
                payoff[p] = grid.discount[n] * g;
                return;
            }
            if (usable[k] && g > 0.0 && grid.discount[k] * g >= coeffs[k].dot(basis(xp))) {
                payoff[p] = grid.discount[k] * g;
                return;
            }
        }
    });
    return summarize(payoff);
}

}  // namespace osbou
