#include "osbou/ou_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace osbou {

OUModel::OUModel(ParamFn theta, ParamFn alpha, ParamFn sigma, double horizon, double lambda,
                 double strike, ParamFn rate_scale)
    : theta_(std::move(theta)),
      alpha_(std::move(alpha)),
      sigma_(std::move(sigma)),
      rate_scale_(std::move(rate_scale)),
      horizon_(horizon),
      lambda_(lambda),
      strike_(strike) {
    if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
        throw std::invalid_argument("OUModel: T must be finite and > 0");
    }
    if (!(lambda_ >= 0.0) || !std::isfinite(lambda_)) {
        throw std::invalid_argument("OUModel: lambda must be finite and >= 0");
    }
    if (!std::isfinite(strike_)) throw std::invalid_argument("OUModel: A must be finite");
    require_positive(theta_, horizon_, "theta");
    require_positive(sigma_, horizon_, "sigma");
    require_finite(alpha_, horizon_, "alpha");
    require_positive(rate_scale_, horizon_, "rate_scale");
}

bool OUModel::unit_volatility() const noexcept {
    double c = 0.0;
    return sigma_.is_constant(&c) && c == 1.0;
}

OUModel OUModel::with_alpha(ParamFn alpha) const {
    return OUModel(theta_, std::move(alpha), sigma_, horizon_, lambda_, strike_, rate_scale_);
}

OUModel OUModel::with_lambda(double lambda) const {
    return OUModel(theta_, alpha_, sigma_, horizon_, lambda, strike_, rate_scale_);
}

double Transition::slope() const { return std::exp(log_slope); }

double Transition::discount(double lambda) const {
    return lambda == 0.0 ? 1.0 : std::exp(-lambda * rate_exposure);
}

Transition Transition::then(const Transition& next) const {
    const double s = next.slope();
    return Transition{
        log_slope + next.log_slope,
        s * offset + next.offset,
        s * s * variance + next.variance,
        rate_exposure + next.rate_exposure,
    };
}

TransitionCalculator::TransitionCalculator(const OUModel& model, QuadratureSpec spec)
    : model_(model), spec_(spec), rule_(spec.nodes) {
    constant_rate_scale_ = model_.rate_scale().is_constant(&rate_scale_value_);
}

Transition TransitionCalculator::panel(double a, double b) const {
    const ParamFn& theta = model_.theta();
    const ParamFn& alpha = model_.alpha();
    const std::size_t n = rule_.size();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    double total = 0.0;
    double offset = 0.0;
    double variance = 0.0;
    double exposure = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = mid + half * rule_.nodes[k];
        const double th = theta(r);
        total += rule_.weights[k] * th;
        // int_r^b theta on the same rule.
        const double inner = rule_.integrate(theta, r, b);
        const double decay = std::exp(-inner);
        offset += rule_.weights[k] * decay * th * alpha(r);
        variance += rule_.weights[k] * decay * decay;
        if (!constant_rate_scale_) exposure += rule_.weights[k] * model_.rate_scale()(r);
    }
    Transition tr;
    tr.log_slope = -half * total;
    tr.offset = half * offset;
    tr.variance = half * variance;
    tr.rate_exposure = constant_rate_scale_ ? rate_scale_value_ * (b - a) : half * exposure;
    return tr;
}

Transition TransitionCalculator::operator()(double t1, double t2) const {
    if (t2 < t1) {
        std::ostringstream os;
        os << "transition: t2 = " << t2 << " precedes t1 = " << t1;
        throw std::domain_error(os.str());
    }
    if (t2 == t1) return Transition{};
    const std::size_t panels = panel_count(t1, t2, spec_.max_panel * model_.horizon());
    const double width = (t2 - t1) / static_cast<double>(panels);
    Transition acc = panel(t1, panels == 1 ? t2 : t1 + width);
    for (std::size_t p = 1; p < panels; ++p) {
        const double a = t1 + static_cast<double>(p) * width;
        const double b = (p + 1 == panels) ? t2 : t1 + static_cast<double>(p + 1) * width;
        acc = acc.then(panel(a, b));
    }
    return acc;
}

namespace {

void require_unit_volatility(const OUModel& m, const char* who) {
    if (!m.unit_volatility()) {
        throw std::invalid_argument(std::string(who) +
                                    ": model must be in unit-volatility form (sigma == 1)");
    }
}

}  // namespace

Transition transition(const OUModel& m, double t1, double t2) {
    return TransitionCalculator(m)(t1, t2);
}

double transition_mean(const OUModel& m, double t1, double x, double t2) {
    require_unit_volatility(m, "transition_mean");
    if (t2 == t1) return x;
    return transition(m, t1, t2).mean(x);
}

double transition_var(const OUModel& m, double t1, double t2) {
    require_unit_volatility(m, "transition_var");
    if (t2 == t1) return 0.0;
    return transition(m, t1, t2).variance;
}

TransitionStats transition_stats(const OUModel& m, double t1, double x, double t2) {
    require_unit_volatility(m, "transition_stats");
    if (t2 == t1) return {x, 0.0};
    const Transition tr = transition(m, t1, t2);
    return {tr.mean(x), tr.variance};
}

double gamma_bound(const OUModel& m, double t) {
    const double th = eval(m.theta(), t, m.horizon());
    const double lam = m.rate(t);
    return (th * m.alpha()(t) + lam * m.strike()) / (th + lam);
}

double terminal_boundary(const OUModel& m) {
    return std::min(m.strike(), gamma_bound(m, m.horizon()));
}

PairTable::PairTable(const OUModel& m, const Mesh& mesh, QuadratureSpec spec) {
    const TransitionCalculator calc(m, spec);
    const std::size_t n = mesh.size();
    std::vector<Transition> step(n);
    for (std::size_t j = 1; j < n; ++j) step[j] = calc(mesh[j - 1], mesh[j]);

    row_start_.resize(n);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < n; ++i) {
        row_start_[i] = offset;
        offset += n - i;
    }
    data_.resize(offset);
    for (std::size_t i = 0; i < n; ++i) {
        Transition* row = &data_[row_start_[i]];
        row[0] = Transition{};
        for (std::size_t j = i + 1; j < n; ++j) row[j - i] = row[j - i - 1].then(step[j]);
    }
}

TimeChangedModel to_unit_volatility(const OUModel& m) {
    auto clock = std::make_shared<const VolatilityClock>(m.sigma(), m.horizon());
    if (m.unit_volatility()) return TimeChangedModel{m, std::move(clock)};

    auto sigma = std::make_shared<const ParamFn>(m.sigma());
    auto warp = [&](const ParamFn& base, bool divide) {
        return ParamFn(family::Warped{std::make_shared<const ParamFn>(base),
                                      divide ? sigma : nullptr, clock});
    };
    OUModel inner(warp(m.theta(), true), warp(m.alpha(), false), constant(1.0),
                  clock->transformed_horizon(), m.lambda(), m.strike(),
                  warp(m.rate_scale(), true));
    return TimeChangedModel{std::move(inner), std::move(clock)};
}

double pull_back_boundary(const TimeChangedModel& tc, const Boundary& b_tilde, double t) {
    const double horizon = tc.clock->horizon();
    if (!(t >= 0.0 && t <= horizon)) {
        std::ostringstream os;
        os << "pull_back_boundary: t = " << t << " outside [0, " << horizon << "]";
        throw std::domain_error(os.str());
    }
    return b_tilde.at(tc.to_inner_time(t));
}

Boundary pull_back(const TimeChangedModel& tc, const Boundary& b_tilde) {
    std::vector<double> nodes;
    nodes.reserve(b_tilde.mesh().size());
    for (double s : b_tilde.mesh().nodes()) nodes.push_back(tc.to_outer_time(s));
    nodes.front() = 0.0;
    nodes.back() = tc.clock->horizon();
    return Boundary(Mesh(std::move(nodes)), b_tilde.values());
}

}  // namespace osbou
