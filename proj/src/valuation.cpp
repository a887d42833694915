#include "osbou/valuation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "osbou/kernel.hpp"

namespace osbou {

ValueFunction::ValueFunction(const OUModel& model, Boundary boundary, QuadratureSpec spec)
    : model_(model), boundary_(std::move(boundary)), calc_(model_, spec) {
    if (!model_.unit_volatility()) {
        throw std::invalid_argument("ValueFunction: model must be in unit-volatility form");
    }
    const Mesh& mesh = boundary_.mesh();
    if (std::abs(mesh.horizon() - model_.horizon()) > 1e-12 * model_.horizon()) {
        throw std::invalid_argument("ValueFunction: boundary mesh must end at the model horizon");
    }
    steps_.resize(mesh.size());
    premium_intercept_.resize(mesh.size());
    premium_slope_.resize(mesh.size());
    for (std::size_t j = 0; j < mesh.size(); ++j) {
        if (j > 0) steps_[j] = calc_(mesh[j - 1], mesh[j]);
        const double th = model_.theta()(mesh[j]);
        const double lam = model_.rate(mesh[j]);
        premium_intercept_[j] = lam * model_.strike() + th * model_.alpha()(mesh[j]);
        premium_slope_[j] = lam + th;
    }
}

void ValueFunction::check_time(double t) const {
    if (!(t >= 0.0 && t <= model_.horizon())) {
        std::ostringstream os;
        os << "value: t = " << t << " outside [0, " << model_.horizon() << "]";
        throw std::domain_error(os.str());
    }
}

double put_gain(double strike, double x) { return std::max(strike - x, 0.0); }

ValuePoint ValueFunction::operator()(double t, double x) const {
    check_time(t);
    const Mesh& mesh = boundary_.mesh();
    const double strike = model_.strike();
    const double lambda = model_.lambda();

    ValuePoint p;
    p.t = t;
    p.x = x;
    p.gain = put_gain(strike, x);
    p.in_stopping_region = x <= boundary_.at(t);

    const std::size_t first = mesh.first_after(t);
    if (first >= mesh.size()) {
        p.european = p.gain;
        p.premium = 0.0;
        p.value = p.gain;
        return p;
    }

    // Chain t -> t_first -> ... -> t_N, reusing the solver's interval steps
    // when t sits on a node.
    Transition tr = (t == mesh[first - 1]) ? steps_[first] : calc_(t, mesh[first]);
    double premium = 0.0;
    for (std::size_t j = first;; ++j) {
        const double weight = mesh[j] - std::max(mesh[j - 1], t);
        premium += weight * k_lambda(tr, lambda, premium_intercept_[j], premium_slope_[j], x,
                                     boundary_[j]);
        if (j + 1 == mesh.size()) break;
        tr = tr.then(steps_[j + 1]);
    }
    p.european = k_lambda(tr, lambda, strike, 1.0, x, strike);
    p.premium = premium;
    p.value = p.european + p.premium;
    return p;
}

double ValueFunction::european(double t, double x) const { return (*this)(t, x).european; }

double ValueFunction::premium(double t, double x) const { return (*this)(t, x).premium; }

double ValueFunction::smooth_fit_gap(double t, double h) const {
    const double b = boundary_.at(t);
    if (!(h > 0.0)) h = 1e-4 * (model_.strike() - b + 1.0);
    const double v0 = (*this)(t, b).value;
    const double v1 = (*this)(t, b + h).value;
    return (v1 - v0) / h + 1.0;
}

double european_term(const OUModel& m, double t, double x) {
    if (!(t >= 0.0 && t <= m.horizon())) {
        throw std::domain_error("european_term: t outside [0, T]");
    }
    return k_lambda(m, KernelInputs{m.strike(), 1.0, t, x, m.horizon(), m.strike()});
}

double premium_term(const OUModel& m, const Boundary& b, double t, double x) {
    return ValueFunction(m, b)(t, x).premium;
}

ValuePoint value(const OUModel& m, const Boundary& b, double t, double x) {
    return ValueFunction(m, b)(t, x);
}

double smooth_fit_gap(const OUModel& m, const Boundary& b, double t, double h) {
    return ValueFunction(m, b).smooth_fit_gap(t, h);
}

OUModel reflect(const OUModel& m) {
    return m.with_alpha(ParamFn(
        family::Affine{std::make_shared<const ParamFn>(m.alpha()), -1.0, 2.0 * m.strike()}));
}

double call_value(const ValueFunction& put, double t, double y) {
    return put(t, 2.0 * put.model().strike() - y).value;
}

}  // namespace osbou
