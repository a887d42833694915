#include "osbou/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "osbou/clock.hpp"
#include "osbou/normal.hpp"

namespace osbou {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double coth(double x) { return 1.0 / std::tanh(x); }

double coth_capped(const family::CothCapped& f, double t) {
    const double switch_at = f.horizon - f.eps;
    if (t <= switch_at) {
        return f.a * coth(f.a * (f.horizon - t));
    }
    const double sh = std::sinh(f.a * f.eps);
    return 1.0 - std::exp(-f.a * f.a * (t - switch_at) / (sh * sh)) + f.a * coth(f.a * f.eps);
}

double tabulated(const family::Tabulated& f, double t) {
    const auto& k = f.knots;
    if (t <= k.front()) return f.values.front();
    if (t >= k.back()) return f.values.back();
    const auto it = std::upper_bound(k.begin(), k.end(), t);
    const auto hi = static_cast<std::size_t>(it - k.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - k[lo]) / (k[hi] - k[lo]);
    return f.values[lo] + w * (f.values[hi] - f.values[lo]);
}

void validate(const ParamFn::Family& fam) {
    std::visit(
        overloaded{
            [](const family::Polynomial& p) {
                if (p.coeffs.empty()) {
                    throw std::invalid_argument("polynomial needs at least one coefficient");
                }
            },
            [](const family::NormalCdfStep& p) {
                if (!(p.s > 0.0)) throw std::invalid_argument("normal_cdf_step: s must be > 0");
            },
            [](const family::NormalPdfBump& p) {
                if (!(p.s > 0.0)) throw std::invalid_argument("normal_pdf_bump: s must be > 0");
            },
            [](const family::CothCapped& p) {
                if (!(p.a > 0.0)) throw std::invalid_argument("coth_capped: a must be > 0");
                if (!(p.eps > 0.0) || !(p.eps < p.horizon)) {
                    throw std::invalid_argument("coth_capped: eps must lie in (0, T)");
                }
                // Both branches evaluated at the switch point.
                const double left = p.a * coth(p.a * p.eps);
                const double right = coth_capped(p, p.horizon - p.eps);
                if (std::abs(left - right) > 1e-8 * std::max(1.0, std::abs(left))) {
                    throw std::invalid_argument("coth_capped: cap is discontinuous at T - eps");
                }
            },
            [](const family::Tabulated& p) {
                if (p.knots.size() < 2 || p.knots.size() != p.values.size()) {
                    throw std::invalid_argument(
                        "tabulated: need >= 2 knots and one value per knot");
                }
                for (std::size_t i = 1; i < p.knots.size(); ++i) {
                    if (!(p.knots[i] > p.knots[i - 1])) {
                        throw std::invalid_argument("tabulated: knots must be strictly increasing");
                    }
                }
            },
            [](const family::Warped& p) {
                if (!p.base || !p.clock) throw std::invalid_argument("warped: missing base or clock");
            },
            [](const family::Affine& p) {
                if (!p.base) throw std::invalid_argument("affine: missing base");
            },
            [](const auto&) {},
        },
        fam);
}

std::vector<double> sample_points(const ParamFn& f, double horizon) {
    constexpr int kSamples = 1001;
    std::vector<double> pts;
    pts.reserve(kSamples + 8);
    for (int i = 0; i < kSamples; ++i) {
        pts.push_back(horizon * static_cast<double>(i) / (kSamples - 1));
    }
    for (double s : f.special_points()) {
        if (s >= 0.0 && s <= horizon) pts.push_back(s);
    }
    return pts;
}

}  // namespace

ParamFn::ParamFn() : family_(family::Constant{1.0}) {}

ParamFn::ParamFn(Family f) : family_(std::move(f)) { validate(family_); }

ParamFn constant(double c) { return ParamFn(family::Constant{c}); }

double ParamFn::operator()(double t) const {
    return std::visit(
        overloaded{
            [](const family::Constant& f) { return f.c; },
            [t](const family::Exponential& f) { return f.a * std::exp(f.b * t); },
            [t](const family::Sinusoid& f) {
                return f.a * std::sin(2.0 * std::numbers::pi * f.freq * t + f.phase) + f.c;
            },
            [t](const family::Polynomial& f) {
                double acc = 0.0;
                for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = acc * t + *it;
                return acc;
            },
            [t](const family::NormalCdfStep& f) { return f.a + f.b * normal_cdf((t - f.m) / f.s); },
            [t](const family::NormalPdfBump& f) { return f.a + f.b * normal_pdf((t - f.m) / f.s); },
            [t](const family::Sech& f) { return f.a / std::cosh(f.k * (f.horizon - t)); },
            [t](const family::CothCapped& f) { return coth_capped(f, t); },
            [t](const family::Tabulated& f) { return tabulated(f, t); },
            [t](const family::Warped& f) {
                const double s = f.clock->inverse(t);
                const double v = (*f.base)(s);
                if (!f.divisor) return v;
                const double d = (*f.divisor)(s);
                return v / (d * d);
            },
            [t](const family::Affine& f) { return f.shift + f.scale * (*f.base)(t); },
        },
        family_);
}

std::string_view ParamFn::kind() const noexcept {
    return std::visit(overloaded{
                          [](const family::Constant&) { return std::string_view{"constant"}; },
                          [](const family::Exponential&) { return std::string_view{"exponential"}; },
                          [](const family::Sinusoid&) { return std::string_view{"sinusoid"}; },
                          [](const family::Polynomial&) { return std::string_view{"polynomial"}; },
                          [](const family::NormalCdfStep&) {
                              return std::string_view{"normal_cdf_step"};
                          },
                          [](const family::NormalPdfBump&) {
                              return std::string_view{"normal_pdf_bump"};
                          },
                          [](const family::Sech&) { return std::string_view{"sech"}; },
                          [](const family::CothCapped&) { return std::string_view{"coth_capped"}; },
                          [](const family::Tabulated&) { return std::string_view{"tabulated"}; },
                          [](const family::Warped&) { return std::string_view{"warped"}; },
                          [](const family::Affine&) { return std::string_view{"affine"}; },
                      },
                      family_);
}

bool ParamFn::is_constant(double* value) const noexcept {
    if (const auto* c = std::get_if<family::Constant>(&family_)) {
        if (value) *value = c->c;
        return true;
    }
    return false;
}

std::vector<double> ParamFn::special_points() const {
    return std::visit(
        overloaded{
            [](const family::CothCapped& f) { return std::vector<double>{f.horizon - f.eps}; },
            [](const family::Tabulated& f) { return f.knots; },
            [](const family::Affine& f) { return f.base->special_points(); },
            [](const auto&) { return std::vector<double>{}; },
        },
        family_);
}

double eval(const ParamFn& f, double t, double horizon) {
    if (!(t >= 0.0 && t <= horizon)) {
        std::ostringstream os;
        os << "eval: t = " << t << " outside [0, " << horizon << "]";
        throw std::domain_error(os.str());
    }
    return f(t);
}

void require_finite(const ParamFn& f, double horizon, std::string_view name) {
    for (double t : sample_points(f, horizon)) {
        const double v = f(t);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << name << "(" << t << ") = " << v << " is not finite";
            throw std::invalid_argument(os.str());
        }
    }
}

void require_positive(const ParamFn& f, double horizon, std::string_view name) {
    for (double t : sample_points(f, horizon)) {
        const double v = f(t);
        if (!std::isfinite(v) || !(v > 0.0)) {
            std::ostringstream os;
            os << name << " must be strictly positive on [0, " << horizon << "], but " << name
               << "(" << t << ") = " << v;
            throw std::invalid_argument(os.str());
        }
    }
}

ParamFn make_param_fn(std::string_view kind, std::span<const double> p) {
    const auto need = [&](std::size_t n) {
        if (p.size() != n) {
            std::ostringstream os;
            os << kind << " expects " << n << " params, got " << p.size();
            throw std::invalid_argument(os.str());
        }
    };
    if (kind == "constant") {
        need(1);
        return ParamFn(family::Constant{p[0]});
    }
    if (kind == "exponential") {
        need(2);
        return ParamFn(family::Exponential{p[0], p[1]});
    }
    if (kind == "sinusoid") {
        need(4);
        return ParamFn(family::Sinusoid{p[0], p[1], p[2], p[3]});
    }
    if (kind == "polynomial") {
        return ParamFn(family::Polynomial{{p.begin(), p.end()}});
    }
    if (kind == "normal_cdf_step") {
        need(4);
        return ParamFn(family::NormalCdfStep{p[0], p[1], p[2], p[3]});
    }
    if (kind == "normal_pdf_bump") {
        need(4);
        return ParamFn(family::NormalPdfBump{p[0], p[1], p[2], p[3]});
    }
    if (kind == "sech") {
        need(3);
        return ParamFn(family::Sech{p[0], p[1], p[2]});
    }
    if (kind == "coth_capped") {
        need(3);
        return ParamFn(family::CothCapped{p[0], p[1], p[2]});
    }
    if (kind == "tabulated") {
        if (p.size() % 2 != 0) {
            throw std::invalid_argument("tabulated expects [k0, v0, k1, v1, ...]");
        }
        family::Tabulated tab;
        for (std::size_t i = 0; i < p.size(); i += 2) {
            tab.knots.push_back(p[i]);
            tab.values.push_back(p[i + 1]);
        }
        return ParamFn(std::move(tab));
    }
    throw std::invalid_argument("unknown parameter family '" + std::string(kind) + "'");
}

std::vector<double> serialize_params(const ParamFn& f) {
    return std::visit(
        overloaded{
            [](const family::Constant& x) { return std::vector<double>{x.c}; },
            [](const family::Exponential& x) { return std::vector<double>{x.a, x.b}; },
            [](const family::Sinusoid& x) {
                return std::vector<double>{x.a, x.freq, x.phase, x.c};
            },
            [](const family::Polynomial& x) { return x.coeffs; },
            [](const family::NormalCdfStep& x) { return std::vector<double>{x.a, x.b, x.m, x.s}; },
            [](const family::NormalPdfBump& x) { return std::vector<double>{x.a, x.b, x.m, x.s}; },
            [](const family::Sech& x) { return std::vector<double>{x.a, x.k, x.horizon}; },
            [](const family::CothCapped& x) {
                return std::vector<double>{x.a, x.horizon, x.eps};
            },
            [](const family::Tabulated& x) {
                std::vector<double> out;
                for (std::size_t i = 0; i < x.knots.size(); ++i) {
                    out.push_back(x.knots[i]);
                    out.push_back(x.values[i]);
                }
                return out;
            },
            [](const auto&) -> std::vector<double> {
                throw std::invalid_argument("internal parameter family cannot be serialized");
            },
        },
        f.family());
}

}  // namespace osbou
