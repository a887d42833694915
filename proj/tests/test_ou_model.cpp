#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "osbou/ou_model.hpp"

namespace {

using namespace osbou;

OUModel make(ParamFn theta, ParamFn alpha, double lambda = 1.0, double strike = 0.0,
             ParamFn sigma = constant(1.0), double horizon = 1.0) {
    return OUModel(std::move(theta), std::move(alpha), std::move(sigma), horizon, lambda, strike);
}

// Midpoint sum of f over [a, b] with n cells, accumulated in long double.
template <class F>
double riemann(F f, double a, double b, long n) {
    const long double h = (static_cast<long double>(b) - a) / n;
    long double s = 0.0L;
    for (long k = 0; k < n; ++k) s += f(a + (k + 0.5L) * h);
    return static_cast<double>(s * h);
}

TEST(Transition, ConstantCoefficientMean) {
    const OUModel m = make(constant(1.0), constant(0.0));
    EXPECT_NEAR(transition_mean(m, 0.0, 1.0, std::log(2.0)), 0.5, 1e-14);
}

TEST(Transition, ZeroLengthIsIdentity) {
    const OUModel m = make(ParamFn(family::Polynomial{{1.0, 1.0}}),
                           ParamFn(family::Sinusoid{1.0, 1.0, 0.0, 0.0}));
    EXPECT_EQ(transition_mean(m, 0.3, 3.7, 0.3), 3.7);
    EXPECT_EQ(transition_var(m, 0.3, 0.3), 0.0);
}

TEST(Transition, RejectsBackwardInterval) {
    const OUModel m = make(constant(1.0), constant(0.0));
    EXPECT_THROW(transition_mean(m, 0.6, 0.0, 0.5), std::domain_error);
    EXPECT_THROW(transition_var(m, 0.6, 0.5), std::domain_error);
}

TEST(Transition, SinusoidalPullingLevelAgainstRiemannSum) {
    const OUModel m = make(constant(1.0), ParamFn(family::Sinusoid{1.0, 1.0, 0.0, 0.0}));
    const double oracle = riemann(
        [](long double r) { return std::exp(-(1.0L - r)) * std::sin(2.0L * std::numbers::pi_v<long double> * r); },
        0.0, 1.0, 1'000'000);
    EXPECT_NEAR(transition_mean(m, 0.0, 0.0, 1.0), oracle, 1e-10);
    // Closed form -2 pi (1 - e^{-1}) / (1 + 4 pi^2).
    EXPECT_NEAR(oracle, -0.0981197, 1e-7);
}

TEST(Transition, ConstantSlopeVariance) {
    const OUModel m = make(constant(1.0), constant(0.0));
    EXPECT_NEAR(transition_var(m, 0.0, 1.0), (1.0 - std::exp(-2.0)) / 2.0, 1e-14);
    EXPECT_NEAR(transition_var(m, 0.0, 1.0), 0.432332, 1e-6);
}

TEST(Transition, LinearSlopeVarianceAgainstRiemannSum) {
    const OUModel m = make(ParamFn(family::Polynomial{{1.0, 1.0}}), constant(0.0));
    const double oracle = riemann(
        [](long double r) { return std::exp(-2.0L * (1.0L - r) - (1.0L - r * r)); }, 0.0, 1.0,
        1'000'000);
    EXPECT_NEAR(transition_var(m, 0.0, 1.0), oracle, 1e-10);
}

TEST(Transition, MeanIsAffineWithSlopeInUnitInterval) {
    const OUModel m = make(ParamFn(family::NormalCdfStep{1.0, 9.0, 0.5, 0.05}),
                           ParamFn(family::Exponential{1.0, 0.5}));
    const double s0 = transition_mean(m, 0.1, 1.0, 0.8) - transition_mean(m, 0.1, 0.0, 0.8);
    const double s1 = transition_mean(m, 0.1, 5.0, 0.8) - transition_mean(m, 0.1, 4.0, 0.8);
    EXPECT_GT(s0, 0.0);
    EXPECT_LE(s0, 1.0);
    EXPECT_NEAR(s0, s1, 1e-10);
}

TEST(Transition, ChapmanKolmogorov) {
    const OUModel m = make(ParamFn(family::Polynomial{{1.0, 1.0, 1.0}}),
                           ParamFn(family::NormalPdfBump{-1.0, 2.5, 0.5, 0.1}));
    const double t1 = 0.05, tm = 0.47, t2 = 0.93, x = -0.3;
    const double direct = transition_mean(m, t1, x, t2);
    const double chained = transition_mean(m, tm, transition_mean(m, t1, x, tm), t2);
    EXPECT_NEAR(direct, chained, 1e-12);

    const double slope = transition(m, tm, t2).slope();
    EXPECT_NEAR(transition_var(m, t1, t2),
                transition_var(m, tm, t2) + slope * slope * transition_var(m, t1, tm), 1e-12);
}

TEST(Transition, VarianceIsPositiveForPositiveLength) {
    const OUModel m = make(ParamFn(family::CothCapped{5.0, 1.0, 0.01}), constant(0.0), 0.0);
    EXPECT_GT(transition_var(m, 0.98, 0.99), 0.0);
    EXPECT_GT(transition_var(m, 0.0, 1e-9), 0.0);
}

TEST(Transition, TimeDependentVolatilityNeedsTimeChange) {
    const OUModel m = make(constant(1.0), constant(0.0), 1.0, 0.0, constant(2.0));
    EXPECT_THROW(transition_mean(m, 0.0, 0.0, 0.5), std::invalid_argument);
}

TEST(GammaBound, Examples) {
    EXPECT_EQ(gamma_bound(make(constant(1.0), constant(0.0)), 0.3), 0.0);
    const OUModel sine = make(constant(1.0), ParamFn(family::Sinusoid{1.0, 1.0, 0.0, 0.0}));
    EXPECT_NEAR(gamma_bound(sine, 0.25), 0.5, 1e-15);
    const OUModel expo = make(constant(1.0), ParamFn(family::Exponential{1.0, 0.5}), 0.0);
    EXPECT_NEAR(gamma_bound(expo, 1.0), 1.648721, 1e-6);
}

TEST(GammaBound, EqualsPullingLevelWithoutDiscount) {
    const OUModel m = make(ParamFn(family::Polynomial{{1.0, 1.0}}),
                           ParamFn(family::NormalCdfStep{-1.0, 2.0, 0.5, 0.1}), 0.0);
    for (double t : {0.0, 0.3, 0.5, 1.0}) EXPECT_EQ(gamma_bound(m, t), m.alpha()(t));
}

TEST(TerminalBoundary, Examples) {
    EXPECT_EQ(terminal_boundary(make(constant(1.0), constant(0.0))), 0.0);
    const OUModel sine = make(constant(1.0), ParamFn(family::Sinusoid{1.0, 1.0, 0.0, 0.0}));
    EXPECT_NEAR(terminal_boundary(sine), 0.0, 1e-15);
    EXPECT_EQ(terminal_boundary(make(constant(1.0), constant(2.0), 0.0, 1.0)), 1.0);
}

TEST(Model, RejectsInvalidParameters) {
    EXPECT_THROW(make(constant(0.0), constant(0.0)), std::invalid_argument);
    EXPECT_THROW(make(constant(1.0), constant(0.0), -0.1), std::invalid_argument);
    EXPECT_THROW(make(constant(1.0), constant(0.0), 1.0, 0.0, constant(-1.0)),
                 std::invalid_argument);
    EXPECT_THROW(make(constant(1.0), constant(0.0), 1.0, 0.0, constant(1.0), 0.0),
                 std::invalid_argument);
}

TEST(TimeChange, UnitVolatilityIsIdentity) {
    const OUModel m = make(constant(1.0), ParamFn(family::Sinusoid{1.0, 1.0, 0.0, 0.0}));
    const TimeChangedModel tc = to_unit_volatility(m);
    EXPECT_EQ(tc.transformed_horizon(), 1.0);
    for (double t : {0.0, 0.2, 0.7, 1.0}) {
        EXPECT_EQ(tc.to_inner_time(t), t);
        EXPECT_EQ(tc.inner.theta()(t), m.theta()(t));
        EXPECT_EQ(tc.inner.alpha()(t), m.alpha()(t));
    }
    const Boundary b(make_log_mesh(1.0, 10), std::vector<double>(11, -0.25));
    const Boundary back = pull_back(tc, b);
    EXPECT_EQ(back.mesh(), b.mesh());
    EXPECT_EQ(back.values(), b.values());
}

TEST(TimeChange, ConstantVolatilityRescales) {
    const OUModel m = make(constant(1.0), constant(0.0), 1.0, 0.0, constant(2.0));
    const TimeChangedModel tc = to_unit_volatility(m);
    EXPECT_NEAR(tc.transformed_horizon(), 4.0, 1e-14);
    for (double s : {0.0, 1.0, 2.5, 4.0}) EXPECT_NEAR(tc.inner.theta()(s), 0.25, 1e-14);
    EXPECT_NEAR(tc.to_inner_time(1.0), 4.0, 1e-14);
}

TEST(TimeChange, LinearVolatilityHorizon) {
    const OUModel m = make(constant(1.0), constant(0.0), 1.0, 0.0,
                           ParamFn(family::Polynomial{{1.0, 1.0}}));
    const TimeChangedModel tc = to_unit_volatility(m);
    EXPECT_NEAR(tc.transformed_horizon(), 7.0 / 3.0, 1e-12);
    for (double t : {0.1, 0.5, 0.9}) {
        const double s = tc.to_inner_time(t);
        EXPECT_NEAR(s, (std::pow(1.0 + t, 3) - 1.0) / 3.0, 1e-12);
        EXPECT_NEAR(tc.to_outer_time(s), t, 1e-11);
        // theta~ = theta / sigma^2 at the matching time.
        EXPECT_NEAR(tc.inner.theta()(s), 1.0 / ((1.0 + t) * (1.0 + t)), 1e-10);
    }
}

TEST(TimeChange, PullBackReadsTransformedClock) {
    const OUModel m = make(constant(1.0), constant(0.0), 1.0, 0.0, constant(2.0));
    const TimeChangedModel tc = to_unit_volatility(m);
    std::vector<double> v;
    const Mesh mesh = make_log_mesh(4.0, 8);
    for (double s : mesh.nodes()) v.push_back(-0.1 * (4.0 - s));
    const Boundary b(mesh, v);
    EXPECT_EQ(pull_back_boundary(tc, b, 0.0), b[0]);
    EXPECT_NEAR(pull_back_boundary(tc, b, 1.0), b.at(4.0), 1e-14);
    EXPECT_THROW(pull_back_boundary(tc, b, 1.5), std::domain_error);
}

TEST(PairTable, MatchesDirectTransitions) {
    const OUModel m = make(ParamFn(family::NormalCdfStep{1.0, 9.0, 0.5, 0.05}),
                           ParamFn(family::Exponential{1.0, 0.5}));
    const Mesh mesh = make_log_mesh(1.0, 12);
    const PairTable table(m, mesh);
    for (std::size_t i = 0; i < mesh.size(); i += 3) {
        for (std::size_t j = i; j < mesh.size(); j += 2) {
            const Transition direct = transition(m, mesh[i], mesh[j]);
            EXPECT_NEAR(table(i, j).mean(0.3), direct.mean(0.3), 1e-12);
            EXPECT_NEAR(table(i, j).variance, direct.variance, 1e-12);
        }
    }
}

}  // namespace
