#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "osbou/params.hpp"

namespace {

using namespace osbou;

TEST(Params, FamilyValues) {
    EXPECT_DOUBLE_EQ(eval(constant(1.0), 0.7, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(eval(ParamFn(family::Exponential{1.0, 0.5}), 0.0, 1.0), 1.0);
    EXPECT_NEAR(eval(ParamFn(family::Sinusoid{1.0, 1.0, 0.0, 0.0}), 0.25, 1.0), 1.0, 1e-15);
    EXPECT_NEAR(eval(ParamFn(family::NormalCdfStep{1.0, 2.0, 0.5, 0.1}), 0.5, 1.0), 2.0, 1e-15);
    EXPECT_NEAR(eval(ParamFn(family::NormalPdfBump{0.0, 1.0, 0.5, 0.1}), 0.5, 1.0),
                0.3989422804014327, 1e-15);
    EXPECT_NEAR(eval(ParamFn(family::Sech{2.0, 5.0, 1.0}), 1.0, 1.0), 2.0, 1e-15);
}

TEST(Params, CothCappedAtZero) {
    // 5 coth(5) from the exponential definition, evaluated in long double.
    const long double e = std::exp(5.0L);
    const long double oracle = 5.0L * (e + 1.0L / e) / (e - 1.0L / e);
    const ParamFn f(family::CothCapped{5.0, 1.0, 0.05});
    EXPECT_NEAR(f(0.0), static_cast<double>(oracle), 1e-12);
    EXPECT_NEAR(f(0.0), 5.000454, 1e-6);
}

TEST(Params, CothCappedIsContinuousAtSwitch) {
    for (double eps : {0.2, 0.05, 0.01}) {
        const ParamFn f(family::CothCapped{5.0, 1.0, eps});
        const double s = 1.0 - eps;
        const double left = 5.0 / std::tanh(5.0 * (1.0 - s));
        EXPECT_NEAR(f(s), left, 1e-10);
        EXPECT_NEAR(f(std::nextafter(s, 2.0)), left, 1e-10 * left);
    }
}

TEST(Params, CothCappedKeepsGrowingPastSwitch) {
    const ParamFn f(family::CothCapped{5.0, 1.0, 0.1});
    EXPECT_GT(f(1.0), f(0.9));
    EXPECT_TRUE(std::isfinite(f(1.0)));
}

TEST(Params, PolynomialOfOnesAtOne) {
    for (int n : {2, 5, 8, 12}) {
        const ParamFn f(family::Polynomial{std::vector<double>(n + 1, 1.0)});
        EXPECT_DOUBLE_EQ(f(1.0), n + 1.0);
    }
}

TEST(Params, TabulatedIsExactAtKnotsAndAffineBetween) {
    const ParamFn f(family::Tabulated{{0.0, 0.4, 1.0}, {1.0, 3.0, 2.0}});
    EXPECT_DOUBLE_EQ(f(0.0), 1.0);
    EXPECT_DOUBLE_EQ(f(0.4), 3.0);
    EXPECT_DOUBLE_EQ(f(1.0), 2.0);
    EXPECT_NEAR(f(0.1), 1.5, 1e-15);
    EXPECT_NEAR(f(0.7), 2.5, 1e-15);
    EXPECT_NEAR(f(0.25) - f(0.2), f(0.3) - f(0.25), 1e-15);
}

TEST(Params, EvalRejectsTimesOutsideHorizon) {
    EXPECT_THROW(eval(constant(1.0), -1e-9, 1.0), std::domain_error);
    EXPECT_THROW(eval(constant(1.0), 1.0 + 1e-9, 1.0), std::domain_error);
    EXPECT_NO_THROW(eval(constant(1.0), 1.0, 1.0));
}

TEST(Params, MalformedFamiliesAreRejected) {
    EXPECT_THROW(ParamFn(family::Polynomial{{}}), std::invalid_argument);
    EXPECT_THROW(ParamFn(family::NormalCdfStep{0.0, 1.0, 0.5, 0.0}), std::invalid_argument);
    EXPECT_THROW(ParamFn(family::CothCapped{5.0, 1.0, 1.5}), std::invalid_argument);
    EXPECT_THROW(ParamFn(family::Tabulated{{0.0, 0.0}, {1.0, 1.0}}), std::invalid_argument);
    EXPECT_THROW(ParamFn(family::Tabulated{{0.0, 1.0}, {1.0}}), std::invalid_argument);
}

TEST(Params, PositivityIsCheckedOnDenseGridAndKnots) {
    EXPECT_NO_THROW(require_positive(constant(0.1), 1.0, "theta"));
    EXPECT_THROW(require_positive(constant(0.0), 1.0, "theta"), std::invalid_argument);
    // Dips below zero only between grid samples would be missed; a knot is not.
    const ParamFn dip(family::Tabulated{{0.0, 0.50005, 1.0}, {1.0, -1.0, 1.0}});
    EXPECT_THROW(require_positive(dip, 1.0, "sigma"), std::invalid_argument);
    EXPECT_THROW(require_positive(ParamFn(family::Sinusoid{1.0, 1.0, 0.0, 0.0}), 1.0, "theta"),
                 std::invalid_argument);
}

TEST(Params, ConfigNamesRoundTrip) {
    const std::vector<ParamFn> fns{
        constant(2.5),
        ParamFn(family::Exponential{1.0, 0.5}),
        ParamFn(family::Sinusoid{1.0, 2.0, 0.3, 0.1}),
        ParamFn(family::Polynomial{{1.0, 1.0, 1.0}}),
        ParamFn(family::NormalCdfStep{1.0, 9.0, 0.5, 0.05}),
        ParamFn(family::NormalPdfBump{1.0, 1.0, 0.5, 0.05}),
        ParamFn(family::Sech{2.0, 5.0, 1.0}),
        ParamFn(family::CothCapped{5.0, 1.0, 0.05}),
        ParamFn(family::Tabulated{{0.0, 1.0}, {1.0, 2.0}}),
    };
    for (const auto& f : fns) {
        const std::vector<double> p = serialize_params(f);
        const ParamFn g = make_param_fn(f.kind(), p);
        for (double t : {0.0, 0.13, 0.5, 0.97, 1.0}) EXPECT_EQ(f(t), g(t)) << f.kind();
    }
    EXPECT_THROW(make_param_fn("spline", std::vector<double>{1.0}), std::invalid_argument);
    EXPECT_THROW(make_param_fn("constant", std::vector<double>{1.0, 2.0}), std::invalid_argument);
}

}  // namespace
