#pragma once

/**
 * @file kernel.hpp
 * @brief Truncated-Gaussian kernel
 *
 *   K(c1, c2, t1, x1, t2, x2) = e^{-lambda (t2 - t1)} E_{t1,x1}[(c1 - c2 X_{t2}) 1(X_{t2} <= x2)]
 *                             = e^{-lambda (t2 - t1)} [(c1 - c2 nu) Phi(z) + c2 gamma phi(z)],
 *
 * with z = (x2 - nu) / gamma and nu, gamma^2 the transition mean and
 * variance. Discounting uses the model's rate exposure, which reduces to
 * lambda (t2 - t1) for ordinary models.
 */

#include "osbou/normal.hpp"
#include "osbou/ou_model.hpp"

namespace osbou {

struct KernelInputs {
    double c1 = 0.0;
    double c2 = 0.0;
    double t1 = 0.0;
    double x1 = 0.0;
    double t2 = 0.0;
    double x2 = 0.0;
};

/// Closed form on a precomputed transition. A zero-variance transition
/// returns the limit (c1 - c2 x1) 1(x1 <= x2).
double k_lambda(const Transition& tr, double lambda, double c1, double c2, double x1, double x2);

/// Computes the transition for in.t1 -> in.t2 by quadrature. Throws
/// std::domain_error when t2 < t1.
double k_lambda(const OUModel& m, const KernelInputs& in);

}  // namespace osbou
