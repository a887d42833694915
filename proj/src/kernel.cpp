#include "osbou/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace osbou {

namespace {
constexpr double kZClamp = 40.0;
}

double k_lambda(const Transition& tr, double lambda, double c1, double c2, double x1, double x2) {
    if (tr.variance <= 0.0) {
        return x1 <= x2 ? c1 - c2 * x1 : 0.0;
    }
    const double nu = tr.mean(x1);
    const double gamma = std::sqrt(tr.variance);
    const double z = std::clamp((x2 - nu) / gamma, -kZClamp, kZClamp);
    return tr.discount(lambda) * ((c1 - c2 * nu) * normal_cdf(z) + c2 * gamma * normal_pdf(z));
}

double k_lambda(const OUModel& m, const KernelInputs& in) {
    if (in.t2 < in.t1) {
        std::ostringstream os;
        os << "k_lambda: t2 = " << in.t2 << " precedes t1 = " << in.t1;
        throw std::domain_error(os.str());
    }
    if (in.t2 == in.t1) return k_lambda(Transition{}, m.lambda(), in.c1, in.c2, in.x1, in.x2);
    return k_lambda(transition(m, in.t1, in.t2), m.lambda(), in.c1, in.c2, in.x1, in.x2);
}

}  // namespace osbou
