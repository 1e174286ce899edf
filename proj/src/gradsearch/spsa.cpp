#include "swarmgrad/gradsearch/spsa.hpp"

#include <cmath>
#include <stdexcept>

namespace swarmgrad {

Vec spsa_gradient(Objective &f, const Vec &x, double c_perturb,
                  const Vec &delta)
{
    if (!(c_perturb > 0))
        throw std::invalid_argument("spsa_gradient: c_perturb must be > 0");
    require_same_dim(x, delta, "spsa_gradient");
    double f_plus = f.evaluate(x + c_perturb * delta);
    double f_minus = f.evaluate(x - c_perturb * delta);
    double scale = (f_plus - f_minus) / (2.0 * c_perturb);
    // delta_i = +-1, so dividing by delta_i equals multiplying by it.
    Vec g = scale * delta;
    require_finite(g, "spsa_gradient");
    return g;
}

Vec spsa_gradient(Objective &f, const Vec &x, double c_perturb,
                  RngStream &stream)
{
    Vec delta(x.size());
    for (int i = 0; i < x.size(); ++i)
        delta[i] = stream.next_sign();
    return spsa_gradient(f, x, c_perturb, delta);
}

double spsa_perturbation_at(double c0, long t)
{
    return c0 / std::pow(static_cast<double>(t) + 1.0, 0.101);
}

double spsa_step_at(double a0, long t)
{
    return a0 / std::pow(static_cast<double>(t) + 1.0, 0.602);
}

} // namespace swarmgrad
