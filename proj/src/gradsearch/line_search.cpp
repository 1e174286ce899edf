#include "swarmgrad/gradsearch/line_search.hpp"

#include <stdexcept>

namespace swarmgrad {

ArmijoResult armijo_backtrack(Objective &f, const Vec &x, const Vec &direction,
                              const Vec &grad, double fx,
                              const LineSearchParams &params,
                              long long max_evals)
{
    require_same_dim(x, direction, "armijo_backtrack");
    double gd = grad.dot(direction);
    if (!(gd < 0))
        throw std::invalid_argument(
            "armijo_backtrack: not a descent direction");

    ArmijoResult res;
    double eta = params.eta0;
    for (int k = 0; k < params.max_backtracks; ++k)
    {
        if (res.evals_used >= max_evals)
        {
            res.eta = eta;
            res.backtracks = k;
            return res;
        }
        double f_try = f.evaluate(x + eta * direction);
        ++res.evals_used;
        res.f_new = f_try;
        if (f_try <= fx + params.armijo_c * eta * gd)
        {
            res.eta = eta;
            res.backtracks = k;
            res.sufficient = true;
            return res;
        }
        eta *= params.shrink;
    }
    // No sufficient decrease within max_backtracks shrinks.
    res.eta = eta;
    res.backtracks = params.max_backtracks;
    return res;
}

} // namespace swarmgrad
