#pragma once

#include "swarmgrad/core/objective.hpp"
#include "swarmgrad/core/vec.hpp"

#include <climits>

namespace swarmgrad {

struct LineSearchParams
{
    double eta0 = 1.0;        ///< initial trial step, > 0
    double shrink = 0.5;      ///< backtracking factor, in (0,1)
    double armijo_c = 1e-4;   ///< sufficient-decrease constant, in (0,1)
    int max_backtracks = 40;
};

struct ArmijoResult
{
    double eta = 0.0;     ///< accepted step, or eta0*shrink^max_backtracks
    double f_new = 0.0;   ///< objective at the last trial point
    int backtracks = 0;   ///< shrinks performed before acceptance
    bool sufficient = false;
    long long evals_used = 0;
};

/// Backtracking line search for the Armijo condition
///   f(x + eta*d) <= fx + armijo_c * eta * (grad . d).
/// fx is the caller's value at x (saves one evaluation). Trials stop early
/// once max_evals objective evaluations have been spent; the result then
/// carries sufficient = false. Throws std::invalid_argument when d is not
/// a descent direction (grad . d >= 0).
ArmijoResult armijo_backtrack(Objective &f, const Vec &x, const Vec &direction,
                              const Vec &grad, double fx,
                              const LineSearchParams &params,
                              long long max_evals = LLONG_MAX);

} // namespace swarmgrad
