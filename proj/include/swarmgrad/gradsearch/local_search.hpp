#pragma once

#include "swarmgrad/core/budget.hpp"
#include "swarmgrad/core/objective.hpp"
#include "swarmgrad/gradsearch/descent.hpp"
#include "swarmgrad/gradsearch/line_search.hpp"

#include <functional>

namespace swarmgrad {

enum class LocalMethod
{
    sd,     ///< steepest descent with Armijo backtracking
    newton, ///< Newton direction, steepest-descent fallback on bad Hessians
    bfgs,   ///< BFGS inverse-Hessian approximation
    cg      ///< Fletcher-Reeves nonlinear conjugate gradient
};

struct LocalResult
{
    Vec x;
    double value = 0.0;
    long long evals_used = 0;
    long iterations = 0;
    bool converged = false; ///< |grad|_inf dropped below grad_tol
};

/// Called whenever the best-so-far value improves: (value, evals spent so
/// far within this search).
using ImprovementCallback = std::function<void(double, long long)>;

/// Iterative descent from x0 until |grad|_inf < grad_tol or the budget is
/// exhausted. Always returns the best point visited, so
/// result.value <= f(x0) holds exactly. The initial f(x0) evaluation is
/// performed even under a zero budget (it is the returned value).
LocalResult local_search(LocalMethod method, Objective &f, const Vec &x0,
                         const EvalBudget &budget,
                         const LineSearchParams &ls = {},
                         double grad_tol = 1e-8,
                         const ImprovementCallback &on_improve = nullptr);

} // namespace swarmgrad
