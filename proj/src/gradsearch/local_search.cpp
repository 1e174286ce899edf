#include "swarmgrad/gradsearch/local_search.hpp"

namespace swarmgrad {

LocalResult local_search(LocalMethod method, Objective &f, const Vec &x0,
                         const EvalBudget &budget, const LineSearchParams &ls,
                         double grad_tol, const ImprovementCallback &on_improve)
{
    require_finite(x0, "local_search start");
    const long long start_evals = f.eval_count();
    auto used = [&] { return f.eval_count() - start_evals; };

    LocalResult res;
    double fx = f.evaluate(x0);
    res.x = x0;
    res.value = fx;
    if (on_improve)
        on_improve(fx, used());

    Vec x = x0;
    QuasiNewtonState qn(f.dim());
    CgState cg;

    for (long iter = 0; iter < budget.max_iters; ++iter)
    {
        // A gradient plus at least one trial evaluation must fit.
        if (budget.max_evals - used() < f.gradient_eval_cost() + 1)
            break;

        Vec g = f.gradient(x);
        double gnorm = g.lpNorm<Eigen::Infinity>();
        // An exactly stationary point admits no descent direction, so stop
        // there even under grad_tol = 0 (refine-until-budget mode).
        if (gnorm < grad_tol || gnorm == 0.0)
        {
            res.converged = true;
            break;
        }

        Vec d;
        switch (method)
        {
        case LocalMethod::sd:
            d = -g;
            break;
        case LocalMethod::newton:
        {
            auto nd = try_newton_direction(g, f.hessian(x));
            d = nd ? std::move(*nd) : Vec(-g); // fall back on bad Hessians
            if (!(g.dot(d) < 0))
                d = -g;
            break;
        }
        case LocalMethod::bfgs:
            qn = bfgs_update(std::move(qn), x, g);
            d = -(qn.inv_hessian * g);
            if (!(g.dot(d) < 0))
                d = -g;
            break;
        case LocalMethod::cg:
        {
            auto [dir, next] = cg_direction(std::move(cg), g);
            d = std::move(dir);
            cg = std::move(next);
            break;
        }
        }

        long long remaining = budget.max_evals - used();
        if (remaining <= 0)
            break;
        ArmijoResult step = armijo_backtrack(f, x, d, g, fx, ls, remaining);
        res.iterations = iter + 1;
        if (!step.sufficient)
            break; // budget exhausted or no decrease within max_backtracks

        x += step.eta * d;
        require_finite(x, "local_search iterate");
        fx = step.f_new;
        if (fx < res.value)
        {
            res.x = x;
            res.value = fx;
            if (on_improve)
                on_improve(fx, used());
        }
    }

    res.evals_used = used();
    return res;
}

} // namespace swarmgrad
