#include "swarmgrad/gradsearch/descent.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace swarmgrad {

Vec steepest_descent_step(const Vec &x, const Vec &grad, double eta)
{
    if (!(eta > 0))
        throw std::invalid_argument("steepest_descent_step: eta must be > 0");
    require_same_dim(x, grad, "steepest_descent_step");
    Vec x_new = x - eta * grad;
    require_finite(x_new, "steepest_descent_step");
    return x_new;
}

std::optional<Vec> try_newton_direction(const Vec &grad, const Mat &hessian)
{
    if (hessian.rows() != grad.size() || hessian.cols() != grad.size())
        throw std::invalid_argument("newton: Hessian dimension mismatch");
    Eigen::LLT<Mat> llt(hessian);
    if (llt.info() != Eigen::Success)
        return std::nullopt;
    Vec d = -llt.solve(grad);
    if (!d.allFinite())
        return std::nullopt;
    return d;
}

Vec newton_step(const Vec &x, const Vec &grad, const Mat &hessian, double eta)
{
    if (!(eta > 0))
        throw std::invalid_argument("newton_step: eta must be > 0");
    auto d = try_newton_direction(grad, hessian);
    if (!d)
        throw HessianUnusable();
    Vec x_new = x + eta * (*d);
    require_finite(x_new, "newton_step");
    return x_new;
}

QuasiNewtonState bfgs_update(QuasiNewtonState state, const Vec &x_new,
                             const Vec &grad_new)
{
    const int d = static_cast<int>(x_new.size());
    state.last_update_skipped = false;
    if (state.has_prev)
    {
        Vec s = x_new - state.prev_x;
        Vec y = grad_new - state.prev_grad;
        double sy = y.dot(s);
        if (sy <= 1e-12)
        {
            state.inv_hessian = Mat::Identity(d, d);
            state.last_update_skipped = true;
        }
        else
        {
            double rho = 1.0 / sy;
            Mat w = Mat::Identity(d, d) - rho * s * y.transpose();
            state.inv_hessian = w * state.inv_hessian * w.transpose() +
                                rho * s * s.transpose();
            // Kill symmetric round-off drift.
            state.inv_hessian =
                0.5 * (state.inv_hessian + state.inv_hessian.transpose())
                    .eval();
        }
    }
    state.prev_x = x_new;
    state.prev_grad = grad_new;
    state.has_prev = true;
    return state;
}

std::pair<Vec, CgState> cg_direction(CgState state, const Vec &grad)
{
    const int d = static_cast<int>(grad.size());
    double gsq = grad.squaredNorm();
    Vec p;
    bool restart = state.prev_grad_sqnorm <= 0.0 ||
                   state.iters_since_restart >= d;
    if (!restart)
    {
        double beta = gsq / state.prev_grad_sqnorm;
        if (!std::isfinite(beta))
            restart = true;
        else
            p = -grad + beta * state.prev_direction;
    }
    if (restart || !(grad.dot(p) < 0))
    {
        p = -grad;
        state.iters_since_restart = 0;
    }
    return {p, CgState{p, gsq, state.iters_since_restart + 1}};
}

CgStepResult cg_step(CgState state, const Vec &x, const Vec &grad,
                     Objective &f, const LineSearchParams &ls,
                     long long max_evals)
{
    CgStepResult res;
    if (grad.squaredNorm() == 0.0)
    {
        res.x_new = x;
        res.state = std::move(state);
        res.converged = true;
        return res;
    }

    auto [p, next_state] = cg_direction(std::move(state), grad);

    double fx = f.evaluate(x);
    ++res.evals_used;
    ArmijoResult ls_res =
        armijo_backtrack(f, x, p, grad, fx, ls,
                         max_evals > res.evals_used ? max_evals - res.evals_used
                                                    : 0);
    res.evals_used += ls_res.evals_used;
    if (ls_res.sufficient)
    {
        res.x_new = x + ls_res.eta * p;
        res.f_new = ls_res.f_new;
        res.step_taken = true;
    }
    else
    {
        res.x_new = x;
        res.f_new = fx;
    }
    res.state = std::move(next_state);
    return res;
}

double quadratic_exact_step(const Vec &grad, const Vec &direction,
                            const Mat &hessian)
{
    double denom = direction.dot(hessian * direction);
    if (!(denom > 0))
        throw std::invalid_argument(
            "quadratic_exact_step: direction has non-positive curvature");
    return grad.squaredNorm() / denom;
}

std::pair<Vec, int> cg_minimize_quadratic(const Mat &A, const Vec &b, Vec x,
                                          int max_iters, double tol)
{
    Vec g = A * x + b;
    Vec p;
    double prev_gsq = 0.0;
    int iter = 0;
    for (; iter < max_iters; ++iter)
    {
        if (g.lpNorm<Eigen::Infinity>() < tol)
            break;
        double gsq = g.squaredNorm();
        if (iter == 0)
            p = -g;
        else
            p = -g + (gsq / prev_gsq) * p;
        double eta = quadratic_exact_step(g, p, A);
        x += eta * p;
        prev_gsq = gsq;
        g = A * x + b;
    }
    return {x, iter};
}

} // namespace swarmgrad
