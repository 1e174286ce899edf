#pragma once

#include "swarmgrad/core/objective.hpp"
#include "swarmgrad/core/vec.hpp"
#include "swarmgrad/gradsearch/line_search.hpp"

#include <optional>
#include <stdexcept>

namespace swarmgrad {

/// Thrown by newton_step when the Hessian is singular or not positive
/// definite. Drivers fall back to a steepest-descent step instead.
struct HessianUnusable : std::runtime_error
{
    HessianUnusable() : std::runtime_error("hessian_unusable") {}
};

/// x' = x - eta * grad.
Vec steepest_descent_step(const Vec &x, const Vec &grad, double eta);

/// -H^{-1} grad via Cholesky; nullopt when H is not usable.
std::optional<Vec> try_newton_direction(const Vec &grad, const Mat &hessian);

/// x' = x - eta * H^{-1} grad, solved as a linear system. Throws
/// HessianUnusable when H is singular or not positive definite.
Vec newton_step(const Vec &x, const Vec &grad, const Mat &hessian,
                double eta = 1.0);

/// Inverse-Hessian approximation satisfying the secant equation B y = s.
struct QuasiNewtonState
{
    Mat inv_hessian;   ///< B, symmetric
    Vec prev_x;
    Vec prev_grad;
    bool has_prev = false;
    bool last_update_skipped = false;

    explicit QuasiNewtonState(int dim) : inv_hessian(Mat::Identity(dim, dim))
    {
    }
};

/// BFGS update of the inverse-Hessian approximation:
///   s = x_new - prev_x,  y = grad_new - prev_grad,  rho = 1/(y.s)
///   B' = (I - rho s y^T) B (I - rho y s^T) + rho s s^T
/// When the curvature condition y.s > 1e-12 fails the update is skipped
/// and B resets to the identity (last_update_skipped is set). Afterwards
/// prev_x / prev_grad always hold (x_new, grad_new).
QuasiNewtonState bfgs_update(QuasiNewtonState state, const Vec &x_new,
                             const Vec &grad_new);

/// Fletcher-Reeves conjugate-gradient state. Restarts (direction reset to
/// -grad) every dim iterations and whenever beta would be non-finite.
struct CgState
{
    Vec prev_direction;
    double prev_grad_sqnorm = 0.0;
    int iters_since_restart = 0;
};

/// Next search direction p = -grad + beta * prev_direction (beta = 0 on the
/// first call and on restart), plus the state to carry into the next
/// iteration. Falls back to -grad whenever p would not be a descent
/// direction.
std::pair<Vec, CgState> cg_direction(CgState state, const Vec &grad);

struct CgStepResult
{
    Vec x_new;
    double f_new = 0.0;
    CgState state;
    bool converged = false;   ///< gradient vanished, no step taken
    bool step_taken = false;
    long long evals_used = 0;
};

/// One nonlinear CG iteration: p = -grad + beta * prev_direction with
/// beta = |grad|^2 / prev_grad_sqnorm, step length by Armijo backtracking.
CgStepResult cg_step(CgState state, const Vec &x, const Vec &grad,
                     Objective &f, const LineSearchParams &ls,
                     long long max_evals = LLONG_MAX);

/// Exact minimizing step length along p for the quadratic with Hessian H:
/// eta = (g.g) / (p^T H p).
double quadratic_exact_step(const Vec &grad, const Vec &direction,
                            const Mat &hessian);

/// Fletcher-Reeves CG on the quadratic f = 0.5 x^T A x + b^T x with the
/// exact step length; terminates when |grad|_inf < tol or after max_iters.
/// Returns (x, iterations used).
std::pair<Vec, int> cg_minimize_quadratic(const Mat &A, const Vec &b, Vec x,
                                          int max_iters, double tol);

} // namespace swarmgrad
