#include "swarmgrad/core/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace swarmgrad {

Objective::Objective(std::string name, Vec lower, Vec upper, EvalFn f,
                     GradFn grad, HessFn hess)
    : name_(std::move(name)), lower_(std::move(lower)),
      upper_(std::move(upper)), eval_(std::move(f)), grad_(std::move(grad)),
      hess_(std::move(hess))
{
    if (lower_.size() != upper_.size() || lower_.size() == 0)
        throw std::invalid_argument("objective bounds: dimension mismatch");
    for (int i = 0; i < lower_.size(); ++i)
        if (!(lower_[i] < upper_[i]))
            throw std::invalid_argument("objective bounds: lo < hi violated");
    if (!eval_)
        throw std::invalid_argument("objective: missing evaluator");
}

bool Objective::in_bounds(const Vec &x) const
{
    return (x.array() >= lower_.array()).all() &&
           (x.array() <= upper_.array()).all();
}

double Objective::evaluate(const Vec &x)
{
    if (x.size() != lower_.size())
        throw std::invalid_argument("evaluate: dimension mismatch for " + name_);
    require_finite(x, "evaluate input");
    double v = eval_(x);
    ++eval_count_;
    if (noise_enabled_)
        v += noise_stream_.next_gaussian(0.0, noise_stddev_);
    require_finite(v, "evaluate result");
    return v;
}

Vec Objective::gradient(const Vec &x)
{
    if (x.size() != lower_.size())
        throw std::invalid_argument("gradient: dimension mismatch for " + name_);
    require_finite(x, "gradient input");
    if (grad_)
    {
        Vec g = grad_(x);
        require_finite(g, "gradient result");
        return g;
    }
    Vec steps = 1e-6 * x.array().abs().max(1.0);
    return fd_gradient_impl(x, steps);
}

Vec Objective::fd_gradient(const Vec &x, double h)
{
    if (!(h > 0))
        throw std::invalid_argument("fd_gradient: step h must be > 0");
    if (x.size() != lower_.size())
        throw std::invalid_argument("fd_gradient: dimension mismatch");
    return fd_gradient_impl(x, Vec::Constant(x.size(), h));
}

Vec Objective::fd_gradient_impl(const Vec &x, const Vec &steps)
{
    const int d = dim();
    Vec g(d);
    Vec probe = x;
    for (int i = 0; i < d; ++i)
    {
        double xi = x[i];
        double hi = std::min(xi + steps[i], upper_[i]);
        double lo = std::max(xi - steps[i], lower_[i]);
        probe[i] = hi;
        double f_hi = evaluate(probe);
        probe[i] = lo;
        double f_lo = evaluate(probe);
        probe[i] = xi;
        g[i] = (f_hi - f_lo) / (hi - lo);
    }
    require_finite(g, "fd gradient result");
    return g;
}

Mat Objective::hessian(const Vec &x) const
{
    if (!hess_)
        throw std::logic_error("objective " + name_ + " has no Hessian");
    if (x.size() != lower_.size())
        throw std::invalid_argument("hessian: dimension mismatch for " + name_);
    return hess_(x);
}

void Objective::set_known_optimum(double value, Vec location)
{
    known_optimum_ = std::make_pair(value, std::move(location));
}

void Objective::configure_noise(double stddev, std::uint64_t seed)
{
    noise_stddev_ = stddev;
    noise_stream_ = RngStream(seed);
    noise_enabled_ = stddev > 0;
}

} // namespace swarmgrad
