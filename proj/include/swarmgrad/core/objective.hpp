#pragma once

#include "swarmgrad/core/rng.hpp"
#include "swarmgrad/core/vec.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>

namespace swarmgrad {

/// An evaluatable objective f(x) over a box-bounded search space.
///
/// Every call to evaluate() increments the evaluation counter by exactly
/// one; that counter is the unit all budgets are measured in. Analytic
/// gradients and Hessians do not touch the counter; the finite-difference
/// gradient fallback does (2*dim evaluations per call).
///
/// A handle is a value: copying gives an independent counter and noise
/// stream, so each worker can own its clone and counters are merged (or
/// simply asserted) at the join point.
class Objective
{
public:
    using EvalFn = std::function<double(const Vec &)>;
    using GradFn = std::function<Vec(const Vec &)>;
    using HessFn = std::function<Mat(const Vec &)>;

    Objective(std::string name, Vec lower, Vec upper, EvalFn f,
              GradFn grad = nullptr, HessFn hess = nullptr);

    const std::string &name() const { return name_; }
    int dim() const { return static_cast<int>(lower_.size()); }

    const Vec &lower() const { return lower_; }
    const Vec &upper() const { return upper_; }
    Vec range() const { return upper_ - lower_; }
    Vec midpoint() const { return 0.5 * (lower_ + upper_); }
    /// Length of the search-space main diagonal.
    double diagonal() const { return (upper_ - lower_).norm(); }

    bool in_bounds(const Vec &x) const;
    Vec clamp(const Vec &x) const { return clamp_to_box(x, lower_, upper_); }

    /// Evaluates f at x. Counter +1. Adds one draw of additive Gaussian
    /// noise when noise is configured and enabled.
    double evaluate(const Vec &x);

    /// Analytic gradient when available, otherwise central finite
    /// differences with step h_i = 1e-6 * max(1, |x_i|).
    Vec gradient(const Vec &x);

    /// Central differences with a fixed step h > 0. Probe points are
    /// clamped to the bounds and the actual probe separation is used as
    /// the denominator. Consumes 2*dim evaluations.
    Vec fd_gradient(const Vec &x, double h);

    bool has_analytic_gradient() const { return static_cast<bool>(grad_); }
    bool has_hessian() const { return static_cast<bool>(hess_); }
    /// Evaluations consumed by one gradient() call: 0 when analytic.
    long long gradient_eval_cost() const
    {
        return grad_ ? 0 : 2LL * dim();
    }

    /// Analytic Hessian; throws std::logic_error when none is defined.
    Mat hessian(const Vec &x) const;

    long long eval_count() const { return eval_count_; }
    void reset_eval_count() { eval_count_ = 0; }

    void set_known_optimum(double value, Vec location);
    bool has_known_optimum() const { return known_optimum_.has_value(); }
    double optimum_value() const { return known_optimum_->first; }
    const Vec &optimum_location() const { return known_optimum_->second; }

    /// Additive N(0, stddev) observation noise, drawn per evaluation from
    /// the handle's own stream. Off until configured.
    void configure_noise(double stddev, std::uint64_t seed);
    void set_noise_enabled(bool on) { noise_enabled_ = on && noise_stddev_ > 0; }
    bool noise_enabled() const { return noise_enabled_; }
    void reseed_noise(std::uint64_t seed) { noise_stream_ = RngStream(seed); }

private:
    Vec fd_gradient_impl(const Vec &x, const Vec &steps);

    std::string name_;
    Vec lower_, upper_;
    EvalFn eval_;
    GradFn grad_;
    HessFn hess_;
    std::optional<std::pair<double, Vec>> known_optimum_;
    long long eval_count_ = 0;

    double noise_stddev_ = 0.0;
    bool noise_enabled_ = false;
    RngStream noise_stream_{0};
};

} // namespace swarmgrad
