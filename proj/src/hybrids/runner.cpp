#include "swarmgrad/hybrids/runner.hpp"

#include <stdexcept>

#include "swarmgrad/hybrids/rules.hpp"
#include "swarmgrad/swarm/pso.hpp"

namespace swarmgrad {

RunRecorder::RunRecorder(RunResult &out, const RunContext &ctx) : out_(&out), ctx_(&ctx)
{
}

void RunRecorder::observe(long iter, long long evals, double value, double div)
{
    best_ = std::min(best_, value);
    bool force = false;
    if (ctx_->success_threshold && out_->evals_to_success < 0 &&
        best_ < *ctx_->success_threshold)
    {
        out_->evals_to_success = evals;
        force = true;
    }
    push(iter, evals, div, force);
}

void RunRecorder::finalize(long iter, long long evals, double value, double div)
{
    observe(iter, evals, value, div);
    push(iter, evals, div, true);
}

void RunRecorder::push(long iter, long long evals, double div, bool force)
{
    const int stride = std::max(1, ctx_->trace_stride);
    const bool due = out_->trace.empty() || iter % stride == 0 || force;
    if (!due)
        return;
    if (!out_->trace.empty() && evals <= out_->trace.back().evals)
    {
        TracePoint &last = out_->trace.back();
        last.gbest = std::min(last.gbest, best_);
        return;
    }
    out_->trace.push_back({iter, evals, best_, div});
}

long default_ramp_horizon(const RunContext &ctx)
{
    long by_evals = static_cast<long>(ctx.budget.max_evals / std::max(1, ctx.np));
    long horizon = by_evals;
    if (ctx.budget.max_iters < horizon)
        horizon = static_cast<long>(ctx.budget.max_iters);
    return std::max(1L, horizon);
}

RunResult run_coupled(const HybridSpec &spec, Objective &f, const RunContext &ctx,
                      const RngStream &stream)
{
    const long long start = f.eval_count();
    auto used = [&] { return f.eval_count() - start; };

    PsoParams params = spec.pso;
    if (params.omega_ramp && params.ramp_horizon <= 0)
        params.ramp_horizon = default_ramp_horizon(ctx);
    auto rule = make_rule(spec, f);

    SwarmState s = init_swarm(f, ctx.np, params, stream);
    RunResult res;
    RunRecorder rec(res, ctx);
    rec.observe(0, used(), s.gbest_value, diversity(s, f));

    while (s.iteration < ctx.budget.max_iters)
    {
        const long long remaining = ctx.budget.max_evals - used();
        if (remaining <= 0)
            break;
        const bool full = coupled_iteration(s, f, params, *rule, remaining);
        rec.observe(s.iteration, used(), s.gbest_value, diversity(s, f));
        if (!full)
            break;
    }

    res.best_x = s.gbest;
    res.best_value = s.gbest_value;
    res.evals_used = used();
    res.iterations = s.iteration;
    rec.finalize(s.iteration, res.evals_used, s.gbest_value, diversity(s, f));
    return res;
}

RunResult run_strategy(const HybridSpec &spec, Objective &f, const RunContext &ctx,
                       const RngStream &stream)
{
    switch (spec.kind)
    {
    case StrategyKind::gpso:
        return run_gpso(spec, f, ctx, stream);
    case StrategyKind::grpso:
        return run_grpso(spec, f, ctx, stream);
    case StrategyKind::two_phase:
        return run_two_phase(spec, f, ctx, stream);
    case StrategyKind::islands:
        return run_islands(spec, f, ctx, stream);
    default:
        return run_coupled(spec, f, ctx, stream);
    }
}

} // namespace swarmgrad
