#include <cmath>
#include <stdexcept>

#include "swarmgrad/gradsearch/local_search.hpp"
#include "swarmgrad/hybrids/rules.hpp"
#include "swarmgrad/hybrids/runner.hpp"
#include "swarmgrad/swarm/pso.hpp"

namespace swarmgrad {

RunResult run_gpso(const HybridSpec &spec, Objective &f, const RunContext &ctx,
                   const RngStream &stream)
{
    if (spec.inner_pso_iters < 1)
        throw std::invalid_argument("gpso: inner_pso_iters must be >= 1");
    const long long start = f.eval_count();
    auto used = [&] { return f.eval_count() - start; };
    const long long local_budget = resolved_inner_local_evals(spec, f);
    if (local_budget < 1)
        throw std::invalid_argument("gpso: inner_local_evals must be >= 1");

    PsoParams params = spec.pso;
    if (params.omega_ramp && params.ramp_horizon <= 0)
        params.ramp_horizon = default_ramp_horizon(ctx);
    StandardVelocityRule rule;
    SwarmState s = init_swarm(f, ctx.np, params, stream);

    RunResult res;
    RunRecorder rec(res, ctx);
    rec.observe(0, used(), s.gbest_value, diversity(s, f));

    while (used() < ctx.budget.max_evals && s.iteration < ctx.budget.max_iters)
    {
        for (int it = 0; it < spec.inner_pso_iters; ++it)
        {
            if (s.iteration >= ctx.budget.max_iters)
                break;
            const long long remaining = ctx.budget.max_evals - used();
            if (remaining <= 0)
                break;
            if (!coupled_iteration(s, f, params, rule, remaining))
                break;
            rec.observe(s.iteration, used(), s.gbest_value, diversity(s, f));
        }

        const long long remaining = ctx.budget.max_evals - used();
        if (remaining <= 0)
            break;
        EvalBudget lb{std::min(local_budget, remaining), ctx.budget.max_iters};
        LocalResult lr = local_search(LocalMethod::bfgs, f, s.gbest, lb);
        if (lr.value < s.gbest_value)
            install_into_gbest_owner(s, lr.x, lr.value);
        rec.observe(s.iteration, used(), s.gbest_value, -1.0);
    }

    res.best_x = s.gbest;
    res.best_value = s.gbest_value;
    res.evals_used = used();
    res.iterations = s.iteration;
    rec.finalize(s.iteration, res.evals_used, s.gbest_value, -1.0);
    return res;
}

RunResult run_grpso(const HybridSpec &spec, Objective &f, const RunContext &ctx,
                    const RngStream &stream)
{
    const long long start = f.eval_count();
    auto used = [&] { return f.eval_count() - start; };
    const double radius = resolved_repulsion_radius(spec, f);
    const long long local_budget = std::max(1LL, resolved_inner_local_evals(spec, f));

    PsoParams params = spec.pso;
    if (params.omega_ramp && params.ramp_horizon <= 0)
        params.ramp_horizon = default_ramp_horizon(ctx);

    LocalMinimaArchive archive(radius);
    RepulsionPsoRule rule(archive, radius, spec.repulsion_gain);
    RngStream start_stream = stream.derive("gaussian_starts");
    RngStream swarm_stream = stream.derive("swarm");

    const Vec sigma0 = 0.2 * f.range(); // per-dimension start spread
    double sigma_scale = 1.0;           // halved on every archive hit
    Vec center = f.midpoint();

    RunResult res;
    RunRecorder rec(res, ctx);
    std::optional<SwarmState> swarm;
    long iters = 0;

    auto track = [&](const Vec &x, double value, double div) {
        if (value < res.best_value)
        {
            res.best_value = value;
            res.best_x = x;
        }
        rec.observe(iters, used(), res.best_value, div);
    };

    while (used() < ctx.budget.max_evals)
    {
        // Gaussian start around the best known center, then descend.
        Vec x0(f.dim());
        for (int j = 0; j < f.dim(); ++j)
            x0[j] = center[j] + sigma_scale * sigma0[j] * start_stream.next_gaussian();
        x0 = f.clamp(x0);

        long long remaining = ctx.budget.max_evals - used();
        LocalResult lr = local_search(LocalMethod::bfgs, f, x0,
                                      EvalBudget{std::min(local_budget, remaining),
                                                 ctx.budget.max_iters});
        if (archive.insert(lr.x, lr.value))
            sigma_scale *= 0.5;
        track(lr.x, lr.value, -1.0);

        // PSO block with repulsion from the archived minima.
        remaining = ctx.budget.max_evals - used();
        if (remaining <= 0)
            break;
        if (!swarm && remaining >= ctx.np)
            swarm = init_swarm(f, ctx.np, params, swarm_stream);
        if (swarm)
        {
            track(swarm->gbest, swarm->gbest_value, diversity(*swarm, f));
            for (int it = 0; it < spec.inner_pso_iters; ++it)
            {
                if (iters >= ctx.budget.max_iters)
                    break;
                remaining = ctx.budget.max_evals - used();
                if (remaining <= 0)
                    break;
                if (!coupled_iteration(*swarm, f, params, rule, remaining))
                    break;
                iters = swarm->iteration;
                track(swarm->gbest, swarm->gbest_value, diversity(*swarm, f));
            }
            center = swarm->gbest;
        }
        else
        {
            center = res.best_x;
        }
    }

    res.evals_used = used();
    res.iterations = iters;
    rec.finalize(iters, res.evals_used, res.best_value, -1.0);
    return res;
}

RunResult run_two_phase(const HybridSpec &spec, Objective &f, const RunContext &ctx,
                        const RngStream &stream)
{
    if (!(spec.phase_split > 0.0 && spec.phase_split < 1.0))
        throw std::invalid_argument("two_phase: phase_split must lie in (0,1)");
    const long long start = f.eval_count();

    HybridSpec pso_spec = spec;
    pso_spec.kind = StrategyKind::standard_pso;
    RunContext phase1 = ctx;
    phase1.budget.max_evals = static_cast<long long>(
        std::floor(spec.phase_split * static_cast<double>(ctx.budget.max_evals)));

    RunResult res = run_coupled(pso_spec, f, phase1, stream);

    const long long remaining = ctx.budget.max_evals - res.evals_used;
    if (remaining < 1)
    {
        res.notes.push_back("refinement phase skipped: no evaluations left");
        return res;
    }

    const long long phase1_evals = res.evals_used;
    auto on_improve = [&](double value, long long evals_in_search) {
        if (ctx.success_threshold && res.evals_to_success < 0 && value < *ctx.success_threshold)
            res.evals_to_success = phase1_evals + evals_in_search;
    };
    // grad_tol 0: the refinement phase exists to spend the remaining budget,
    // so it must not stop at a tolerance the swarm phase could beat.
    LocalResult lr = local_search(LocalMethod::bfgs, f, res.best_x,
                                  EvalBudget{remaining, ctx.budget.max_iters}, {}, 0.0,
                                  on_improve);
    if (lr.value < res.best_value)
    {
        res.best_value = lr.value;
        res.best_x = lr.x;
    }
    res.evals_used = f.eval_count() - start;
    res.iterations += lr.iterations;

    if (!res.trace.empty() && res.evals_used > res.trace.back().evals)
        res.trace.push_back({res.iterations, res.evals_used,
                             std::min(res.best_value, res.trace.back().gbest), -1.0});
    return res;
}

} // namespace swarmgrad
