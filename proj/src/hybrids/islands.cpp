#include <optional>
#include <stdexcept>

#include "swarmgrad/gradsearch/local_search.hpp"
#include "swarmgrad/hybrids/rules.hpp"
#include "swarmgrad/hybrids/runner.hpp"
#include "swarmgrad/swarm/pso.hpp"

namespace swarmgrad {

namespace {

struct Island
{
    bool is_pso = false;
    long long budget = 0; // evaluations this island may still spend
    bool exhausted = false;

    // PSO islands
    std::optional<SwarmState> swarm;

    // multistart islands
    RngStream starts{0};
    Vec best_x;
    double best_value = std::numeric_limits<double>::infinity();

    double current_best() const
    {
        return is_pso ? swarm->gbest_value : best_value;
    }
    const Vec &current_best_x() const
    {
        return is_pso ? swarm->gbest : best_x;
    }
};

} // namespace

RunResult run_islands(const HybridSpec &spec, Objective &f, const RunContext &ctx,
                      const RngStream &stream)
{
    const int n = spec.islands;
    const int k = spec.exchange_period;
    if (n < 1)
        throw std::invalid_argument("islands: island count must be >= 1");
    if (k < 1)
        throw std::invalid_argument("islands: exchange_period must be >= 1");

    const long long start = f.eval_count();
    auto used = [&] { return f.eval_count() - start; };
    const long long local_budget = std::max(1LL, resolved_inner_local_evals(spec, f));

    PsoParams params = spec.pso;
    if (params.omega_ramp && params.ramp_horizon <= 0)
        params.ramp_horizon = default_ramp_horizon(ctx);

    // Even islands run PSO, odd islands run multistart local searches; the
    // evaluation budget is split evenly (remainder to the low indices).
    std::vector<Island> islands(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
    {
        Island &isl = islands[static_cast<std::size_t>(i)];
        isl.is_pso = (i % 2 == 0);
        isl.budget = ctx.budget.max_evals / n + (i < ctx.budget.max_evals % n ? 1 : 0);
        RngStream st = stream.derive(static_cast<std::uint64_t>(i));
        if (isl.is_pso)
        {
            if (isl.budget >= ctx.np)
            {
                const long long before = f.eval_count();
                isl.swarm = init_swarm(f, ctx.np, params, st);
                isl.budget -= f.eval_count() - before;
            }
            else
            {
                isl.exhausted = true;
            }
        }
        else
        {
            isl.starts = st;
        }
    }

    RunResult res;
    RunRecorder rec(res, ctx);
    StandardVelocityRule pso_rule;

    Vec shared_x;
    double shared_value = std::numeric_limits<double>::infinity();
    auto publish = [&](const Vec &x, double value) {
        if (value < shared_value)
        {
            shared_value = value;
            shared_x = x;
        }
    };
    for (const Island &isl : islands)
        if (isl.is_pso && isl.swarm)
            publish(isl.swarm->gbest, isl.swarm->gbest_value);

    auto logical_iter = [&] {
        long it = 0;
        for (const Island &isl : islands)
            if (isl.is_pso && isl.swarm)
                it = std::max(it, isl.swarm->iteration);
        return it;
    };
    auto trace_diversity = [&]() -> double {
        if (n == 1 && islands[0].is_pso && islands[0].swarm)
            return diversity(*islands[0].swarm, f);
        return -1.0;
    };

    if (shared_value < std::numeric_limits<double>::infinity())
        rec.observe(0, used(), shared_value, trace_diversity());

    bool any_active = false;
    for (const Island &isl : islands)
        any_active = any_active || !isl.exhausted;

    while (any_active)
    {
        for (Island &isl : islands)
        {
            if (isl.exhausted)
                continue;
            if (isl.is_pso)
            {
                for (int it = 0; it < k; ++it)
                {
                    if (isl.budget <= 0 || isl.swarm->iteration >= ctx.budget.max_iters)
                    {
                        isl.exhausted = true;
                        break;
                    }
                    const long long before = f.eval_count();
                    const bool full = coupled_iteration(*isl.swarm, f, params, pso_rule,
                                                        isl.budget);
                    isl.budget -= f.eval_count() - before;
                    if (!full)
                    {
                        isl.exhausted = true;
                        break;
                    }
                }
            }
            else
            {
                // One round's slice mirrors a PSO island's consumption.
                long long slice = std::min<long long>(isl.budget,
                                                      static_cast<long long>(k) * ctx.np);
                while (slice > 0)
                {
                    Vec x0(f.dim());
                    for (int j = 0; j < f.dim(); ++j)
                        x0[j] = f.lower()[j] + isl.starts.next_uniform() * f.range()[j];
                    const long long before = f.eval_count();
                    LocalResult lr = local_search(
                        LocalMethod::bfgs, f, x0,
                        EvalBudget{std::min(local_budget, slice), ctx.budget.max_iters});
                    const long long spent = f.eval_count() - before;
                    slice -= spent;
                    isl.budget -= spent;
                    if (lr.value < isl.best_value)
                    {
                        isl.best_value = lr.value;
                        isl.best_x = lr.x;
                    }
                }
                if (isl.budget <= 0)
                    isl.exhausted = true;
            }
        }

        // Synchronous exchange: publish all bests, then adopt if better.
        for (const Island &isl : islands)
        {
            if (isl.is_pso && isl.swarm)
                publish(isl.swarm->gbest, isl.swarm->gbest_value);
            else if (!isl.is_pso && isl.best_value < std::numeric_limits<double>::infinity())
                publish(isl.best_x, isl.best_value);
        }
        for (Island &isl : islands)
        {
            if (isl.is_pso && isl.swarm && shared_value < isl.swarm->gbest_value)
                adopt_shared_best(*isl.swarm, shared_x, shared_value);
            else if (!isl.is_pso && shared_value < isl.best_value)
            {
                isl.best_value = shared_value;
                isl.best_x = shared_x;
            }
        }

        rec.observe(logical_iter(), used(), shared_value, trace_diversity());

        any_active = false;
        for (const Island &isl : islands)
            any_active = any_active || !isl.exhausted;
    }

    res.best_x = shared_x;
    res.best_value = shared_value;
    res.evals_used = used();
    res.iterations = logical_iter();
    rec.finalize(res.iterations, res.evals_used, res.best_value, trace_diversity());
    return res;
}

} // namespace swarmgrad
