#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "swarmgrad/core/budget.hpp"
#include "swarmgrad/core/objective.hpp"
#include "swarmgrad/core/rng.hpp"
#include "swarmgrad/hybrids/spec.hpp"

namespace swarmgrad {

struct TracePoint
{
    long iter = 0;
    long long evals = 0;
    double gbest = 0.0;
    double diversity = -1.0; // -1: not meaningful (pure local phases)
};

struct RunResult
{
    Vec best_x;
    double best_value = std::numeric_limits<double>::infinity();
    long long evals_used = 0;
    long iterations = 0;
    std::vector<TracePoint> trace;
    std::vector<std::string> notes;
    long long evals_to_success = -1; // -1: threshold never crossed
};

struct RunContext
{
    int np = 30;
    EvalBudget budget{};
    std::optional<double> success_threshold; // success: best strictly below
    int trace_stride = 10;
};

// Builds the trace directly into a RunResult: the first observation, every
// trace_stride-th iteration, threshold crossings, and the final state.
// Recorded evals are strictly increasing (same-evals observations merge into
// the previous point) and the recorded best is the running minimum.
class RunRecorder
{
public:
    RunRecorder(RunResult &out, const RunContext &ctx);
    void observe(long iter, long long evals, double value, double div);
    // Forces a final point; call once when the run ends.
    void finalize(long iter, long long evals, double value, double div);

private:
    void push(long iter, long long evals, double div, bool force);

    RunResult *out_;
    const RunContext *ctx_;
    double best_ = std::numeric_limits<double>::infinity();
};

// Iterations the budget roughly affords; used when omega_ramp is on but no
// horizon was configured.
long default_ramp_horizon(const RunContext &ctx);

// Coupled strategies: one swarm, one velocity rule, budget enforced inside
// the iteration loop.
RunResult run_coupled(const HybridSpec &spec, Objective &f, const RunContext &ctx,
                      const RngStream &stream);

// Alternates blocks of PSO iterations with a quasi-Newton refinement of
// gbest; improvements are installed into the owning particle.
RunResult run_gpso(const HybridSpec &spec, Objective &f, const RunContext &ctx,
                   const RngStream &stream);

// Gaussian-start local searches feeding a minima archive, interleaved with a
// PSO whose particles are repelled from archived minima.
RunResult run_grpso(const HybridSpec &spec, Objective &f, const RunContext &ctx,
                    const RngStream &stream);

// Standard PSO for phase_split of the budget, then one local refinement of
// the phase-1 best with the remainder.
RunResult run_two_phase(const HybridSpec &spec, Objective &f, const RunContext &ctx,
                        const RngStream &stream);

// Synchronous island model: even islands run standard PSO, odd islands run
// multistart local searches; bests are exchanged every exchange_period
// iterations through an adopt-if-better cell. Deterministic for fixed
// island streams.
RunResult run_islands(const HybridSpec &spec, Objective &f, const RunContext &ctx,
                      const RngStream &stream);

// Dispatch on spec.kind.
RunResult run_strategy(const HybridSpec &spec, Objective &f, const RunContext &ctx,
                       const RngStream &stream);

} // namespace swarmgrad
