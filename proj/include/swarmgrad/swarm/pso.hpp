#pragma once

#include <utility>
#include <vector>

#include "swarmgrad/core/budget.hpp"
#include "swarmgrad/core/objective.hpp"
#include "swarmgrad/core/rng.hpp"
#include "swarmgrad/core/vec.hpp"

namespace swarmgrad {

struct Particle
{
    Vec x;
    Vec v;
    Vec pbest;
    double pbest_value = std::numeric_limits<double>::infinity();
};

// Each particle owns a derived RNG stream so draw order is independent of
// how the per-particle loop is scheduled.
struct SwarmState
{
    std::vector<Particle> particles;
    std::vector<RngStream> streams;
    Vec gbest;
    double gbest_value = std::numeric_limits<double>::infinity();
    long iteration = 0;

    int size() const { return static_cast<int>(particles.size()); }
};

enum class Topology
{
    global,
    ring
};

struct PsoParams
{
    double omega = 0.729;
    double c1 = 1.49445;
    double c2 = 1.49445;
    bool use_constriction = false; // phi * [V + c1 r1 (P-X) + c2 r2 (G-X)]
    double phi = 0.7298;
    double vmax_fraction = 0.5; // Vmax = fraction * range, per dimension
    Topology topology = Topology::global;
    int ring_k = 1;          // neighbors on each side
    bool per_dim_rand = true; // false: one scalar r1, r2 per update
    bool omega_ramp = false; // linear 0.9 -> 0.4 over ramp_horizon iterations
    long ramp_horizon = 0;   // 0: runner fills in from the budget

    Vec vmax_vector(const Objective &f) const { return vmax_fraction * f.range(); }
    double effective_omega(long t) const;
};

// Constriction presets c1 = c2 = 2.05, phi = 0.7298. The inertia defaults
// above follow the equivalent Clerc settings.
PsoParams constriction_defaults(PsoParams base = {});

SwarmState init_swarm(Objective &f, int np, const PsoParams &params, const RngStream &stream);

// Positions N(center, sigma^2) per dimension, clamped to bounds. Used by the
// repulsion strategy's local-start phase.
SwarmState init_swarm_gaussian(Objective &f, int np, const PsoParams &params,
                               const RngStream &stream, const Vec &center, double sigma);

// Draws r1 fully, then r2. With per_dim false both are scalar draws
// broadcast across dimensions. Every velocity rule goes through this helper
// so draw order stays comparable across strategies.
std::pair<Vec, Vec> draw_uniform_pair(RngStream &stream, int dim, bool per_dim);

// Velocity update with explicit random vectors (formula only, no clamping).
Vec pso_velocity(const Particle &p, const Vec &nbest, const PsoParams &params,
                 const Vec &r1, const Vec &r2);

// Draws r1 fully, then r2 (or two scalars when per_dim_rand is off) and
// applies the +-Vmax clamp.
Vec pso_velocity(const Particle &p, const Vec &nbest, const PsoParams &params,
                 RngStream &stream, const Vec &vmax);

Vec neighborhood_best(const SwarmState &state, const PsoParams &params, int i);

// (1/(Np*|L|)) * sum_i ||x_i - mean||_2 with |L| the bounds diagonal length.
double diversity(const SwarmState &state, const Objective &f);

void refresh_gbest(SwarmState &state);

// Writes a refined point into the pbest of the particle currently owning
// gbest, then re-reduces. Used when a local search sharpens the swarm best.
void install_into_gbest_owner(SwarmState &state, const Vec &x, double value);

// Migration: overwrite the worst pbest with a foreign best, then re-reduce.
void adopt_shared_best(SwarmState &state, const Vec &x, double value);

// Per-particle velocity policy. begin_iteration sees the swarm before any
// particle moves; extra_evals(i) is the evaluator cost of velocity(i) beyond
// the one position evaluation, so the engine can stop cleanly mid-iteration
// when the budget runs short.
class VelocityRule
{
public:
    virtual ~VelocityRule() = default;
    virtual void begin_iteration(SwarmState &, Objective &, const PsoParams &) {}
    virtual long long extra_evals(const SwarmState &, const Objective &, int) const { return 0; }
    virtual Vec velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                         const PsoParams &params) = 0;
};

class StandardVelocityRule final : public VelocityRule
{
public:
    Vec velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                 const PsoParams &params) override;
};

// One synchronous swarm iteration under the given rule: neighborhood bests
// are snapshotted first, each particle updates velocity/position/pbest in
// index order, then gbest is reduced once. Returns false if the remaining
// budget could not cover every particle (the swarm is left part-way through
// the iteration and the caller should stop).
bool coupled_iteration(SwarmState &state, Objective &f, const PsoParams &params,
                       VelocityRule &rule, long long evals_remaining);

// Standard PSO iteration (inertia or constriction form per params).
void step_swarm(SwarmState &state, Objective &f, const PsoParams &params);

} // namespace swarmgrad
