#include "swarmgrad/swarm/pso.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace swarmgrad {

double PsoParams::effective_omega(long t) const
{
    if (!omega_ramp || ramp_horizon <= 0)
        return omega;
    double frac = std::min(1.0, static_cast<double>(t) / static_cast<double>(ramp_horizon));
    return 0.9 - (0.9 - 0.4) * frac;
}

PsoParams constriction_defaults(PsoParams base)
{
    base.use_constriction = true;
    base.phi = 0.7298;
    base.c1 = 2.05;
    base.c2 = 2.05;
    return base;
}

namespace {

template <typename PositionFill>
SwarmState init_swarm_impl(Objective &f, int np, const PsoParams &params,
                           const RngStream &stream, PositionFill &&fill_position)
{
    if (np < 1)
        throw std::invalid_argument("init_swarm: swarm size must be at least 1");
    const int d = f.dim();
    const Vec vmax = params.vmax_vector(f);

    SwarmState s;
    s.particles.resize(static_cast<std::size_t>(np));
    s.streams.reserve(static_cast<std::size_t>(np));
    for (int i = 0; i < np; ++i)
    {
        RngStream st = stream.derive(static_cast<std::uint64_t>(i));
        Particle &p = s.particles[static_cast<std::size_t>(i)];
        p.x = Vec(d);
        fill_position(p.x, st);
        p.v = Vec(d);
        for (int j = 0; j < d; ++j)
            p.v[j] = (2.0 * st.next_uniform() - 1.0) * vmax[j];
        p.pbest = p.x;
        p.pbest_value = f.evaluate(p.x);
        s.streams.push_back(std::move(st));
    }
    refresh_gbest(s);
    return s;
}

} // namespace

SwarmState init_swarm(Objective &f, int np, const PsoParams &params, const RngStream &stream)
{
    const Vec lo = f.lower();
    const Vec range = f.range();
    return init_swarm_impl(f, np, params, stream, [&](Vec &x, RngStream &st) {
        for (int j = 0; j < x.size(); ++j)
            x[j] = lo[j] + st.next_uniform() * range[j];
    });
}

SwarmState init_swarm_gaussian(Objective &f, int np, const PsoParams &params,
                               const RngStream &stream, const Vec &center, double sigma)
{
    require_same_dim(center, f.lower(), "init_swarm_gaussian center");
    return init_swarm_impl(f, np, params, stream, [&](Vec &x, RngStream &st) {
        for (int j = 0; j < x.size(); ++j)
            x[j] = center[j] + sigma * st.next_gaussian();
        x = f.clamp(x);
    });
}

Vec pso_velocity(const Particle &p, const Vec &nbest, const PsoParams &params,
                 const Vec &r1, const Vec &r2)
{
    Vec cognitive = params.c1 * r1.cwiseProduct(p.pbest - p.x);
    Vec social = params.c2 * r2.cwiseProduct(nbest - p.x);
    if (params.use_constriction)
        return params.phi * (p.v + cognitive + social);
    return params.omega * p.v + cognitive + social;
}

std::pair<Vec, Vec> draw_uniform_pair(RngStream &stream, int dim, bool per_dim)
{
    Vec r1(dim), r2(dim);
    if (per_dim)
    {
        for (int j = 0; j < dim; ++j)
            r1[j] = stream.next_uniform();
        for (int j = 0; j < dim; ++j)
            r2[j] = stream.next_uniform();
    }
    else
    {
        r1.setConstant(stream.next_uniform());
        r2.setConstant(stream.next_uniform());
    }
    return {std::move(r1), std::move(r2)};
}

Vec pso_velocity(const Particle &p, const Vec &nbest, const PsoParams &params,
                 RngStream &stream, const Vec &vmax)
{
    auto [r1, r2] = draw_uniform_pair(stream, static_cast<int>(p.x.size()), params.per_dim_rand);
    return clamp_symmetric(pso_velocity(p, nbest, params, r1, r2), vmax);
}

Vec neighborhood_best(const SwarmState &state, const PsoParams &params, int i)
{
    if (params.topology == Topology::global)
        return state.gbest;

    const int np = state.size();
    std::set<int> indices;
    for (int off = -params.ring_k; off <= params.ring_k; ++off)
        indices.insert(((i + off) % np + np) % np);

    int best = -1;
    double best_value = std::numeric_limits<double>::infinity();
    for (int j : indices)
    {
        if (state.particles[static_cast<std::size_t>(j)].pbest_value < best_value)
        {
            best_value = state.particles[static_cast<std::size_t>(j)].pbest_value;
            best = j;
        }
    }
    return state.particles[static_cast<std::size_t>(best)].pbest;
}

double diversity(const SwarmState &state, const Objective &f)
{
    const int np = state.size();
    Vec mean = Vec::Zero(f.dim());
    for (const Particle &p : state.particles)
        mean += p.x;
    mean /= static_cast<double>(np);

    double sum = 0.0;
    for (const Particle &p : state.particles)
        sum += (p.x - mean).norm();
    return sum / (static_cast<double>(np) * f.diagonal());
}

void refresh_gbest(SwarmState &state)
{
    int best = -1;
    double best_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < state.size(); ++i)
    {
        if (state.particles[static_cast<std::size_t>(i)].pbest_value < best_value)
        {
            best_value = state.particles[static_cast<std::size_t>(i)].pbest_value;
            best = i;
        }
    }
    if (best >= 0)
    {
        state.gbest = state.particles[static_cast<std::size_t>(best)].pbest;
        state.gbest_value = best_value;
    }
}

void install_into_gbest_owner(SwarmState &state, const Vec &x, double value)
{
    int owner = 0;
    for (int i = 1; i < state.size(); ++i)
        if (state.particles[static_cast<std::size_t>(i)].pbest_value <
            state.particles[static_cast<std::size_t>(owner)].pbest_value)
            owner = i;
    Particle &p = state.particles[static_cast<std::size_t>(owner)];
    if (value < p.pbest_value)
    {
        p.pbest = x;
        p.pbest_value = value;
    }
    refresh_gbest(state);
}

void adopt_shared_best(SwarmState &state, const Vec &x, double value)
{
    int worst = 0;
    for (int i = 1; i < state.size(); ++i)
        if (state.particles[static_cast<std::size_t>(i)].pbest_value >
            state.particles[static_cast<std::size_t>(worst)].pbest_value)
            worst = i;
    Particle &p = state.particles[static_cast<std::size_t>(worst)];
    if (value < p.pbest_value)
    {
        p.pbest = x;
        p.pbest_value = value;
    }
    refresh_gbest(state);
}

Vec StandardVelocityRule::velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                                   const PsoParams &params)
{
    return pso_velocity(state.particles[static_cast<std::size_t>(i)], nbest, params,
                        state.streams[static_cast<std::size_t>(i)], params.vmax_vector(f));
}

bool coupled_iteration(SwarmState &state, Objective &f, const PsoParams &params,
                       VelocityRule &rule, long long evals_remaining)
{
    const int np = state.size();
    PsoParams eff = params;
    eff.omega = params.effective_omega(state.iteration);

    rule.begin_iteration(state, f, eff);
    std::vector<Vec> nbest(static_cast<std::size_t>(np));
    for (int i = 0; i < np; ++i)
        nbest[static_cast<std::size_t>(i)] = neighborhood_best(state, eff, i);

    const Vec vmax = eff.vmax_vector(f);
    const Vec &lo = f.lower();
    const Vec &hi = f.upper();
    bool complete = true;
    for (int i = 0; i < np; ++i)
    {
        if (evals_remaining < 1 + rule.extra_evals(state, f, i))
        {
            complete = false;
            break;
        }
        const long long before = f.eval_count();
        Particle &p = state.particles[static_cast<std::size_t>(i)];
        Vec v = clamp_symmetric(rule.velocity(state, f, i, nbest[static_cast<std::size_t>(i)], eff), vmax);
        Vec x = p.x + v;
        for (int j = 0; j < f.dim(); ++j)
        {
            if (x[j] < lo[j])
            {
                x[j] = lo[j];
                v[j] = 0.0;
            }
            else if (x[j] > hi[j])
            {
                x[j] = hi[j];
                v[j] = 0.0;
            }
        }
        p.x = std::move(x);
        p.v = std::move(v);
        double fx = f.evaluate(p.x);
        if (fx < p.pbest_value)
        {
            p.pbest = p.x;
            p.pbest_value = fx;
        }
        evals_remaining -= f.eval_count() - before;
    }

    refresh_gbest(state);
    if (complete)
        state.iteration += 1;
    return complete;
}

void step_swarm(SwarmState &state, Objective &f, const PsoParams &params)
{
    StandardVelocityRule rule;
    coupled_iteration(state, f, params, rule, std::numeric_limits<long long>::max());
}

} // namespace swarmgrad
