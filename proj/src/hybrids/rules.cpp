#include "swarmgrad/hybrids/rules.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "swarmgrad/gradsearch/spsa.hpp"

namespace swarmgrad {

Vec dgpsogs_velocity(const Particle &p, const Vec &gbest, double div,
                     const PsoParams &params, const HybridSpec &spec,
                     const Vec &r1, const Vec &r2, const Vec &grad)
{
    Vec gterm = Vec::Zero(p.x.size());
    const double gn = grad.norm();
    if (gn > 0)
        gterm = -grad / gn;
    Vec social = (gbest - p.x) / (div + spec.epsilon);
    return params.omega * p.v + params.c1 * r1.cwiseProduct(gterm) +
           params.c2 * r2.cwiseProduct(social);
}

Vec grad_replace_velocity(const Particle &p, const Vec &gbest,
                          const HybridSpec &spec, const Vec &grad)
{
    Vec correction = spec.c * (spec.delta * (-grad) + (1.0 - spec.delta) * (gbest - p.x));
    if (spec.literal_minus)
        return p.v - correction;
    return p.v + correction;
}

Vec four_term_velocity(const Particle &p, const Vec &gbest, const PsoParams &params,
                       double eta, const Vec &r1, const Vec &r2, const Vec &grad)
{
    return pso_velocity(p, gbest, params, r1, r2) - eta * grad;
}

Vec psog_velocity(const Vec &v_pso, const Vec &bgrad, double c3, double c4, double r4)
{
    Vec v = c3 * v_pso;
    const double n = bgrad.norm();
    if (c4 != 0.0 && n > 0)
        v += c4 * r4 * v_pso.norm() * (-bgrad / n);
    return v;
}

Vec maeda_velocity(const Particle &p, const Vec &nbest, const PsoParams &params,
                   double eta, const Vec &ghat, const Vec &r1, const Vec &r2)
{
    return -eta * ghat + params.c1 * r1.cwiseProduct(p.pbest - p.x) +
           params.c2 * r2.cwiseProduct(nbest - p.x);
}

MaedaRule::MaedaRule(const HybridSpec &spec, const Objective &f)
    : spec_(spec), eta0_(resolved_eta(spec, f)), c0_(resolved_spsa_c0(spec, f))
{
}

void MaedaRule::begin_iteration(SwarmState &state, Objective &, const PsoParams &)
{
    const int np = state.size();
    selected_.assign(static_cast<std::size_t>(np), 0);
    switch (spec_.scheme)
    {
    case MaedaScheme::all:
        std::fill(selected_.begin(), selected_.end(), char(1));
        break;
    case MaedaScheme::best_only:
    {
        int best = 0;
        for (int i = 1; i < np; ++i)
            if (state.particles[static_cast<std::size_t>(i)].pbest_value <
                state.particles[static_cast<std::size_t>(best)].pbest_value)
                best = i;
        selected_[static_cast<std::size_t>(best)] = 1;
        break;
    }
    case MaedaScheme::half:
    {
        std::vector<int> order(static_cast<std::size_t>(np));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double fa = state.particles[static_cast<std::size_t>(a)].pbest_value;
            const double fb = state.particles[static_cast<std::size_t>(b)].pbest_value;
            if (fa != fb)
                return fa < fb;
            return a < b;
        });
        const int take = (np + 1) / 2;
        for (int i = 0; i < take; ++i)
            selected_[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
        break;
    }
    }
}

long long MaedaRule::extra_evals(const SwarmState &, const Objective &, int i) const
{
    return selected_[static_cast<std::size_t>(i)] ? 2 : 0;
}

Vec MaedaRule::velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                        const PsoParams &params)
{
    Particle &p = state.particles[static_cast<std::size_t>(i)];
    RngStream &st = state.streams[static_cast<std::size_t>(i)];
    if (!selected_[static_cast<std::size_t>(i)])
        return pso_velocity(p, nbest, params, st, params.vmax_vector(f));

    const long t = state.iteration;
    Vec ghat = spsa_gradient(f, p.x, spsa_perturbation_at(c0_, t), st);
    auto [r1, r2] = draw_uniform_pair(st, f.dim(), params.per_dim_rand);
    return maeda_velocity(p, nbest, params, spsa_step_at(eta0_, t), ghat, r1, r2);
}

void DgpsogsRule::begin_iteration(SwarmState &state, Objective &f, const PsoParams &)
{
    div_ = diversity(state, f);
    low_ = !(div_ > spec_.diversity_low);
}

long long DgpsogsRule::extra_evals(const SwarmState &, const Objective &f, int) const
{
    return low_ ? f.gradient_eval_cost() : 0;
}

Vec DgpsogsRule::velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                          const PsoParams &params)
{
    Particle &p = state.particles[static_cast<std::size_t>(i)];
    RngStream &st = state.streams[static_cast<std::size_t>(i)];
    if (!low_)
        return pso_velocity(p, nbest, params, st, params.vmax_vector(f));

    auto [r1, r2] = draw_uniform_pair(st, f.dim(), params.per_dim_rand);
    Vec g = f.gradient(p.x);
    return dgpsogs_velocity(p, nbest, div_, params, spec_, r1, r2, g);
}

long long GradReplaceRule::extra_evals(const SwarmState &, const Objective &f, int) const
{
    return f.gradient_eval_cost();
}

Vec GradReplaceRule::velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                              const PsoParams &)
{
    Particle &p = state.particles[static_cast<std::size_t>(i)];
    return grad_replace_velocity(p, nbest, spec_, f.gradient(p.x));
}

FourTermRule::FourTermRule(const HybridSpec &spec, const Objective &f)
    : spec_(spec), eta_(resolved_eta(spec, f)), c1_(spec.pso.c1), c2_(spec.pso.c2)
{
}

void FourTermRule::begin_iteration(SwarmState &, Objective &, const PsoParams &)
{
    if (spec_.decay_enabled && spec_.decay_horizon > 0)
    {
        c1_ -= 2.0 * c1_ / static_cast<double>(spec_.decay_horizon);
        c2_ -= 2.0 * c2_ / static_cast<double>(spec_.decay_horizon);
    }
}

long long FourTermRule::extra_evals(const SwarmState &, const Objective &f, int) const
{
    return eta_ != 0.0 ? f.gradient_eval_cost() : 0;
}

Vec FourTermRule::velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                           const PsoParams &params)
{
    Particle &p = state.particles[static_cast<std::size_t>(i)];
    RngStream &st = state.streams[static_cast<std::size_t>(i)];
    auto [r1, r2] = draw_uniform_pair(st, f.dim(), params.per_dim_rand);
    PsoParams local = params;
    local.c1 = c1_;
    local.c2 = c2_;
    if (eta_ == 0.0)
        return four_term_velocity(p, nbest, local, 0.0, r1, r2, Vec::Zero(f.dim()));
    return four_term_velocity(p, nbest, local, eta_, r1, r2, f.gradient(p.x));
}

long long PsogRule::extra_evals(const SwarmState &, const Objective &f, int) const
{
    return spec_.c4 != 0.0 ? f.gradient_eval_cost() : 0;
}

Vec PsogRule::velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                       const PsoParams &params)
{
    Particle &p = state.particles[static_cast<std::size_t>(i)];
    RngStream &st = state.streams[static_cast<std::size_t>(i)];
    auto [r1, r2] = draw_uniform_pair(st, f.dim(), params.per_dim_rand);
    Vec vpso = pso_velocity(p, nbest, params, r1, r2);
    if (spec_.c4 == 0.0)
        return spec_.c3 * vpso; // no r4 draw, no gradient: exact PSO reduction

    const double r4 = st.next_uniform();
    Vec g = f.gradient(p.x);
    Vec bg;
    if (spec_.psog_order == 2)
    {
        if (metric_.empty())
            metric_.assign(state.particles.size(), QuasiNewtonState(f.dim()));
        QuasiNewtonState &qn = metric_[static_cast<std::size_t>(i)];
        qn = bfgs_update(std::move(qn), p.x, g);
        bg = qn.inv_hessian * g;
    }
    else
    {
        bg = g;
    }
    return psog_velocity(vpso, bg, spec_.c3, spec_.c4, r4);
}

bool LocalMinimaArchive::insert(const Vec &x, double value)
{
    for (ArchiveEntry &e : entries_)
    {
        if ((x - e.x).norm() <= radius_)
        {
            if (value < e.value)
            {
                e.x = x;
                e.value = value;
            }
            return true;
        }
    }
    entries_.push_back({x, value});
    return false;
}

const ArchiveEntry &LocalMinimaArchive::best() const
{
    if (entries_.empty())
        throw std::logic_error("LocalMinimaArchive::best: archive is empty");
    const ArchiveEntry *b = &entries_.front();
    for (const ArchiveEntry &e : entries_)
        if (e.value < b->value)
            b = &e;
    return *b;
}

Vec RepulsionPsoRule::velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                               const PsoParams &params)
{
    Particle &p = state.particles[static_cast<std::size_t>(i)];
    Vec v = pso_velocity(p, nbest, params, state.streams[static_cast<std::size_t>(i)],
                         params.vmax_vector(f));
    for (const ArchiveEntry &e : archive_->entries())
    {
        Vec away = p.x - e.x;
        const double dist = away.norm();
        if (dist > 0.0 && dist <= radius_)
            v += gain_ * away / (dist * dist);
    }
    return v;
}

std::unique_ptr<VelocityRule> make_rule(const HybridSpec &spec, const Objective &f)
{
    switch (spec.kind)
    {
    case StrategyKind::standard_pso:
        return std::make_unique<StandardVelocityRule>();
    case StrategyKind::maeda_spsa:
        return std::make_unique<MaedaRule>(spec, f);
    case StrategyKind::dgpsogs:
        return std::make_unique<DgpsogsRule>(spec);
    case StrategyKind::grad_replace:
        return std::make_unique<GradReplaceRule>(spec);
    case StrategyKind::four_term:
        return std::make_unique<FourTermRule>(spec, f);
    case StrategyKind::psog:
        return std::make_unique<PsogRule>(spec);
    default:
        throw std::invalid_argument("make_rule: " + canonical_label(spec) +
                                    " is not a coupled strategy");
    }
}

} // namespace swarmgrad
