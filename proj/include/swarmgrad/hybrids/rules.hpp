#pragma once

#include <memory>
#include <vector>

#include "swarmgrad/gradsearch/descent.hpp"
#include "swarmgrad/hybrids/spec.hpp"
#include "swarmgrad/swarm/pso.hpp"

namespace swarmgrad {

// Pure update formulas, exposed separately from the rule classes so the
// arithmetic can be checked with pinned inputs. None of these clamp; the
// engine applies the velocity clamp after the rule returns.

// Low-diversity branch: omega*V + c1*r1 (.) (-grad/|grad|) + c2*r2 (.)
// ((gbest - X)/(div + epsilon)). Zero gradient contributes a zero term.
Vec dgpsogs_velocity(const Particle &p, const Vec &gbest, double div,
                     const PsoParams &params, const HybridSpec &spec,
                     const Vec &r1, const Vec &r2, const Vec &grad);

// V + c*(delta*(-grad) + (1-delta)*(gbest - X)); literal_minus subtracts the
// whole correction instead (the as-published sign).
Vec grad_replace_velocity(const Particle &p, const Vec &gbest,
                          const HybridSpec &spec, const Vec &grad);

// Standard update plus a -eta*grad fourth term. Decayed c1/c2 are passed via
// params by the rule class.
Vec four_term_velocity(const Particle &p, const Vec &gbest, const PsoParams &params,
                       double eta, const Vec &r1, const Vec &r2, const Vec &grad);

// c3*V_pso + c4*r4*(-B*grad/|B*grad|)*|V_pso|; zero B*grad drops the
// gradient term.
Vec psog_velocity(const Vec &v_pso, const Vec &bgrad, double c3, double c4, double r4);

// -eta*ghat + c1*r1 (.) (P - X) + c2*r2 (.) (nbest - X): the SPSA estimate
// replaces the inertia term.
Vec maeda_velocity(const Particle &p, const Vec &nbest, const PsoParams &params,
                   double eta, const Vec &ghat, const Vec &r1, const Vec &r2);

class MaedaRule final : public VelocityRule
{
public:
    MaedaRule(const HybridSpec &spec, const Objective &f);
    void begin_iteration(SwarmState &state, Objective &f, const PsoParams &params) override;
    long long extra_evals(const SwarmState &state, const Objective &f, int i) const override;
    Vec velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                 const PsoParams &params) override;

private:
    HybridSpec spec_;
    double eta0_;
    double c0_;
    std::vector<char> selected_;
};

class DgpsogsRule final : public VelocityRule
{
public:
    explicit DgpsogsRule(const HybridSpec &spec) : spec_(spec) {}
    void begin_iteration(SwarmState &state, Objective &f, const PsoParams &params) override;
    long long extra_evals(const SwarmState &state, const Objective &f, int i) const override;
    Vec velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                 const PsoParams &params) override;

private:
    HybridSpec spec_;
    double div_ = 0.0;
    bool low_ = false;
};

class GradReplaceRule final : public VelocityRule
{
public:
    explicit GradReplaceRule(const HybridSpec &spec) : spec_(spec) {}
    long long extra_evals(const SwarmState &state, const Objective &f, int i) const override;
    Vec velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                 const PsoParams &params) override;

private:
    HybridSpec spec_;
};

class FourTermRule final : public VelocityRule
{
public:
    FourTermRule(const HybridSpec &spec, const Objective &f);
    void begin_iteration(SwarmState &state, Objective &f, const PsoParams &params) override;
    long long extra_evals(const SwarmState &state, const Objective &f, int i) const override;
    Vec velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                 const PsoParams &params) override;

    double current_c1() const { return c1_; }
    double current_c2() const { return c2_; }

private:
    HybridSpec spec_;
    double eta_;
    double c1_ = 0.0, c2_ = 0.0;
};

class PsogRule final : public VelocityRule
{
public:
    explicit PsogRule(const HybridSpec &spec) : spec_(spec) {}
    long long extra_evals(const SwarmState &state, const Objective &f, int i) const override;
    Vec velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                 const PsoParams &params) override;

private:
    HybridSpec spec_;
    std::vector<QuasiNewtonState> metric_; // order 2 only, one per particle
};

struct ArchiveEntry
{
    Vec x;
    double value;
};

// Archived local minima kept pairwise separated by more than the repulsion
// radius. Inserting within the radius of an existing entry updates that
// entry in place when the new value is better and reports a hit.
class LocalMinimaArchive
{
public:
    explicit LocalMinimaArchive(double radius) : radius_(radius) {}
    // true: landed on an already-archived minimum
    bool insert(const Vec &x, double value);
    const std::vector<ArchiveEntry> &entries() const { return entries_; }
    const ArchiveEntry &best() const;

private:
    double radius_;
    std::vector<ArchiveEntry> entries_;
};

// Standard update plus an inverse-distance push away from archived minima
// within the repulsion radius of the particle.
class RepulsionPsoRule final : public VelocityRule
{
public:
    RepulsionPsoRule(const LocalMinimaArchive &archive, double radius, double gain)
        : archive_(&archive), radius_(radius), gain_(gain)
    {
    }
    Vec velocity(SwarmState &state, Objective &f, int i, const Vec &nbest,
                 const PsoParams &params) override;

private:
    const LocalMinimaArchive *archive_;
    double radius_;
    double gain_;
};

// Rule instance for the coupled strategy kinds (standard_pso, maeda_spsa,
// dgpsogs, grad_replace, four_term, psog); throws std::invalid_argument for
// sequential or concurrent kinds.
std::unique_ptr<VelocityRule> make_rule(const HybridSpec &spec, const Objective &f);

} // namespace swarmgrad
