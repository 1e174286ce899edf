#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarmgrad/core/objective.hpp"
#include "swarmgrad/swarm/pso.hpp"

namespace swarmgrad {

enum class StrategyKind
{
    standard_pso,
    maeda_spsa,   // SPSA estimate replaces the inertia term
    dgpsogs,      // diversity-switched gradient rule
    grad_replace, // gradient/social mix added to the velocity
    four_term,    // standard rule plus a -eta*grad term
    psog,         // scaled descent direction blended into the PSO vector
    gpso,         // alternating PSO / quasi-Newton refinement
    grpso,        // Gaussian-start local searches + repulsion PSO
    two_phase,    // PSO first, then one local refinement
    islands       // concurrent islands with periodic exchange
};

enum class MaedaScheme
{
    all,
    best_only,
    half // ceil(Np/2) particles with the best pbest values
};

// Per-strategy configuration. kind decides which fields are read; the rest
// keep their defaults. The resolved_* helpers below fill in defaults that
// depend on the objective's dimension or box size.
struct HybridSpec
{
    StrategyKind kind = StrategyKind::standard_pso;
    std::string label; // empty: canonical identifier
    PsoParams pso;

    // grad_replace
    double delta = 0.5;        // weight of the gradient part of the mix
    double c = 1.0;            // outer gain on the mix
    bool literal_minus = false; // as-published sign (subtract the whole mix)

    // psog
    double c3 = 1.0;
    double c4 = 1.0;
    int psog_order = 1; // 1: B = I, 2: per-particle BFGS metric

    // gradient step gain; unset: 0.01 (four_term) or 0.05 * mean box width
    // (maeda_spsa, annealed with the SPSA gain schedule)
    std::optional<double> eta;
    double spsa_c0 = 0.0; // SPSA probe size; 0: 0.01 * mean box width

    // dgpsogs
    double diversity_low = 1e-3;
    double epsilon = 1e-10;

    // maeda_spsa
    MaedaScheme scheme = MaedaScheme::all;

    // four_term coefficient decay: c_k <- c_k - 2*c_k/n each iteration
    bool decay_enabled = false;
    long decay_horizon = 100;

    // two_phase
    double phase_split = 0.7;

    // gpso / grpso / islands inner loops
    int inner_pso_iters = 50;
    std::optional<long long> inner_local_evals; // unset: 200 * dim

    // islands
    int islands = 2;
    int exchange_period = 10;

    // grpso
    std::optional<double> repulsion_radius; // unset: 0.1 * mean box width
    double repulsion_gain = 1.0;
};

// Canonical identifiers, one per runnable strategy (psog splits into
// psog1/psog2), sorted.
const std::vector<std::string> &strategy_names();

// Spec with defaults for a canonical identifier; throws std::invalid_argument
// on unknown names.
HybridSpec make_strategy(std::string_view name);

std::string canonical_label(const HybridSpec &spec);

double mean_box_width(const Objective &f);
double resolved_eta(const HybridSpec &spec, const Objective &f);
double resolved_spsa_c0(const HybridSpec &spec, const Objective &f);
long long resolved_inner_local_evals(const HybridSpec &spec, const Objective &f);
double resolved_repulsion_radius(const HybridSpec &spec, const Objective &f);

} // namespace swarmgrad
