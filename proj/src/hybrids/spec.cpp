#include "swarmgrad/hybrids/spec.hpp"

#include <stdexcept>

namespace swarmgrad {

const std::vector<std::string> &strategy_names()
{
    static const std::vector<std::string> names = {
        "dgpsogs", "four_term", "gpso",         "grad_replace", "grpso", "islands",
        "maeda_spsa", "psog1",  "psog2",        "standard_pso", "two_phase"};
    return names;
}

HybridSpec make_strategy(std::string_view name)
{
    HybridSpec s;
    s.label = std::string(name);
    if (name == "standard_pso")
        s.kind = StrategyKind::standard_pso;
    else if (name == "maeda_spsa")
        s.kind = StrategyKind::maeda_spsa;
    else if (name == "dgpsogs")
        s.kind = StrategyKind::dgpsogs;
    else if (name == "grad_replace")
        s.kind = StrategyKind::grad_replace;
    else if (name == "four_term")
        s.kind = StrategyKind::four_term;
    else if (name == "psog1")
    {
        s.kind = StrategyKind::psog;
        s.psog_order = 1;
    }
    else if (name == "psog2")
    {
        s.kind = StrategyKind::psog;
        s.psog_order = 2;
    }
    else if (name == "gpso")
        s.kind = StrategyKind::gpso;
    else if (name == "grpso")
        s.kind = StrategyKind::grpso;
    else if (name == "two_phase")
        s.kind = StrategyKind::two_phase;
    else if (name == "islands")
        s.kind = StrategyKind::islands;
    else
        throw std::invalid_argument("unknown strategy: " + std::string(name));
    return s;
}

std::string canonical_label(const HybridSpec &spec)
{
    if (!spec.label.empty())
        return spec.label;
    switch (spec.kind)
    {
    case StrategyKind::standard_pso: return "standard_pso";
    case StrategyKind::maeda_spsa: return "maeda_spsa";
    case StrategyKind::dgpsogs: return "dgpsogs";
    case StrategyKind::grad_replace: return "grad_replace";
    case StrategyKind::four_term: return "four_term";
    case StrategyKind::psog: return spec.psog_order == 2 ? "psog2" : "psog1";
    case StrategyKind::gpso: return "gpso";
    case StrategyKind::grpso: return "grpso";
    case StrategyKind::two_phase: return "two_phase";
    case StrategyKind::islands: return "islands";
    }
    return "unknown";
}

double mean_box_width(const Objective &f)
{
    return f.range().mean();
}

double resolved_eta(const HybridSpec &spec, const Objective &f)
{
    if (spec.eta)
        return *spec.eta;
    if (spec.kind == StrategyKind::maeda_spsa)
        return 0.05 * mean_box_width(f);
    return 0.01;
}

double resolved_spsa_c0(const HybridSpec &spec, const Objective &f)
{
    return spec.spsa_c0 > 0 ? spec.spsa_c0 : 0.01 * mean_box_width(f);
}

long long resolved_inner_local_evals(const HybridSpec &spec, const Objective &f)
{
    return spec.inner_local_evals.value_or(200LL * f.dim());
}

double resolved_repulsion_radius(const HybridSpec &spec, const Objective &f)
{
    return spec.repulsion_radius.value_or(0.1 * mean_box_width(f));
}

} // namespace swarmgrad
