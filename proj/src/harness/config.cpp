#include "swarmgrad/harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "swarmgrad/objectives/suite.hpp"

namespace swarmgrad {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string &what)
{
    throw ConfigError(what);
}

double as_number(const json &v, const std::string &key)
{
    if (!v.is_number())
        fail("config key '" + key + "' must be a number");
    return v.get<double>();
}

long long as_integer(const json &v, const std::string &key)
{
    if (!v.is_number_integer())
        fail("config key '" + key + "' must be an integer");
    return v.get<long long>();
}

bool as_bool(const json &v, const std::string &key)
{
    if (!v.is_boolean())
        fail("config key '" + key + "' must be a boolean");
    return v.get<bool>();
}

std::string as_string(const json &v, const std::string &key)
{
    if (!v.is_string())
        fail("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

MaedaScheme parse_scheme(const std::string &s)
{
    if (s == "all")
        return MaedaScheme::all;
    if (s == "best_only")
        return MaedaScheme::best_only;
    if (s == "half")
        return MaedaScheme::half;
    fail("unknown maeda scheme '" + s + "' (expected all, best_only, or half)");
}

Topology parse_topology(const std::string &s)
{
    if (s == "global")
        return Topology::global;
    if (s == "ring")
        return Topology::ring;
    fail("unknown topology '" + s + "' (expected global or ring)");
}

EvalBudget parse_budget(const json &v)
{
    if (!v.is_object())
        fail("config key 'budget' must be an object");
    EvalBudget b;
    bool have_evals = false;
    for (const auto &[key, value] : v.items())
    {
        if (key == "max_evals")
        {
            b.max_evals = as_integer(value, "budget.max_evals");
            have_evals = true;
        }
        else if (key == "max_iters")
            b.max_iters = as_integer(value, "budget.max_iters");
        else
            fail("unknown config key 'budget." + key + "'");
    }
    if (!have_evals)
        fail("config key 'budget.max_evals' is required");
    if (b.max_evals < 1)
        fail("budget.max_evals must be >= 1");
    if (b.max_iters < 1)
        fail("budget.max_iters must be >= 1");
    return b;
}

void check_range(bool ok, const std::string &what)
{
    if (!ok)
        fail(what);
}

} // namespace

HybridSpec parse_strategy(const nlohmann::json &entry)
{
    if (entry.is_string())
        return make_strategy(entry.get<std::string>());
    if (!entry.is_object())
        fail("strategy entries must be identifier strings or objects with a 'kind'");
    if (!entry.contains("kind"))
        fail("strategy objects need a 'kind'");

    HybridSpec s;
    try
    {
        s = make_strategy(as_string(entry.at("kind"), "kind"));
    }
    catch (const std::invalid_argument &e)
    {
        fail(e.what());
    }

    std::optional<double> c1_override, c2_override;
    std::optional<bool> constriction_override;
    for (const auto &[key, value] : entry.items())
    {
        if (key == "kind")
            continue;
        else if (key == "label")
            s.label = as_string(value, key);
        else if (key == "delta")
            s.delta = as_number(value, key);
        else if (key == "c")
            s.c = as_number(value, key);
        else if (key == "literal_minus")
            s.literal_minus = as_bool(value, key);
        else if (key == "c3")
            s.c3 = as_number(value, key);
        else if (key == "c4")
            s.c4 = as_number(value, key);
        else if (key == "psog_order")
            s.psog_order = static_cast<int>(as_integer(value, key));
        else if (key == "eta")
            s.eta = as_number(value, key);
        else if (key == "spsa_c0")
            s.spsa_c0 = as_number(value, key);
        else if (key == "diversity_low")
            s.diversity_low = as_number(value, key);
        else if (key == "epsilon")
            s.epsilon = as_number(value, key);
        else if (key == "scheme")
            s.scheme = parse_scheme(as_string(value, key));
        else if (key == "decay_enabled")
            s.decay_enabled = as_bool(value, key);
        else if (key == "decay_horizon")
            s.decay_horizon = static_cast<long>(as_integer(value, key));
        else if (key == "phase_split")
            s.phase_split = as_number(value, key);
        else if (key == "inner_pso_iters")
            s.inner_pso_iters = static_cast<int>(as_integer(value, key));
        else if (key == "inner_local_evals")
            s.inner_local_evals = as_integer(value, key);
        else if (key == "islands")
            s.islands = static_cast<int>(as_integer(value, key));
        else if (key == "exchange_period")
            s.exchange_period = static_cast<int>(as_integer(value, key));
        else if (key == "repulsion_radius")
            s.repulsion_radius = as_number(value, key);
        else if (key == "repulsion_gain")
            s.repulsion_gain = as_number(value, key);
        else if (key == "omega")
            s.pso.omega = as_number(value, key);
        else if (key == "c1")
            c1_override = as_number(value, key);
        else if (key == "c2")
            c2_override = as_number(value, key);
        else if (key == "use_constriction")
            constriction_override = as_bool(value, key);
        else if (key == "phi")
            s.pso.phi = as_number(value, key);
        else if (key == "vmax_fraction")
            s.pso.vmax_fraction = as_number(value, key);
        else if (key == "topology")
            s.pso.topology = parse_topology(as_string(value, key));
        else if (key == "ring_k")
            s.pso.ring_k = static_cast<int>(as_integer(value, key));
        else if (key == "per_dim_rand")
            s.pso.per_dim_rand = as_bool(value, key);
        else if (key == "omega_ramp")
            s.pso.omega_ramp = as_bool(value, key);
        else if (key == "ramp_horizon")
            s.pso.ramp_horizon = static_cast<long>(as_integer(value, key));
        else
            fail("unknown strategy key '" + key + "'");
    }

    // Presets first, explicit accelerator values on top regardless of key order.
    if (constriction_override)
    {
        if (*constriction_override)
            s.pso = constriction_defaults(s.pso);
        else
            s.pso.use_constriction = false;
    }
    if (c1_override)
        s.pso.c1 = *c1_override;
    if (c2_override)
        s.pso.c2 = *c2_override;

    check_range(s.delta >= 0.0 && s.delta <= 1.0, "delta must lie in [0,1]");
    check_range(s.c > 0.0, "c must be > 0");
    check_range(s.c3 >= 0.0 && s.c4 >= 0.0, "c3 and c4 must be >= 0");
    check_range(s.psog_order == 1 || s.psog_order == 2, "psog_order must be 1 or 2");
    // eta = 0 turns the gradient term off (the standard-PSO reduction).
    check_range(!s.eta || *s.eta >= 0.0, "eta must be >= 0");
    check_range(s.spsa_c0 >= 0.0, "spsa_c0 must be >= 0");
    check_range(s.diversity_low >= 0.0, "diversity_low must be >= 0");
    check_range(s.epsilon > 0.0, "epsilon must be > 0");
    check_range(!s.decay_enabled || s.decay_horizon > 2,
                "decay_horizon must be > 2 when decay is enabled");
    check_range(s.phase_split > 0.0 && s.phase_split < 1.0, "phase_split must lie in (0,1)");
    check_range(s.inner_pso_iters >= 1, "inner_pso_iters must be >= 1");
    check_range(!s.inner_local_evals || *s.inner_local_evals >= 1,
                "inner_local_evals must be >= 1");
    check_range(s.islands >= 1, "islands must be >= 1");
    check_range(s.exchange_period >= 1, "exchange_period must be >= 1");
    check_range(!s.repulsion_radius || *s.repulsion_radius >= 0.0,
                "repulsion_radius must be >= 0");
    check_range(s.repulsion_gain >= 0.0, "repulsion_gain must be >= 0");
    check_range(s.pso.c1 > 0.0 && s.pso.c2 > 0.0, "c1 and c2 must be > 0");
    check_range(s.pso.phi > 0.0 && s.pso.phi <= 1.0, "phi must lie in (0,1]");
    check_range(s.pso.vmax_fraction > 0.0 && s.pso.vmax_fraction <= 1.0,
                "vmax_fraction must lie in (0,1]");
    check_range(s.pso.ring_k >= 1, "ring_k must be >= 1");
    return s;
}

ExperimentConfig parse_config(const nlohmann::json &doc)
{
    if (!doc.is_object())
        fail("config root must be an object");

    ExperimentConfig cfg;
    bool have_objective = false, have_dim = false, have_budget = false;
    bool have_strategies = false, have_seeds = false;

    for (const auto &[key, value] : doc.items())
    {
        if (key == "objective")
        {
            cfg.objective = as_string(value, key);
            have_objective = true;
        }
        else if (key == "dim")
        {
            cfg.dim = static_cast<int>(as_integer(value, key));
            have_dim = true;
        }
        else if (key == "Np")
            cfg.np = static_cast<int>(as_integer(value, key));
        else if (key == "budget")
        {
            cfg.budget = parse_budget(value);
            have_budget = true;
        }
        else if (key == "strategies")
        {
            if (!value.is_array() || value.empty())
                fail("config key 'strategies' must be a non-empty array");
            for (const auto &entry : value)
                cfg.strategies.push_back(parse_strategy(entry));
            have_strategies = true;
        }
        else if (key == "seeds")
        {
            if (!value.is_array() || value.empty())
                fail("config key 'seeds' must be a non-empty array");
            for (const auto &entry : value)
                cfg.seeds.push_back(
                    static_cast<std::uint64_t>(as_integer(entry, "seeds[]")));
            have_seeds = true;
        }
        else if (key == "success_threshold")
            cfg.success_threshold = as_number(value, key);
        else if (key == "trace_stride")
            cfg.trace_stride = static_cast<int>(as_integer(value, key));
        else
            fail("unknown config key '" + key + "'");
    }

    if (!have_objective)
        fail("config key 'objective' is required");
    if (!have_dim)
        fail("config key 'dim' is required");
    if (!have_budget)
        fail("config key 'budget' is required");
    if (!have_strategies)
        fail("config key 'strategies' is required");
    if (!have_seeds)
        fail("config key 'seeds' is required");

    if (!is_known_objective(cfg.objective))
        fail("unknown objective '" + cfg.objective + "'");
    try
    {
        (void)make_objective(cfg.objective, cfg.dim);
    }
    catch (const std::invalid_argument &e)
    {
        fail(e.what());
    }
    check_range(cfg.np >= 1, "Np must be >= 1");
    // Every strategy at least initializes a swarm of Np evaluations.
    check_range(cfg.budget.max_evals >= cfg.np,
                "budget.max_evals must be >= Np");
    check_range(cfg.trace_stride >= 1, "trace_stride must be >= 1");

    std::set<std::uint64_t> seen_seeds(cfg.seeds.begin(), cfg.seeds.end());
    if (seen_seeds.size() != cfg.seeds.size())
        fail("seeds must be distinct");

    std::set<std::string> labels;
    for (const HybridSpec &s : cfg.strategies)
        if (!labels.insert(canonical_label(s)).second)
            fail("duplicate strategy label '" + canonical_label(s) +
                 "'; set 'label' to disambiguate");

    return cfg;
}

ExperimentConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        fail("cannot open config file: " + path);
    nlohmann::json doc;
    try
    {
        in >> doc;
    }
    catch (const nlohmann::json::parse_error &e)
    {
        fail(std::string("config parse error in ") + path + ": " + e.what());
    }
    return parse_config(doc);
}

void apply_override(nlohmann::json &doc, const std::string &assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        fail("--set expects KEY=VALUE, got '" + assignment + "'");
    const std::string path = assignment.substr(0, eq);
    const std::string value_text = assignment.substr(eq + 1);

    nlohmann::json value;
    try
    {
        value = nlohmann::json::parse(value_text);
    }
    catch (const nlohmann::json::parse_error &)
    {
        value = value_text; // bare words become strings
    }

    std::vector<std::string> parts;
    std::stringstream ss(path);
    std::string part;
    while (std::getline(ss, part, '.'))
    {
        if (part.empty())
            fail("--set key has an empty path segment: '" + path + "'");
        parts.push_back(part);
    }
    if (parts.empty())
        fail("--set key must not be empty");

    nlohmann::json *cursor = &doc;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i)
        cursor = &(*cursor)[parts[i]];
    (*cursor)[parts.back()] = value;
}

} // namespace swarmgrad
