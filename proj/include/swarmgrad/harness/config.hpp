#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarmgrad/core/budget.hpp"
#include "swarmgrad/hybrids/spec.hpp"

namespace swarmgrad {

struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig
{
    std::string objective;
    int dim = 0;
    int np = 30; // config key "Np"
    EvalBudget budget{};
    std::vector<HybridSpec> strategies;
    std::vector<std::uint64_t> seeds;
    std::optional<double> success_threshold; // unset: per-objective default
    int trace_stride = 10;
};

// Strict parse: unknown keys anywhere are a ConfigError, as are missing
// required keys, type mismatches, out-of-range values, duplicate seeds, and
// duplicate strategy labels.
ExperimentConfig parse_config(const nlohmann::json &doc);

ExperimentConfig load_config(const std::string &path);

// Applies one KEY=VALUE override onto the raw document before parsing.
// KEY may be a dotted path (budget.max_evals=5000); VALUE is parsed as JSON
// when possible, otherwise taken as a string.
void apply_override(nlohmann::json &doc, const std::string &assignment);

// A strategy entry: either an identifier string or an object with "kind"
// plus field overrides.
HybridSpec parse_strategy(const nlohmann::json &entry);

} // namespace swarmgrad
