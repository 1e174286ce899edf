#pragma once

#include <string>
#include <utility>
#include <vector>

#include "swarmgrad/harness/config.hpp"
#include "swarmgrad/hybrids/runner.hpp"

namespace swarmgrad {

struct CellResult
{
    std::string strategy;
    std::uint64_t seed = 0;
    RunResult run;
};

struct StrategySummary
{
    int runs = 0;
    double best_final = 0.0;
    double median_final = 0.0;
    double mean_final = 0.0;
    double std_final = 0.0; // sample (n-1); single run: 0
    double success_rate = 0.0;
    std::optional<double> median_evals_to_success; // unset: median run never succeeded
};

struct ExperimentResults
{
    ExperimentConfig config;
    double success_threshold = 0.0; // resolved value actually used
    std::vector<CellResult> cells;  // (strategy, seed) order per the config
    std::vector<std::pair<std::string, StrategySummary>> summaries;
};

// Statistics over one strategy's final values. evals_to_success uses -1 for
// runs that never crossed the threshold.
StrategySummary summarize(const std::vector<double> &finals,
                          const std::vector<long long> &evals_to_success,
                          double threshold);

// Executes every (strategy, seed) cell. Each cell derives its streams and
// noise seed from (seed, strategy label) only, so results do not depend on
// execution order or on which other cells exist. jobs > 1 runs cells on a
// thread pool; output is identical to the sequential order.
ExperimentResults run_experiment(const ExperimentConfig &config, int jobs = 1);

// traces.csv and summary.json under out_dir (created if missing), written
// byte-identically for identical results.
void write_outputs(const ExperimentResults &results, const std::string &out_dir);

std::string format_shortest(double value);

} // namespace swarmgrad
