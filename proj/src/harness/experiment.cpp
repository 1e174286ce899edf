#include "swarmgrad/harness/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>

#include "swarmgrad/objectives/suite.hpp"

namespace swarmgrad {

namespace {

double median_of_sorted(const std::vector<double> &v)
{
    const std::size_t n = v.size();
    if (n % 2 == 1)
        return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

std::string format_shortest(double value)
{
    std::array<char, 64> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

StrategySummary summarize(const std::vector<double> &finals,
                          const std::vector<long long> &evals_to_success,
                          double threshold)
{
    if (finals.empty())
        throw std::invalid_argument("summarize: need at least one final value");

    StrategySummary s;
    s.runs = static_cast<int>(finals.size());

    std::vector<double> sorted = finals;
    std::sort(sorted.begin(), sorted.end());
    s.best_final = sorted.front();
    s.median_final = median_of_sorted(sorted);
    s.mean_final = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
                   static_cast<double>(sorted.size());
    if (sorted.size() > 1)
    {
        double acc = 0.0;
        for (double v : sorted)
            acc += (v - s.mean_final) * (v - s.mean_final);
        s.std_final = std::sqrt(acc / static_cast<double>(sorted.size() - 1));
    }
    long successes = 0;
    for (double v : finals)
        if (v < threshold)
            ++successes;
    s.success_rate = static_cast<double>(successes) / static_cast<double>(finals.size());

    if (!evals_to_success.empty())
    {
        std::vector<double> ets;
        ets.reserve(evals_to_success.size());
        for (long long e : evals_to_success)
            ets.push_back(e < 0 ? std::numeric_limits<double>::infinity()
                                : static_cast<double>(e));
        std::sort(ets.begin(), ets.end());
        const double m = median_of_sorted(ets);
        if (std::isfinite(m))
            s.median_evals_to_success = m;
    }
    return s;
}

ExperimentResults run_experiment(const ExperimentConfig &config, int jobs)
{
    if (config.strategies.empty())
        throw ConfigError("no strategies configured");
    if (config.seeds.empty())
        throw ConfigError("no seeds configured");

    ExperimentResults out;
    out.config = config;
    out.success_threshold =
        config.success_threshold
            ? *config.success_threshold
            : default_success_threshold(config.objective, config.dim);

    const std::size_t n_seeds = config.seeds.size();
    const std::size_t n_cells = config.strategies.size() * n_seeds;
    out.cells.resize(n_cells);

    auto run_cell = [&](std::size_t k) {
        const std::size_t si = k / n_seeds;
        const std::uint64_t seed = config.seeds[k % n_seeds];
        const HybridSpec &spec = config.strategies[si];
        const std::string label = canonical_label(spec);

        // Streams and the noise seed depend only on (seed, label): removing
        // other cells from the config cannot change this one.
        RngStream cell_stream = RngStream(seed).derive(label);
        Objective f = make_objective(config.objective, config.dim,
                                     cell_stream.derive("noise").seed());

        RunContext ctx;
        ctx.np = config.np;
        ctx.budget = config.budget;
        ctx.success_threshold = out.success_threshold;
        ctx.trace_stride = config.trace_stride;

        RunResult r = run_strategy(spec, f, ctx, cell_stream.derive("run"));
        if (r.evals_used > config.budget.max_evals)
            throw std::logic_error("strategy " + label + " exceeded the budget: " +
                                   std::to_string(r.evals_used) + " > " +
                                   std::to_string(config.budget.max_evals));
        out.cells[k] = CellResult{label, seed, std::move(r)};
    };

    const int workers = std::max(1, jobs);
    if (workers == 1 || n_cells <= 1)
    {
        for (std::size_t k = 0; k < n_cells; ++k)
            run_cell(k);
    }
    else
    {
        std::atomic<std::size_t> next{0};
        std::mutex error_mutex;
        std::exception_ptr first_error;
        std::vector<std::thread> pool;
        const int count = std::min<int>(workers, static_cast<int>(n_cells));
        pool.reserve(static_cast<std::size_t>(count));
        for (int w = 0; w < count; ++w)
        {
            pool.emplace_back([&] {
                for (;;)
                {
                    const std::size_t k = next.fetch_add(1);
                    if (k >= n_cells)
                        return;
                    try
                    {
                        run_cell(k);
                    }
                    catch (...)
                    {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error)
                            first_error = std::current_exception();
                    }
                }
            });
        }
        for (std::thread &t : pool)
            t.join();
        if (first_error)
            std::rethrow_exception(first_error);
    }

    for (std::size_t si = 0; si < config.strategies.size(); ++si)
    {
        std::vector<double> finals;
        std::vector<long long> ets;
        finals.reserve(n_seeds);
        ets.reserve(n_seeds);
        for (std::size_t j = 0; j < n_seeds; ++j)
        {
            const RunResult &r = out.cells[si * n_seeds + j].run;
            finals.push_back(r.best_value);
            ets.push_back(r.evals_to_success);
        }
        out.summaries.emplace_back(canonical_label(config.strategies[si]),
                                   summarize(finals, ets, out.success_threshold));
    }
    return out;
}

void write_outputs(const ExperimentResults &results, const std::string &out_dir)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + out_dir + ": " +
                                 ec.message());

    const fs::path traces_path = fs::path(out_dir) / "traces.csv";
    {
        std::ofstream csv(traces_path, std::ios::binary);
        if (!csv)
            throw std::runtime_error("cannot open " + traces_path.string() + " for writing");
        csv << "strategy,seed,iter,evals,gbest,diversity\n";
        for (const CellResult &cell : results.cells)
            for (const TracePoint &tp : cell.run.trace)
                csv << cell.strategy << ',' << cell.seed << ',' << tp.iter << ','
                    << tp.evals << ',' << format_shortest(tp.gbest) << ','
                    << format_shortest(tp.diversity) << '\n';
        csv.flush();
        if (!csv)
            throw std::runtime_error("write failed: " + traces_path.string());
    }

    nlohmann::ordered_json summary;
    for (const auto &[label, s] : results.summaries)
    {
        nlohmann::ordered_json row;
        row["best_final"] = s.best_final;
        row["median_final"] = s.median_final;
        row["mean_final"] = s.mean_final;
        row["std_final"] = s.std_final;
        row["success_rate"] = s.success_rate;
        if (s.median_evals_to_success)
            row["median_evals_to_success"] = *s.median_evals_to_success;
        else
            row["median_evals_to_success"] = nullptr;
        summary[label] = std::move(row);
    }
    const fs::path summary_path = fs::path(out_dir) / "summary.json";
    std::ofstream js(summary_path, std::ios::binary);
    if (!js)
        throw std::runtime_error("cannot open " + summary_path.string() + " for writing");
    js << summary.dump(2) << '\n';
    js.flush();
    if (!js)
        throw std::runtime_error("write failed: " + summary_path.string());
}

} // namespace swarmgrad
