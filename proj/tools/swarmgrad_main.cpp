#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "swarmgrad/harness/config.hpp"
#include "swarmgrad/harness/experiment.hpp"
#include "swarmgrad/objectives/suite.hpp"

namespace {

using namespace swarmgrad;

int cmd_list()
{
    std::vector<std::string> names = strategy_names();
    for (const std::string &n : objective_names())
        names.push_back(n);
    std::sort(names.begin(), names.end());
    for (const std::string &n : names)
        std::cout << n << "\n";
    return 0;
}

ExperimentConfig load_with_overrides(const std::string &config_path,
                                     const std::vector<std::string> &overrides)
{
    std::ifstream in(config_path);
    if (!in)
        throw ConfigError("cannot open config file: " + config_path);
    nlohmann::json doc;
    try
    {
        in >> doc;
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw ConfigError(std::string("config parse error in ") + config_path + ": " +
                          e.what());
    }
    for (const std::string &assignment : overrides)
        apply_override(doc, assignment);
    return parse_config(doc);
}

std::string fmt_cell(double v)
{
    std::ostringstream os;
    os << std::setprecision(6) << std::scientific << v;
    return os.str();
}

void print_comparison(const ExperimentResults &results)
{
    const std::vector<std::string> headers = {"strategy", "median_final", "success_rate",
                                              "median_evals_to_success"};
    std::vector<std::vector<std::string>> rows;
    for (const auto &[label, s] : results.summaries)
    {
        std::ostringstream rate;
        rate << std::setprecision(3) << s.success_rate;
        rows.push_back({label, fmt_cell(s.median_final), rate.str(),
                        s.median_evals_to_success
                            ? format_shortest(*s.median_evals_to_success)
                            : std::string("never")});
    }

    std::vector<std::size_t> width(headers.size());
    for (std::size_t c = 0; c < headers.size(); ++c)
    {
        width[c] = headers[c].size();
        for (const auto &row : rows)
            width[c] = std::max(width[c], row[c].size());
    }
    auto print_row = [&](const std::vector<std::string> &row) {
        for (std::size_t c = 0; c < row.size(); ++c)
            std::cout << std::left << std::setw(static_cast<int>(width[c]) + 2) << row[c];
        std::cout << "\n";
    };
    print_row(headers);
    std::vector<std::string> rule;
    for (std::size_t c = 0; c < headers.size(); ++c)
        rule.push_back(std::string(width[c], '-'));
    print_row(rule);
    for (const auto &row : rows)
        print_row(row);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"PSO / gradient hybrid optimization experiments"};
    app.require_subcommand(1);

    app.add_subcommand("list", "Print all strategy and objective names");

    std::string config_path;
    std::string out_dir = "./results";
    std::vector<std::string> overrides;
    int jobs = 1;

    CLI::App *run = app.add_subcommand("run", "Run an experiment and write outputs");
    run->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "Output directory (default ./results)");
    run->add_option("--set", overrides, "KEY=VALUE config override (repeatable)");
    run->add_option("--jobs", jobs, "Worker threads (default 1)");

    CLI::App *compare = app.add_subcommand("compare", "Run and print a comparison table");
    compare->add_option("--config", config_path, "Experiment config (JSON)")->required();
    compare->add_option("--out", out_dir, "Output directory (default ./results)");
    compare->add_option("--set", overrides, "KEY=VALUE config override (repeatable)");
    compare->add_option("--jobs", jobs, "Worker threads (default 1)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try
    {
        if (app.got_subcommand("list"))
            return cmd_list();

        ExperimentConfig config = load_with_overrides(config_path, overrides);
        ExperimentResults results = run_experiment(config, jobs);
        write_outputs(results, out_dir);
        if (app.got_subcommand("compare"))
            print_comparison(results);
        else
            std::cout << "wrote " << out_dir << "/traces.csv and " << out_dir
                      << "/summary.json\n";
        return 0;
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
