#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "iwc/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"iwcsim: agent-based simulator of pedestrian road-crossing behavior"};
    app.require_subcommand(1);

    iwc::RunOptions run_opts;
    run_opts.out_dir = iwc::default_out_dir();
    std::uint64_t seed_arg = 0;
    std::int64_t steps_arg = 0;
    CLI::App* run = app.add_subcommand("run", "Simulate one scenario and write its outputs");
    run->add_option("--scenario", run_opts.scenario_path, "Scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    CLI::Option* seed_opt = run->add_option("--seed", seed_arg, "Override the scenario seed");
    CLI::Option* steps_opt = run->add_option("--steps", steps_arg, "Override the step count");
    run->add_option("--out", run_opts.out_dir, "Output directory")->required();

    iwc::ExperimentOptions exp_opts;
    exp_opts.out_dir = iwc::default_out_dir();
    CLI::App* experiment = app.add_subcommand("experiment", "Run a parameter sweep");
    experiment->add_option("--suite", exp_opts.suite,
                           "lawobedience_traits, aggressive_sweep, ttc_methods, "
                           "crossing_patterns or custom")
        ->required();
    experiment->add_option("--grid", exp_opts.grid_path,
                           "Parameter grid JSON (with --suite custom)");
    experiment->add_option("--jobs", exp_opts.jobs, "Concurrent simulation runs")
        ->check(CLI::PositiveNumber);
    experiment->add_option("--out", exp_opts.out_dir, "Output directory")->required();

    iwc::ValidateOptions val_opts;
    CLI::App* validate = app.add_subcommand("validate", "Check a scenario file");
    validate->add_option("--scenario", val_opts.scenario_path, "Scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        if (*seed_opt) run_opts.seed = seed_arg;
        if (*steps_opt) run_opts.steps = steps_arg;
        return iwc::run_command(run_opts, std::cerr);
    }
    if (experiment->parsed()) return iwc::experiment_command(exp_opts, std::cerr);
    if (validate->parsed()) return iwc::validate_command(val_opts, std::cout, std::cerr);
    return 1;
}
