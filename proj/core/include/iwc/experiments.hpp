#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iwc/config.hpp"

namespace iwc {

/// One point of a sweep: condition labels (parallel to the suite's
/// condition_names) plus the fully resolved scenario to run.
struct ExperimentCell {
    std::vector<std::string> condition_values;
    ScenarioConfig scenario;
};

struct ExperimentSpec {
    std::string suite;
    std::vector<std::string> condition_names;
    std::vector<ExperimentCell> cells;
    int replications = 5;
};

/// Built-in suites: lawobedience_traits, aggressive_sweep, ttc_methods,
/// crossing_patterns. Throws std::runtime_error listing the available
/// suites when the name is unknown.
ExperimentSpec make_suite(const std::string& name);

/// Names of the built-in suites, in the order make_suite accepts them.
const std::vector<std::string>& builtin_suites();

/// Custom sweep from a JSON grid document:
///   {"base": {<scenario overrides>}, "vary": {"dotted.key": [values...]},
///    "replications": N}
/// Cells are the cross-product of the vary lists, keys in sorted order.
ExperimentSpec make_custom_suite(const std::string& grid_json);

/// One (cell, replication, metric) observation. An absent metric (e.g. no
/// crossings happened) keeps its row with has_value = false so the output
/// schema is identical across runs.
struct LongRow {
    std::vector<std::string> conditions;
    int replication = 0;
    std::uint64_t seed = 0;
    std::string metric;
    double value = 0.0;
    bool has_value = false;
};

/// Executes every cell x replication, up to `jobs` cells in flight at once.
/// Row order is deterministic regardless of scheduling.
std::vector<LongRow> run_experiment(const ExperimentSpec& spec, int jobs);

/// Long-format CSV: suite, <condition names...>, replication, seed, metric, value.
std::string experiment_long_csv(const ExperimentSpec& spec, const std::vector<LongRow>& rows);

/// Per-cell mean and stdev across replications:
/// suite, <condition names...>, metric, n, mean, stdev, display ("mean (stdev)").
std::string experiment_summary_csv(const ExperimentSpec& spec, const std::vector<LongRow>& rows);

/// Same aggregates as the summary CSV, as a JSON array of cell objects.
std::string experiment_summary_json(const ExperimentSpec& spec, const std::vector<LongRow>& rows);

}  // namespace iwc
