#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "iwc/engine.hpp"

namespace iwc {

struct RunOptions {
    std::string scenario_path;          // empty runs the default scenario
    std::optional<std::uint64_t> seed;  // overrides run.seed
    std::optional<std::int64_t> steps;  // overrides run.steps
    std::string out_dir;
};

struct ExperimentOptions {
    std::string suite;
    std::string grid_path;  // JSON grid file, required when suite == "custom"
    int jobs = 1;
    std::string out_dir;
};

struct ValidateOptions {
    std::string scenario_path;
};

/// $IWCSIM_OUT_DIR when set, "out" otherwise.
std::string default_out_dir();

/// Simulates one run and writes metrics.csv, events.csv, summary.json into
/// out_dir. Either all three files appear or none do. Returns the exit code.
int run_command(const RunOptions& opts, std::ostream& err);

/// Runs a sweep and writes results.csv (long format), summary.csv and
/// summary.json into out_dir. Returns the exit code.
int experiment_command(const ExperimentOptions& opts, std::ostream& err);

/// Parses and validates a scenario, reporting problems. Returns the exit code.
int validate_command(const ValidateOptions& opts, std::ostream& out, std::ostream& err);

// Renderers shared by run_command and the tests.
std::string metrics_csv_text(const std::string& run_id, std::uint64_t seed,
                             const MetricsSummary& metrics);
std::string events_csv_text(const std::string& run_id, std::uint64_t seed,
                            const std::vector<PedEvent>& events,
                            const std::vector<CollisionEvent>& collisions);
std::string run_summary_json_text(const std::string& run_id, std::uint64_t seed,
                                  const ScenarioConfig& scenario, const MetricsSummary& metrics);

}  // namespace iwc
