#include "iwc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "iwc/config_json.hpp"
#include "iwc/experiments.hpp"

namespace iwc {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

ScenarioConfig load_scenario(const std::string& path) {
    if (path.empty()) return ScenarioConfig{};
    return parse_scenario_file(path);
}

/// Writes every (path, content) pair or none: contents are rendered up front,
/// all streams are opened and checked before the first byte is written, and
/// files this call created are removed again on failure.
void write_all_or_nothing(const std::vector<std::pair<fs::path, std::string>>& files) {
    std::error_code ec;
    std::vector<fs::path> created;
    auto cleanup = [&]() {
        for (const fs::path& p : created) fs::remove(p, ec);
    };
    std::vector<std::ofstream> streams;
    streams.reserve(files.size());
    for (const auto& [path, content] : files) {
        (void)content;
        const bool existed = fs::exists(path, ec);
        streams.emplace_back(path, std::ios::binary | std::ios::trunc);
        if (!existed && fs::exists(path, ec)) created.push_back(path);
        if (!streams.back()) {
            cleanup();
            throw std::runtime_error("cannot write '" + path.string() + "'");
        }
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        streams[i] << files[i].second;
        streams[i].flush();
        if (!streams[i]) {
            streams.clear();
            cleanup();
            throw std::runtime_error("failed while writing '" + files[i].first.string() + "'");
        }
    }
}

fs::path prepare_out_dir(const std::string& out_dir) {
    const fs::path dir = out_dir.empty() ? fs::path(default_out_dir()) : fs::path(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output dir '" + dir.string() + "'");
    return dir;
}

json aggregate_json(const std::optional<Aggregate>& a) {
    if (!a) return nullptr;
    return json{{"mean", a->mean}, {"stdev", a->stdev}, {"n", a->n}};
}

}  // namespace

std::string default_out_dir() {
    if (const char* env = std::getenv("IWCSIM_OUT_DIR"); env && *env) return env;
    return "out";
}

std::string metrics_csv_text(const std::string& run_id, std::uint64_t seed,
                             const MetricsSummary& metrics) {
    std::ostringstream out;
    out << "run_id,seed,ped,type,trait,law_declared,law_resolved,wait_time,min_ttc,"
           "cross_duration,crossings,illegal_crossings,mean_speed,arrived,collided\n";
    for (const PedMetricsRow& row : metrics.rows) {
        out << run_id << ',' << seed << ',' << row.ped << ',' << to_string(row.type) << ','
            << to_string(row.trait) << ',' << to_string(row.law_declared) << ','
            << to_string(row.law_resolved) << ',' << num(row.wait_time) << ',';
        if (std::isfinite(row.min_ttc)) out << num(row.min_ttc);
        out << ',' << num(row.cross_duration) << ',' << row.crossings << ','
            << row.illegal_crossings << ',' << num(row.mean_speed) << ','
            << (row.arrived ? 1 : 0) << ',' << (row.collided ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string events_csv_text(const std::string& run_id, std::uint64_t seed,
                            const std::vector<PedEvent>& events,
                            const std::vector<CollisionEvent>& collisions) {
    struct Line {
        double t;
        std::string text;
    };
    std::vector<Line> lines;
    lines.reserve(events.size() + collisions.size());
    for (const PedEvent& ev : events) {
        std::ostringstream line;
        line << run_id << ',' << seed << ',' << num(ev.t) << ',' << ev.ped << ','
             << to_string(ev.kind) << ',' << num(ev.value) << '\n';
        lines.push_back({ev.t, line.str()});
    }
    for (const CollisionEvent& ev : collisions) {
        std::ostringstream line;
        line << run_id << ',' << seed << ',' << num(ev.t) << ',' << ev.ped << ",collision,"
             << ev.veh << '\n';
        lines.push_back({ev.t, line.str()});
    }
    std::stable_sort(lines.begin(), lines.end(),
                     [](const Line& a, const Line& b) { return a.t < b.t; });
    std::string out = "run_id,seed,t,ped,event,value\n";
    for (const Line& line : lines) out += line.text;
    return out;
}

std::string run_summary_json_text(const std::string& run_id, std::uint64_t seed,
                                  const ScenarioConfig& scenario, const MetricsSummary& metrics) {
    json j;
    j["run_id"] = run_id;
    j["seed"] = seed;
    j["steps"] = scenario.run.steps;
    j["dt"] = scenario.run.dt;
    j["ttc_method"] = to_string(scenario.ttc.method);
    json agg;
    if (metrics.wait_time) agg["wait_time"] = aggregate_json(metrics.wait_time);
    if (metrics.min_ttc) agg["min_ttc"] = aggregate_json(metrics.min_ttc);
    if (metrics.cross_duration) agg["cross_duration"] = aggregate_json(metrics.cross_duration);
    if (metrics.walk_speed) agg["walk_speed"] = aggregate_json(metrics.walk_speed);
    j["aggregates"] = agg.is_null() ? json::object() : agg;
    j["collisions"] = metrics.collisions;
    j["crossings_total"] = metrics.crossings_total;
    j["crossings_illegal"] = metrics.crossings_illegal;
    if (metrics.illegal_pct) j["illegal_pct"] = *metrics.illegal_pct;
    j["peds_spawned"] = metrics.peds_spawned;
    j["peds_arrived"] = metrics.peds_arrived;
    j["peds_collided"] = metrics.peds_collided;
    j["peds_active_at_end"] = metrics.peds_active_at_end;
    j["vehicles_spawned"] = metrics.vehicles_spawned;
    return j.dump(2) + "\n";
}

int run_command(const RunOptions& opts, std::ostream& err) {
    try {
        ScenarioConfig scenario = load_scenario(opts.scenario_path);
        if (opts.seed) scenario.run.seed = *opts.seed;
        if (opts.steps) scenario.run.steps = *opts.steps;

        const std::uint64_t seed = scenario.run.seed;
        const RunResult result = run_simulation(scenario, seed);
        const std::string run_id = "run_" + std::to_string(seed);

        const fs::path dir = prepare_out_dir(opts.out_dir);
        write_all_or_nothing({
            {dir / "metrics.csv", metrics_csv_text(run_id, seed, result.metrics)},
            {dir / "events.csv",
             events_csv_text(run_id, seed, result.events, result.collisions)},
            {dir / "summary.json",
             run_summary_json_text(run_id, seed, scenario, result.metrics)},
        });
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int experiment_command(const ExperimentOptions& opts, std::ostream& err) {
    try {
        ExperimentSpec spec;
        if (opts.suite == "custom") {
            if (opts.grid_path.empty())
                throw std::runtime_error("suite 'custom' requires --grid <file>");
            std::ifstream in(opts.grid_path, std::ios::binary);
            if (!in) throw std::runtime_error("cannot open '" + opts.grid_path + "'");
            std::ostringstream buf;
            buf << in.rdbuf();
            spec = make_custom_suite(buf.str());
        } else {
            spec = make_suite(opts.suite);
        }

        const std::vector<LongRow> rows = run_experiment(spec, opts.jobs);

        const fs::path dir = prepare_out_dir(opts.out_dir);
        write_all_or_nothing({
            {dir / "results.csv", experiment_long_csv(spec, rows)},
            {dir / "summary.csv", experiment_summary_csv(spec, rows)},
            {dir / "summary.json", experiment_summary_json(spec, rows)},
        });
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int validate_command(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const ScenarioConfig cfg = load_scenario(opts.scenario_path);
        const RoadNetwork net = build_grid_network(cfg.geometry, cfg.signal);
        out << "scenario OK: " << net.lanes.size() << " lanes, " << net.crosswalks.size()
            << " crosswalks, " << cfg.pedestrians.count << " pedestrians, "
            << cfg.run.steps << " steps @ dt " << num(cfg.run.dt) << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace iwc
