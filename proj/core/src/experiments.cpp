#include "iwc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "iwc/config_json.hpp"
#include "iwc/engine.hpp"
#include "iwc/types.hpp"

namespace iwc {

namespace {

using nlohmann::json;

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {
        "wait_time", "min_ttc",   "cross_duration", "walk_speed",
        "collisions", "crossings", "illegal_pct"};
    return names;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void set_all_traits(PedestrianConfig& p, PedTrait t) {
    p.trait_conservative_pct = t == PedTrait::conservative ? 100.0 : 0.0;
    p.trait_aggressive_pct = t == PedTrait::aggressive ? 100.0 : 0.0;
    p.trait_average_pct = t == PedTrait::average ? 100.0 : 0.0;
}

void set_all_laws(PedestrianConfig& p, LawObedience l) {
    p.law_violating_pct = l == LawObedience::violating ? 100.0 : 0.0;
    p.law_obedient_pct = l == LawObedience::obedient ? 100.0 : 0.0;
    p.law_average_pct = l == LawObedience::average ? 100.0 : 0.0;
}

ExperimentSpec suite_lawobedience_traits() {
    ExperimentSpec spec;
    spec.suite = "lawobedience_traits";
    spec.condition_names = {"law", "trait"};
    for (LawObedience law :
         {LawObedience::obedient, LawObedience::violating, LawObedience::average}) {
        for (PedTrait trait :
             {PedTrait::conservative, PedTrait::aggressive, PedTrait::average}) {
            ExperimentCell cell;
            cell.condition_values = {to_string(law), to_string(trait)};
            cell.scenario.run.steps = 2500;
            set_all_laws(cell.scenario.pedestrians, law);
            set_all_traits(cell.scenario.pedestrians, trait);
            spec.cells.push_back(std::move(cell));
        }
    }
    return spec;
}

ExperimentSpec suite_aggressive_sweep() {
    ExperimentSpec spec;
    spec.suite = "aggressive_sweep";
    spec.condition_names = {"law", "vehicle_period", "aggressive_pct"};
    for (LawObedience law : {LawObedience::violating, LawObedience::average}) {
        for (double period : {8.0, 6.0, 5.0, 4.0, 3.0}) {
            for (double aggressive : {0.0, 25.0, 50.0, 75.0, 100.0}) {
                ExperimentCell cell;
                cell.condition_values = {to_string(law), num(period), num(aggressive)};
                cell.scenario.run.steps = 1000;
                cell.scenario.vehicles.spawn_period = period;
                set_all_laws(cell.scenario.pedestrians, law);
                cell.scenario.pedestrians.trait_aggressive_pct = aggressive;
                cell.scenario.pedestrians.trait_conservative_pct = 100.0 - aggressive;
                cell.scenario.pedestrians.trait_average_pct = 0.0;
                spec.cells.push_back(std::move(cell));
            }
        }
    }
    return spec;
}

ExperimentSpec suite_ttc_methods() {
    ExperimentSpec spec;
    spec.suite = "ttc_methods";
    spec.condition_names = {"method", "vehicle_period"};
    for (TtcMethod method : {TtcMethod::constant, TtcMethod::average, TtcMethod::dynamic,
                             TtcMethod::dynamic_adj, TtcMethod::dynamic_adj_noise}) {
        for (double period : {6.0, 4.0, 2.0}) {
            ExperimentCell cell;
            cell.condition_values = {to_string(method), num(period)};
            cell.scenario.run.steps = 1000;
            cell.scenario.vehicles.spawn_period = period;
            cell.scenario.ttc.method = method;
            set_all_laws(cell.scenario.pedestrians, LawObedience::violating);
            cell.scenario.pedestrians.one_stage_pct = 100.0;
            spec.cells.push_back(std::move(cell));
        }
    }
    return spec;
}

ExperimentSpec suite_crossing_patterns() {
    ExperimentSpec spec;
    spec.suite = "crossing_patterns";
    spec.condition_names = {"pattern", "vehicle_period"};
    for (CrossingPattern pattern : {CrossingPattern::rolling_gap, CrossingPattern::one_stage}) {
        for (double period : {6.0, 4.0, 2.0}) {
            ExperimentCell cell;
            cell.condition_values = {to_string(pattern), num(period)};
            cell.scenario.run.steps = 1000;
            cell.scenario.vehicles.spawn_period = period;
            cell.scenario.ttc.method = TtcMethod::dynamic_adj;
            set_all_laws(cell.scenario.pedestrians, LawObedience::violating);
            cell.scenario.pedestrians.one_stage_pct =
                pattern == CrossingPattern::one_stage ? 100.0 : 0.0;
            spec.cells.push_back(std::move(cell));
        }
    }
    return spec;
}

std::string condition_scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return num(v.get<double>());
    throw std::runtime_error("grid: vary values must be scalars");
}

void set_dotted(json& doc, const std::string& dotted, const json& value) {
    json* cur = &doc;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = dotted.find('.', start);
        const std::string part = dotted.substr(start, dot - start);
        if (part.empty()) throw std::runtime_error("grid: bad key '" + dotted + "'");
        if (dot == std::string::npos) {
            (*cur)[part] = value;
            return;
        }
        cur = &(*cur)[part];
        start = dot + 1;
    }
}

/// Ordered comparison of condition labels: numeric when both sides parse as
/// numbers, lexicographic otherwise.
bool condition_less(const std::string& a, const std::string& b) {
    char* enda = nullptr;
    char* endb = nullptr;
    const double da = std::strtod(a.c_str(), &enda);
    const double db = std::strtod(b.c_str(), &endb);
    const bool na = enda != a.c_str() && *enda == '\0' && !a.empty();
    const bool nb = endb != b.c_str() && *endb == '\0' && !b.empty();
    if (na && nb) return da < db;
    return a < b;
}

bool conditions_less(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (condition_less(a[i], b[i])) return true;
        if (condition_less(b[i], a[i])) return false;
    }
    return a.size() < b.size();
}

int metric_index(const std::string& name) {
    const auto& names = metric_names();
    const auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? static_cast<int>(names.size())
                             : static_cast<int>(it - names.begin());
}

std::vector<LongRow> sorted_rows(std::vector<LongRow> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const LongRow& a, const LongRow& b) {
        if (conditions_less(a.conditions, b.conditions)) return true;
        if (conditions_less(b.conditions, a.conditions)) return false;
        if (a.replication != b.replication) return a.replication < b.replication;
        return metric_index(a.metric) < metric_index(b.metric);
    });
    return rows;
}

struct CellSummary {
    std::vector<std::string> conditions;
    // metric -> values across replications
    std::map<int, std::vector<double>> values;
};

std::vector<CellSummary> summarize(const std::vector<LongRow>& rows) {
    std::vector<CellSummary> cells;
    for (const LongRow& row : sorted_rows(rows)) {
        if (cells.empty() || cells.back().conditions != row.conditions) {
            cells.push_back(CellSummary{row.conditions, {}});
        }
        if (row.has_value) cells.back().values[metric_index(row.metric)].push_back(row.value);
    }
    return cells;
}

struct MeanStdev {
    double mean = 0.0;
    double stdev = 0.0;
    int n = 0;
};

MeanStdev mean_stdev(const std::vector<double>& xs) {
    MeanStdev out;
    out.n = static_cast<int>(xs.size());
    if (xs.empty()) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.stdev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return out;
}

}  // namespace

const std::vector<std::string>& builtin_suites() {
    static const std::vector<std::string> names = {"lawobedience_traits", "aggressive_sweep",
                                                   "ttc_methods", "crossing_patterns"};
    return names;
}

ExperimentSpec make_suite(const std::string& name) {
    if (name == "lawobedience_traits") return suite_lawobedience_traits();
    if (name == "aggressive_sweep") return suite_aggressive_sweep();
    if (name == "ttc_methods") return suite_ttc_methods();
    if (name == "crossing_patterns") return suite_crossing_patterns();
    std::string msg = "unknown suite '" + name + "'; available:";
    for (const std::string& s : builtin_suites()) msg += " " + s + ",";
    msg.back() = ' ';
    msg += "custom";
    throw std::runtime_error(msg);
}

ExperimentSpec make_custom_suite(const std::string& grid_json) {
    json grid;
    try {
        grid = json::parse(grid_json);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("grid: malformed JSON: ") + e.what());
    }
    if (!grid.is_object()) throw std::runtime_error("grid: document must be an object");
    for (const auto& item : grid.items()) {
        if (item.key() != "base" && item.key() != "vary" && item.key() != "replications")
            throw std::runtime_error("grid: unknown key '" + item.key() + "'");
    }

    json base = json::parse(scenario_to_json(ScenarioConfig{}));
    if (grid.contains("base")) {
        if (!grid["base"].is_object()) throw std::runtime_error("grid: 'base' must be an object");
        base.merge_patch(grid["base"]);
    }

    std::map<std::string, std::vector<json>> vary;
    if (grid.contains("vary")) {
        if (!grid["vary"].is_object()) throw std::runtime_error("grid: 'vary' must be an object");
        for (const auto& item : grid["vary"].items()) {
            if (!item.value().is_array() || item.value().empty())
                throw std::runtime_error("grid: vary key '" + item.key() +
                                         "' must map to a non-empty array");
            vary[item.key()] = std::vector<json>(item.value().begin(), item.value().end());
        }
    }

    ExperimentSpec spec;
    spec.suite = "custom";
    for (const auto& [key, values] : vary) {
        spec.condition_names.push_back(key);
        (void)values;
    }

    std::vector<std::size_t> radix;
    radix.reserve(vary.size());
    for (const auto& [key, values] : vary) {
        (void)key;
        radix.push_back(values.size());
    }
    std::size_t total = 1;
    for (std::size_t r : radix) total *= r;

    for (std::size_t idx = 0; idx < total; ++idx) {
        json doc = base;
        ExperimentCell cell;
        std::size_t rem = idx;
        std::size_t axis = vary.size();
        std::vector<std::size_t> digits(vary.size(), 0);
        for (auto it = radix.rbegin(); it != radix.rend(); ++it) {
            --axis;
            digits[axis] = rem % *it;
            rem /= *it;
        }
        axis = 0;
        for (const auto& [key, values] : vary) {
            const json& v = values[digits[axis]];
            set_dotted(doc, key, v);
            cell.condition_values.push_back(condition_scalar(v));
            ++axis;
        }
        cell.scenario = parse_scenario_text(doc.dump());
        spec.cells.push_back(std::move(cell));
    }

    spec.replications = spec.cells.empty() ? 1 : spec.cells.front().scenario.run.replications;
    if (grid.contains("replications")) {
        if (!grid["replications"].is_number_integer() || grid["replications"].get<int>() < 1)
            throw std::runtime_error("grid: 'replications' must be a positive integer");
        spec.replications = grid["replications"].get<int>();
    }
    return spec;
}

std::vector<LongRow> run_experiment(const ExperimentSpec& spec, int jobs) {
    const int reps = std::max(1, spec.replications);
    const std::size_t tasks = spec.cells.size() * static_cast<std::size_t>(reps);
    const auto& metrics = metric_names();

    // One slot per (cell, replication, metric); filled concurrently, read in order.
    std::vector<std::optional<double>> values(tasks * metrics.size());

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
        while (true) {
            const std::size_t task = next.fetch_add(1);
            if (task >= tasks) return;
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error) return;
            }
            const std::size_t cell_idx = task / static_cast<std::size_t>(reps);
            const int rep = static_cast<int>(task % static_cast<std::size_t>(reps));
            const ExperimentCell& cell = spec.cells[cell_idx];
            try {
                const std::uint64_t seed =
                    cell.scenario.run.seed + static_cast<std::uint64_t>(rep);
                const RunResult result = run_simulation(cell.scenario, seed);
                const MetricsSummary& m = result.metrics;
                auto put = [&](std::size_t metric_idx, std::optional<double> v) {
                    values[task * metrics.size() + metric_idx] = v;
                };
                auto agg = [](const std::optional<Aggregate>& a) -> std::optional<double> {
                    if (!a) return std::nullopt;
                    return a->mean;
                };
                put(0, agg(m.wait_time));
                put(1, agg(m.min_ttc));
                put(2, agg(m.cross_duration));
                put(3, agg(m.walk_speed));
                put(4, static_cast<double>(m.collisions));
                put(5, static_cast<double>(m.crossings_total));
                put(6, m.illegal_pct);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const std::size_t nthreads =
        std::min<std::size_t>(std::max(1, jobs), std::max<std::size_t>(tasks, 1));
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    std::vector<LongRow> rows;
    rows.reserve(tasks * metrics.size());
    for (std::size_t cell_idx = 0; cell_idx < spec.cells.size(); ++cell_idx) {
        const ExperimentCell& cell = spec.cells[cell_idx];
        for (int rep = 0; rep < reps; ++rep) {
            const std::size_t task = cell_idx * static_cast<std::size_t>(reps) +
                                     static_cast<std::size_t>(rep);
            for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
                LongRow row;
                row.conditions = cell.condition_values;
                row.replication = rep;
                row.seed = cell.scenario.run.seed + static_cast<std::uint64_t>(rep);
                row.metric = metrics[mi];
                const std::optional<double>& v = values[task * metrics.size() + mi];
                row.has_value = v.has_value();
                row.value = v.value_or(0.0);
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::string experiment_long_csv(const ExperimentSpec& spec, const std::vector<LongRow>& rows) {
    std::ostringstream out;
    out << "suite";
    for (const std::string& name : spec.condition_names) out << ',' << csv_escape(name);
    out << ",replication,seed,metric,value\n";
    for (const LongRow& row : sorted_rows(rows)) {
        out << csv_escape(spec.suite);
        for (const std::string& c : row.conditions) out << ',' << csv_escape(c);
        out << ',' << row.replication << ',' << row.seed << ',' << csv_escape(row.metric) << ',';
        if (row.has_value) out << num(row.value);
        out << '\n';
    }
    return out.str();
}

std::string experiment_summary_csv(const ExperimentSpec& spec, const std::vector<LongRow>& rows) {
    std::ostringstream out;
    out << "suite";
    for (const std::string& name : spec.condition_names) out << ',' << csv_escape(name);
    out << ",metric,n,mean,stdev,display\n";
    const auto& metrics = metric_names();
    for (const CellSummary& cell : summarize(rows)) {
        for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
            out << csv_escape(spec.suite);
            for (const std::string& c : cell.conditions) out << ',' << csv_escape(c);
            out << ',' << csv_escape(metrics[mi]) << ',';
            const auto it = cell.values.find(static_cast<int>(mi));
            if (it == cell.values.end()) {
                out << "0,,,\n";
                continue;
            }
            const MeanStdev ms = mean_stdev(it->second);
            char display[64];
            std::snprintf(display, sizeof(display), "%.2f (%.2f)", ms.mean, ms.stdev);
            out << ms.n << ',' << num(ms.mean) << ',' << num(ms.stdev) << ','
                << csv_escape(display) << '\n';
        }
    }
    return out.str();
}

std::string experiment_summary_json(const ExperimentSpec& spec, const std::vector<LongRow>& rows) {
    json cells = json::array();
    const auto& metrics = metric_names();
    for (const CellSummary& cell : summarize(rows)) {
        json entry;
        entry["suite"] = spec.suite;
        json conds;
        for (std::size_t i = 0; i < spec.condition_names.size() && i < cell.conditions.size(); ++i)
            conds[spec.condition_names[i]] = cell.conditions[i];
        entry["conditions"] = conds.is_null() ? json::object() : conds;
        json mj;
        for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
            const auto it = cell.values.find(static_cast<int>(mi));
            if (it == cell.values.end()) {
                mj[metrics[mi]] = nullptr;
                continue;
            }
            const MeanStdev ms = mean_stdev(it->second);
            mj[metrics[mi]] = {{"n", ms.n}, {"mean", ms.mean}, {"stdev", ms.stdev}};
        }
        entry["metrics"] = mj;
        cells.push_back(std::move(entry));
    }
    return cells.dump(2) + "\n";
}

}  // namespace iwc
