#include "iwc/config_json.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "iwc/types.hpp"

namespace iwc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("scenario: " + msg); }

const char* type_name(const json& j) {
    if (j.is_boolean()) return "boolean";
    if (j.is_number()) return "number";
    if (j.is_string()) return "string";
    if (j.is_array()) return "array";
    if (j.is_object()) return "object";
    return "null";
}

/// Tracks which keys of one JSON object were consumed so leftovers can be
/// reported as unknown keys.
class Section {
public:
    Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
        if (!j_.is_object()) fail("'" + name_ + "' must be an object, got " + type_name(j_));
    }

    bool has(const char* key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    const json& at(const char* key) { return j_.at(key); }

    void get(const char* key, double& out) {
        if (!has(key)) return;
        const json& v = at(key);
        if (!v.is_number()) type_error(key, "number", v);
        out = v.get<double>();
    }
    void get(const char* key, int& out) {
        if (!has(key)) return;
        const json& v = at(key);
        if (!v.is_number_integer()) type_error(key, "integer", v);
        out = v.get<int>();
    }
    void get(const char* key, std::int64_t& out) {
        if (!has(key)) return;
        const json& v = at(key);
        if (!v.is_number_integer()) type_error(key, "integer", v);
        out = v.get<std::int64_t>();
    }
    void get(const char* key, std::uint64_t& out) {
        if (!has(key)) return;
        const json& v = at(key);
        const bool ok =
            v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
        if (!ok) type_error(key, "non-negative integer", v);
        out = v.get<std::uint64_t>();
    }
    void get(const char* key, bool& out) {
        if (!has(key)) return;
        const json& v = at(key);
        if (!v.is_boolean()) type_error(key, "boolean", v);
        out = v.get<bool>();
    }
    void get(const char* key, Range& out) {
        if (!has(key)) return;
        Section sub(at(key), name_ + "." + key);
        sub.get("min", out.min);
        sub.get("max", out.max);
        sub.finish();
    }

    template <std::size_t N>
    void get(const char* key, std::array<double, N>& out) {
        if (!has(key)) return;
        const json& v = at(key);
        if (!v.is_array() || v.size() != N)
            type_error(key, ("array of " + std::to_string(N) + " numbers").c_str(), v);
        for (std::size_t i = 0; i < N; ++i) {
            if (!v[i].is_number()) type_error(key, "array of numbers", v);
            out[i] = v[i].get<double>();
        }
    }

    /// Marks the key consumed and returns its object payload (or null if absent).
    const json* object(const char* key) {
        if (!has(key)) return nullptr;
        return &at(key);
    }

    void finish() {
        for (const auto& item : j_.items())
            if (seen_.find(item.key()) == seen_.end())
                fail("unknown key '" + item.key() + "' in section '" + name_ + "'");
    }

    [[noreturn]] void type_error(const char* key, const char* want, const json& got) {
        fail("key '" + name_ + "." + key + "': expected " + want + ", got " + type_name(got));
    }

private:
    const json& j_;
    std::string name_;
    std::set<std::string> seen_;
};

void parse_geometry(const json& j, GeometryConfig& g) {
    Section s(j, "geometry");
    s.get("h_nodes", g.h_nodes);
    s.get("v_nodes", g.v_nodes);
    s.get("node_spacing", g.node_spacing);
    s.get("lanes_per_direction", g.lanes_per_direction);
    s.get("lane_width", g.lane_width);
    s.get("sidewalk_width", g.sidewalk_width);
    s.get("road_max_speed", g.road_max_speed);
    s.get("crosswalk_offset_edges", g.crosswalk_offset_edges);
    s.finish();
}

void parse_signal(const json& j, SignalConfig& sig) {
    Section s(j, "signal");
    s.get("vehicle_green", sig.vehicle_green);
    s.get("clearance", sig.clearance);
    s.get("pedestrian_green", sig.pedestrian_green);
    s.get("offset", sig.offset);
    s.finish();
}

void parse_vehicle_type(const json& j, const std::string& name, VehicleTypeParams& p) {
    Section s(j, "vehicles.types." + name);
    s.get("length", p.length);
    s.get("width", p.width);
    s.get("max_speed", p.max_speed);
    s.get("accel", p.accel);
    s.get("decel", p.decel);
    s.get("emergency_decel", p.emergency_decel);
    s.finish();
}

void parse_vehicles(const json& j, VehicleConfig& v) {
    Section s(j, "vehicles");
    s.get("spawn_period", v.spawn_period);
    s.get("mix_pct", v.mix_pct);
    s.get("signaling_distance", v.signaling_distance);
    s.get("turn_speed", v.turn_speed);
    s.get("headway", v.headway);
    s.get("min_gap", v.min_gap);
    s.get("sight_distance", v.sight_distance);
    s.get("reaction_time", v.reaction_time);
    if (const json* types = s.object("types")) {
        Section ts(*types, "vehicles.types");
        for (const auto& item : types->items()) {
            VehType t;
            try {
                t = veh_type_from_string(item.key());
            } catch (const std::invalid_argument&) {
                fail("unknown key '" + item.key() + "' in section 'vehicles.types'");
            }
            ts.has(item.key().c_str());
            parse_vehicle_type(item.value(), item.key(), v.types[static_cast<std::size_t>(t)]);
        }
        ts.finish();
    }
    s.finish();
}

void parse_pedestrians(const json& j, PedestrianConfig& p) {
    Section s(j, "pedestrians");
    s.get("count", p.count);
    s.get("arrival_period", p.arrival_period);
    if (const json* t = s.object("trait_pct")) {
        Section ts(*t, "pedestrians.trait_pct");
        ts.get("conservative", p.trait_conservative_pct);
        ts.get("aggressive", p.trait_aggressive_pct);
        ts.get("average", p.trait_average_pct);
        ts.finish();
    }
    if (const json* t = s.object("law_pct")) {
        Section ts(*t, "pedestrians.law_pct");
        ts.get("violating", p.law_violating_pct);
        ts.get("obedient", p.law_obedient_pct);
        ts.get("average", p.law_average_pct);
        ts.finish();
    }
    if (const json* t = s.object("type_pct")) {
        Section ts(*t, "pedestrians.type_pct");
        ts.get("adult", p.type_adult_pct);
        ts.get("child", p.type_child_pct);
        ts.get("elderly", p.type_elderly_pct);
        ts.finish();
    }
    if (const json* t = s.object("mean_speed")) {
        Section ts(*t, "pedestrians.mean_speed");
        ts.get("adult", p.mean_speed_adult);
        ts.get("child", p.mean_speed_child);
        ts.get("elderly", p.mean_speed_elderly);
        ts.finish();
    }
    s.get("speed_stddev", p.speed_stddev);
    s.get("gap_range", p.gap_range);
    s.get("gap_min", p.gap_min);
    s.get("wt_const", p.wt_const);
    s.get("dist_c_range", p.dist_c_range);
    s.get("speedup_factor", p.speedup_factor);
    s.get("crossing_pct", p.crossing_pct);
    s.get("one_stage_pct", p.one_stage_pct);
    s.get("go_around_blocking_pct", p.go_around_blocking_pct);
    if (const json* t = s.object("mode_pct")) {
        Section ts(*t, "pedestrians.mode_pct");
        ts.get("walk", p.mode_walk_pct);
        ts.get("drive", p.mode_drive_pct);
        ts.get("bus", p.mode_bus_pct);
        ts.get("taxi", p.mode_taxi_pct);
        ts.finish();
    }
    s.get("activity_prob", p.activity_prob);
    s.get("activity_duration", p.activity_duration);
    s.get("body_radius_adult", p.body_radius_adult);
    s.get("child_scale", p.child_scale);
    s.finish();
}

void parse_ttc(const json& j, TtcConfig& t) {
    Section s(j, "ttc");
    if (s.has("method")) {
        const json& v = s.at("method");
        if (!v.is_string()) s.type_error("method", "string", v);
        try {
            t.method = ttc_method_from_string(v.get<std::string>());
        } catch (const std::invalid_argument& e) {
            fail(std::string("key 'ttc.method': ") + e.what());
        }
    }
    s.get("noise_threshold", t.noise_threshold);
    s.finish();
}

void parse_crossing(const json& j, CrossingConfig& c) {
    Section s(j, "crossing");
    s.get("prefer_signalized", c.prefer_signalized);
    s.get("jaywalk_radius", c.jaywalk_radius);
    s.get("yield_ttc", c.yield_ttc);
    s.finish();
}

void parse_run(const json& j, RunConfig& r) {
    Section s(j, "run");
    s.get("steps", r.steps);
    s.get("dt", r.dt);
    s.get("seed", r.seed);
    s.get("replications", r.replications);
    s.finish();
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text) {
    ScenarioConfig cfg;
    const bool blank =
        std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
    if (!blank) {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            fail(std::string("malformed JSON: ") + e.what());
        }
        Section root(j, "scenario");
        if (const json* g = root.object("geometry")) parse_geometry(*g, cfg.geometry);
        if (const json* g = root.object("signal")) parse_signal(*g, cfg.signal);
        if (const json* g = root.object("vehicles")) parse_vehicles(*g, cfg.vehicles);
        if (const json* g = root.object("pedestrians")) parse_pedestrians(*g, cfg.pedestrians);
        if (const json* g = root.object("ttc")) parse_ttc(*g, cfg.ttc);
        if (const json* g = root.object("crossing")) parse_crossing(*g, cfg.crossing);
        if (const json* g = root.object("run")) parse_run(*g, cfg.run);
        root.finish();
    }
    const std::vector<std::string> errors = cfg.validate();
    if (!errors.empty()) {
        std::string msg = errors.front();
        for (std::size_t i = 1; i < errors.size(); ++i) msg += "; " + errors[i];
        fail(msg);
    }
    return cfg;
}

ScenarioConfig parse_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
    json j;
    j["geometry"] = {{"h_nodes", cfg.geometry.h_nodes},
                     {"v_nodes", cfg.geometry.v_nodes},
                     {"node_spacing", cfg.geometry.node_spacing},
                     {"lanes_per_direction", cfg.geometry.lanes_per_direction},
                     {"lane_width", cfg.geometry.lane_width},
                     {"sidewalk_width", cfg.geometry.sidewalk_width},
                     {"road_max_speed", cfg.geometry.road_max_speed},
                     {"crosswalk_offset_edges", cfg.geometry.crosswalk_offset_edges}};
    j["signal"] = {{"vehicle_green", cfg.signal.vehicle_green},
                   {"clearance", cfg.signal.clearance},
                   {"pedestrian_green", cfg.signal.pedestrian_green},
                   {"offset", cfg.signal.offset}};
    json types;
    for (std::size_t i = 0; i < cfg.vehicles.types.size(); ++i) {
        const VehicleTypeParams& p = cfg.vehicles.types[i];
        types[to_string(static_cast<VehType>(i))] = {
            {"length", p.length},           {"width", p.width},
            {"max_speed", p.max_speed},     {"accel", p.accel},
            {"decel", p.decel},             {"emergency_decel", p.emergency_decel}};
    }
    j["vehicles"] = {{"spawn_period", cfg.vehicles.spawn_period},
                     {"mix_pct", cfg.vehicles.mix_pct},
                     {"types", types},
                     {"signaling_distance", cfg.vehicles.signaling_distance},
                     {"turn_speed", cfg.vehicles.turn_speed},
                     {"headway", cfg.vehicles.headway},
                     {"min_gap", cfg.vehicles.min_gap},
                     {"sight_distance", cfg.vehicles.sight_distance},
                     {"reaction_time", cfg.vehicles.reaction_time}};
    const PedestrianConfig& p = cfg.pedestrians;
    j["pedestrians"] = {
        {"count", p.count},
        {"arrival_period", p.arrival_period},
        {"trait_pct",
         {{"conservative", p.trait_conservative_pct},
          {"aggressive", p.trait_aggressive_pct},
          {"average", p.trait_average_pct}}},
        {"law_pct",
         {{"violating", p.law_violating_pct},
          {"obedient", p.law_obedient_pct},
          {"average", p.law_average_pct}}},
        {"type_pct",
         {{"adult", p.type_adult_pct},
          {"child", p.type_child_pct},
          {"elderly", p.type_elderly_pct}}},
        {"mean_speed",
         {{"adult", p.mean_speed_adult},
          {"child", p.mean_speed_child},
          {"elderly", p.mean_speed_elderly}}},
        {"speed_stddev", p.speed_stddev},
        {"gap_range", {{"min", p.gap_range.min}, {"max", p.gap_range.max}}},
        {"gap_min", p.gap_min},
        {"wt_const", p.wt_const},
        {"dist_c_range", {{"min", p.dist_c_range.min}, {"max", p.dist_c_range.max}}},
        {"speedup_factor", p.speedup_factor},
        {"crossing_pct", p.crossing_pct},
        {"one_stage_pct", p.one_stage_pct},
        {"go_around_blocking_pct", p.go_around_blocking_pct},
        {"mode_pct",
         {{"walk", p.mode_walk_pct},
          {"drive", p.mode_drive_pct},
          {"bus", p.mode_bus_pct},
          {"taxi", p.mode_taxi_pct}}},
        {"activity_prob", p.activity_prob},
        {"activity_duration",
         {{"min", p.activity_duration.min}, {"max", p.activity_duration.max}}},
        {"body_radius_adult", p.body_radius_adult},
        {"child_scale", p.child_scale}};
    j["ttc"] = {{"method", to_string(cfg.ttc.method)},
                {"noise_threshold", cfg.ttc.noise_threshold}};
    j["crossing"] = {{"prefer_signalized", cfg.crossing.prefer_signalized},
                     {"jaywalk_radius", cfg.crossing.jaywalk_radius},
                     {"yield_ttc", cfg.crossing.yield_ttc}};
    j["run"] = {{"steps", cfg.run.steps},
                {"dt", cfg.run.dt},
                {"seed", cfg.run.seed},
                {"replications", cfg.run.replications}};
    return j.dump(2) + "\n";
}

}  // namespace iwc
