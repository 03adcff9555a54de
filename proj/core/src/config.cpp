#include "iwc/config.hpp"

#include <cmath>
#include <cstdio>

namespace iwc {
namespace {

void check_pct_sum(std::vector<std::string>& errs, const char* name, double sum) {
    if (std::abs(sum - 100.0) > 1e-9) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%s must sum to 100 (got %g)", name, sum);
        errs.emplace_back(buf);
    }
}

void check_positive(std::vector<std::string>& errs, const char* name, double v) {
    if (!(v > 0.0)) errs.emplace_back(std::string(name) + " must be > 0");
}

void check_pct(std::vector<std::string>& errs, const char* name, double v) {
    if (v < 0.0 || v > 100.0) errs.emplace_back(std::string(name) + " must be in [0, 100]");
}

}  // namespace

std::vector<std::string> ScenarioConfig::validate() const {
    std::vector<std::string> errs;

    const auto& g = geometry;
    if (g.h_nodes == 0 && g.v_nodes == 0) errs.emplace_back("geometry needs at least one road axis");
    if (g.h_nodes == 1) errs.emplace_back("geometry.h_nodes must be 0 or >= 2");
    if (g.v_nodes == 1) errs.emplace_back("geometry.v_nodes must be 0 or >= 2");
    if (g.h_nodes < 0) errs.emplace_back("geometry.h_nodes must be >= 0");
    if (g.v_nodes < 0) errs.emplace_back("geometry.v_nodes must be >= 0");
    check_positive(errs, "geometry.node_spacing", g.node_spacing);
    if (g.lanes_per_direction < 1) errs.emplace_back("geometry.lanes_per_direction must be >= 1");
    check_positive(errs, "geometry.lane_width", g.lane_width);
    check_positive(errs, "geometry.sidewalk_width", g.sidewalk_width);
    check_positive(errs, "geometry.road_max_speed", g.road_max_speed);
    if (g.crosswalk_offset_edges < 1) errs.emplace_back("geometry.crosswalk_offset_edges must be >= 1");

    const auto& s = signal;
    if (!(s.cycle_length() > 0.0)) errs.emplace_back("signal cycle length must be > 0");
    if (s.vehicle_green < 0 || s.clearance < 0 || s.pedestrian_green < 0)
        errs.emplace_back("signal phase durations must be >= 0");

    const auto& v = vehicles;
    double mix_sum = 0.0;
    for (double m : v.mix_pct) {
        if (m < 0) errs.emplace_back("vehicles.mix_pct entries must be >= 0");
        mix_sum += m;
    }
    check_pct_sum(errs, "vehicles.mix_pct", mix_sum);
    for (const auto& t : v.types) {
        if (!(t.length > 0 && t.width > 0 && t.max_speed > 0 && t.accel > 0 && t.decel > 0 &&
              t.emergency_decel > 0))
            errs.emplace_back("vehicle type parameters must all be > 0");
    }
    check_positive(errs, "vehicles.turn_speed", v.turn_speed);
    check_positive(errs, "vehicles.headway", v.headway);
    check_positive(errs, "vehicles.min_gap", v.min_gap);
    check_positive(errs, "vehicles.sight_distance", v.sight_distance);
    check_positive(errs, "vehicles.reaction_time", v.reaction_time);
    if (v.signaling_distance < 0) errs.emplace_back("vehicles.signaling_distance must be >= 0");

    const auto& p = pedestrians;
    if (p.count < 0) errs.emplace_back("pedestrians.count must be >= 0");
    check_pct_sum(errs, "pedestrians trait percentages",
                  p.trait_conservative_pct + p.trait_aggressive_pct + p.trait_average_pct);
    check_pct_sum(errs, "pedestrians law-obedience percentages",
                  p.law_violating_pct + p.law_obedient_pct + p.law_average_pct);
    check_pct_sum(errs, "pedestrians type percentages",
                  p.type_adult_pct + p.type_child_pct + p.type_elderly_pct);
    check_pct_sum(errs, "pedestrians transit-mode percentages",
                  p.mode_walk_pct + p.mode_drive_pct + p.mode_bus_pct + p.mode_taxi_pct);
    check_positive(errs, "pedestrians.mean_speed_adult", p.mean_speed_adult);
    check_positive(errs, "pedestrians.mean_speed_child", p.mean_speed_child);
    check_positive(errs, "pedestrians.mean_speed_elderly", p.mean_speed_elderly);
    check_positive(errs, "pedestrians.speed_stddev", p.speed_stddev);
    if (!(p.gap_range.min < p.gap_range.max))
        errs.emplace_back("gap_range.min < gap_range.max required");
    if (p.gap_range.min < 0) errs.emplace_back("gap_range.min must be >= 0");
    if (p.gap_min < 0) errs.emplace_back("pedestrians.gap_min must be >= 0");
    if (p.wt_const < 0) errs.emplace_back("pedestrians.wt_const must be >= 0");
    if (!(p.dist_c_range.min < p.dist_c_range.max))
        errs.emplace_back("dist_c_range.min < dist_c_range.max required");
    if (!(p.speedup_factor >= 1.0)) errs.emplace_back("pedestrians.speedup_factor must be >= 1");
    check_pct(errs, "pedestrians.crossing_pct", p.crossing_pct);
    check_pct(errs, "pedestrians.one_stage_pct", p.one_stage_pct);
    check_pct(errs, "pedestrians.go_around_blocking_pct", p.go_around_blocking_pct);
    if (p.activity_prob < 0 || p.activity_prob > 1)
        errs.emplace_back("pedestrians.activity_prob must be in [0, 1]");
    if (!(p.activity_duration.min <= p.activity_duration.max) || p.activity_duration.min < 0)
        errs.emplace_back("pedestrians.activity_duration must satisfy 0 <= min <= max");
    check_positive(errs, "pedestrians.body_radius_adult", p.body_radius_adult);
    if (!(p.child_scale > 0 && p.child_scale <= 1))
        errs.emplace_back("pedestrians.child_scale must be in (0, 1]");

    if (ttc.noise_threshold < 0) errs.emplace_back("ttc.noise_threshold must be >= 0");

    if (crossing.jaywalk_radius < 0) errs.emplace_back("crossing.jaywalk_radius must be >= 0");
    if (crossing.yield_ttc < 0) errs.emplace_back("crossing.yield_ttc must be >= 0");

    if (run.steps < 0) errs.emplace_back("run.steps must be >= 0");
    check_positive(errs, "run.dt", run.dt);
    if (run.replications < 1) errs.emplace_back("run.replications must be >= 1");

    return errs;
}

}  // namespace iwc
