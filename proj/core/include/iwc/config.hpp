#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "iwc/types.hpp"

namespace iwc {

struct Range {
    double min = 0.0;
    double max = 0.0;
    double width() const { return max - min; }
    double midpoint() const { return 0.5 * (min + max); }
    bool contains(double x) const { return x >= min && x <= max; }
};

struct GeometryConfig {
    int h_nodes = 9;               // nodes along the horizontal road (0 disables it)
    int v_nodes = 7;               // nodes along the vertical road (0 disables it)
    double node_spacing = 30.0;    // m
    int lanes_per_direction = 2;
    double lane_width = 3.5;       // m
    double sidewalk_width = 3.0;   // m
    double road_max_speed = 13.89;  // m/s
    int crosswalk_offset_edges = 2;  // arm crosswalks every this many edges from the intersection
};

struct SignalConfig {
    double vehicle_green = 30.0;     // s
    double clearance = 3.0;          // s
    double pedestrian_green = 27.0;  // s
    double offset = 0.0;             // s
    double cycle_length() const { return vehicle_green + clearance + pedestrian_green; }
};

struct VehicleTypeParams {
    double length = 0.0;           // m
    double width = 0.0;            // m
    double max_speed = 0.0;        // m/s
    double accel = 0.0;            // m/s^2
    double decel = 0.0;            // comfortable braking, m/s^2
    double emergency_decel = 0.0;  // m/s^2
};

/// Per-type defaults in VehType order: passenger, bus, bicycle, truck, motorcycle.
inline std::array<VehicleTypeParams, 5> default_vehicle_types() {
    return {{
        {5.0, 1.8, 55.56, 2.6, 4.5, 9.0},
        {12.0, 2.5, 23.61, 1.2, 4.0, 7.0},
        {1.6, 0.65, 5.56, 1.2, 3.0, 7.0},
        {7.1, 2.4, 36.11, 1.3, 4.0, 7.0},
        {2.2, 0.9, 55.56, 6.0, 10.0, 10.0},
    }};
}

struct VehicleConfig {
    double spawn_period = 2.0;  // one vehicle per this many seconds over all entries; <=0 disables
    // % of spawned vehicles in VehType order: passenger, bus, bicycle, truck, motorcycle.
    std::array<double, 5> mix_pct = {38.0, 20.0, 30.0, 11.0, 1.0};
    std::array<VehicleTypeParams, 5> types = default_vehicle_types();
    double signaling_distance = 30.0;  // m before a turn the signal comes on
    double turn_speed = 5.0;           // corner speed cap while negotiating a turn, m/s
    double headway = 2.0;              // desired time gap to the leader, s
    double min_gap = 2.0;              // standstill gap to the leader, m
    double sight_distance = 30.0;      // pedestrian perception range, m
    double reaction_time = 1.0;        // car-following reaction horizon, s
};

struct PedestrianConfig {
    int count = 150;
    double arrival_period = 0.5;  // s between pedestrian activations; <=0 spawns all at t=0

    double trait_conservative_pct = 40.0;
    double trait_aggressive_pct = 40.0;
    double trait_average_pct = 20.0;

    double law_violating_pct = 40.0;
    double law_obedient_pct = 40.0;
    double law_average_pct = 20.0;

    double type_adult_pct = 89.0;
    double type_child_pct = 1.0;
    double type_elderly_pct = 10.0;

    double mean_speed_adult = 1.51;    // m/s
    double mean_speed_child = 1.48;    // m/s
    double mean_speed_elderly = 1.25;  // m/s
    double speed_stddev = 0.14;        // m/s

    Range gap_range = {3.0, 8.0};   // s
    double gap_min = 2.0;           // s
    double wt_const = 1.0;          // gap decay per second waited
    Range dist_c_range = {30.0, 60.0};  // m, personal crosswalk-distance threshold
    double speedup_factor = 3.0;    // crossing-speed multiplier after a wait timeout
    double crossing_pct = 50.0;     // % of pedestrians whose destination requires >= 1 crossing

    double one_stage_pct = 50.0;          // remainder uses rolling-gap
    double go_around_blocking_pct = 50.0;

    double mode_walk_pct = 85.0;
    double mode_drive_pct = 5.0;
    double mode_bus_pct = 5.0;
    double mode_taxi_pct = 5.0;

    double activity_prob = 0.005;        // per-step chance to pause en route
    Range activity_duration = {5.0, 30.0};  // s

    double body_radius_adult = 0.25;  // m; elderly share it, child scaled below
    double child_scale = 0.6;
};

struct TtcConfig {
    TtcMethod method = TtcMethod::dynamic;
    double noise_threshold = 0.3;  // s, below which perceived TTC equals true TTC
};

struct CrossingConfig {
    bool prefer_signalized = true;  // obedient routing prioritizes signalized crosswalks
    double jaywalk_radius = 15.0;   // m around the destination projection for pt_c
    double yield_ttc = 3.0;         // s, approach horizon for yield detection
};

struct RunConfig {
    std::int64_t steps = 1000;
    double dt = 0.1;  // s
    std::uint64_t seed = 1;
    int replications = 5;
};

struct ScenarioConfig {
    GeometryConfig geometry;
    SignalConfig signal;
    VehicleConfig vehicles;
    PedestrianConfig pedestrians;
    TtcConfig ttc;
    CrossingConfig crossing;
    RunConfig run;

    /// Returns all invariant violations; empty means the config is usable.
    std::vector<std::string> validate() const;
};

}  // namespace iwc
