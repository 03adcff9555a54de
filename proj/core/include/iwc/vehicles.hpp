#pragma once

#include <vector>

#include "iwc/config.hpp"
#include "iwc/geometry.hpp"
#include "iwc/rng.hpp"
#include "iwc/scene.hpp"
#include "iwc/types.hpp"

namespace iwc {

struct PathPoint {
    Vec2 pos;
    double s = 0.0;  // cumulative arc distance from the route start
    int lane = -1;   // lane carrying the segment that starts here (-1 past the end)
};

struct VehicleRoute {
    std::vector<PathPoint> pts;
    double length = 0.0;
    int entry_lane = -1;
    int exit_lane = -1;
    TurnIntent turn = TurnIntent::straight;
    double turn_s = kInf;  // arc position of the turn corner
};

struct VehicleProfile {
    int id = -1;
    VehType type = VehType::passenger;
    VehicleTypeParams params;
};

struct VehicleState {
    double s = 0.0;  // arc position of the front bumper along the route
    double speed = 0.0;
    double accel = 0.0;
    VehicleRoute route;
    bool done = false;
};

struct Vehicle {
    VehicleProfile profile;
    VehicleState state;
};

Vec2 route_point(const VehicleRoute& route, double s);
double route_heading(const VehicleRoute& route, double s);
int route_lane(const VehicleRoute& route, double s);

/// Body footprint of a vehicle whose front bumper sits at arc position s.
/// The body follows the route polyline, bending at corners, so a long
/// vehicle mid-turn occupies both legs instead of a phantom straight slab.
std::vector<OrientedRect> route_body(const VehicleRoute& route, double s, double length,
                                     double width);

/// Straight-through or turning route starting at the given entry lane.
/// Turns fall back to straight when the network has no matching target lane.
VehicleRoute build_route(const RoadNetwork& net, int entry_lane, TurnIntent movement);

struct TurnStatus {
    TurnIntent intent = TurnIntent::straight;
    bool signal_on = false;
};

/// Intent at the upcoming connection; the signal comes on within
/// cfg.signaling_distance of the turn corner.
TurnStatus turn_intent(const VehicleState& state, const VehicleConfig& cfg);

/// Everything step_vehicle needs from the surrounding world, precomputed from
/// the frozen snapshot. Infinite distances mean "no such constraint".
struct VehicleStepContext {
    double speed_limit = kInf;
    double leader_gap = kInf;  // front bumper to the leader's rear bumper
    double leader_speed = 0.0;
    double leader_emergency_decel = 0.0;  // 0 = treat the leader as a wall
    double stop_line_dist = kInf;         // front to the next red-holding stop line
    double ped_dist = kInf;               // front to the nearest pedestrian in the corridor
};

/// One Krauss-style speed update with comfortable braking, capped by the
/// emergency deceleration; position integrates trapezoidally.
void step_vehicle(const VehicleProfile& profile, VehicleState& state,
                  const VehicleStepContext& ctx, const VehicleConfig& cfg, double dt);

struct LeaderInfo {
    double gap = kInf;
    double speed = 0.0;
    double emergency_decel = 0.0;
};

/// Nearest vehicle ahead on (or merging onto) self's remaining path.
LeaderInfo find_leader(const Vehicle& self, const std::vector<Vehicle>& all, double lane_width);

struct SpawnState {
    double next_time = 0.0;
    int next_id = 0;
    struct Pending {
        VehType type;
        int entry_lane;
        TurnIntent movement;
    };
    std::vector<Pending> pending;
};

/// Emits vehicles due by sim_time; a blocked entry keeps its spawn queued.
/// All randomness is drawn at schedule time so blocking never shifts draws.
std::vector<Vehicle> spawn_vehicles(const VehicleConfig& cfg, const RoadNetwork& net,
                                    RngStream& rng, double sim_time,
                                    const std::vector<Vehicle>& existing, SpawnState& st);

}  // namespace iwc
