#pragma once

#include <string>
#include <vector>

#include "iwc/agents.hpp"
#include "iwc/config.hpp"
#include "iwc/geometry.hpp"
#include "iwc/rng.hpp"
#include "iwc/scene.hpp"
#include "iwc/ttc.hpp"
#include "iwc/types.hpp"
#include "iwc/vehicles.hpp"

namespace iwc {

enum class PedEventKind {
    intend,
    wait_start,
    cross_start,
    midroad_wait,
    cross_end,
    reroute_to_crosswalk,
    speedup,
    arrived
};

inline std::string to_string(PedEventKind k) {
    switch (k) {
        case PedEventKind::intend: return "intend";
        case PedEventKind::wait_start: return "wait_start";
        case PedEventKind::cross_start: return "cross_start";
        case PedEventKind::midroad_wait: return "midroad_wait";
        case PedEventKind::cross_end: return "cross_end";
        case PedEventKind::reroute_to_crosswalk: return "reroute_to_crosswalk";
        case PedEventKind::speedup: return "speedup";
        case PedEventKind::arrived: return "arrived";
    }
    return "?";
}

struct PedEvent {
    double t = 0.0;
    int ped = -1;
    PedEventKind kind = PedEventKind::intend;
    // cross_start: min adjusted TTC at the go decision; cross_end: 1 if jaywalk.
    double value = 0.0;
};

/// Frozen per-step view of everything outside the pedestrian's own state.
struct WorldView {
    const RoadNetwork* net = nullptr;
    double time = 0.0;
    const std::vector<VehicleView>* vehicles = nullptr;
    TtcMethod method = TtcMethod::dynamic;
    double road_max_speed = 13.89;
    double noise_threshold = 0.3;
};

TransitMode choose_transit_mode(RngStream& rng, const std::array<double, 4>& mode_weights);

/// Resolves law obedience from the nearest designated crosswalk, then builds
/// the walking route: obedient via the crosswalk closest to the destination
/// (signalized preferred when configured), violating via a jaywalk point drawn
/// within cfg.jaywalk_radius of the destination's road projection.
/// Requires state.pos and state.destination; fills route/waypoint/resolved_law.
void plan_route(const RoadNetwork& net, const PedestrianProfile& profile, PedestrianState& state,
                const CrossingConfig& cfg, RngStream& rng);

double update_crossing_gap(double ped_gap, double ped_wt, double wt_const, double gap_min);

enum class BehaviorSwitch { speedup, reroute_to_crosswalk };

/// Wait-timeout behavior switch. Violating pedestrians speed up; declared-
/// average ones turn obedient and reroute to the nearest designated crosswalk.
BehaviorSwitch handle_wait_timeout(const PedestrianProfile& profile, PedestrianState& state,
                                   const RoadNetwork& net, const PedestrianConfig& cfg);

bool decide_cross(double c_gap, double min_ttc);

/// One tick of the pedestrian phase machine.
void step_pedestrian(const PedestrianProfile& profile, PedestrianState& state,
                     const WorldView& view, const PedestrianConfig& ped_cfg,
                     const CrossingConfig& cross_cfg, RngStream& rng, double dt,
                     std::vector<PedEvent>& events);

}  // namespace iwc
