#pragma once

#include <optional>
#include <vector>

#include "iwc/config.hpp"
#include "iwc/geometry.hpp"
#include "iwc/rng.hpp"
#include "iwc/scene.hpp"
#include "iwc/types.hpp"

namespace iwc {

struct PedestrianProfile {
    int id = -1;
    PedType type = PedType::adult;
    PedTrait trait = PedTrait::average;
    LawObedience law = LawObedience::average;  // declared status; resolution lives in state
    double speed = 0.0;                        // ped_s, m/s
    double gap = 0.0;                          // ped_gap, s
    CrossingPattern pattern = CrossingPattern::one_stage;
    bool go_around_blocking = false;
    double p_noise = 0.0;    // perceptual z-score
    double th_dist_c = 0.0;  // personal crosswalk-distance threshold, m
    double body_radius = 0.25;
    bool requires_crossing = false;  // destination must involve >= 1 road crossing
};

enum class PedPhase {
    route_walking,
    intend_to_cross,
    waiting,
    crossing,
    mid_road_waiting,
    activity,
    riding,  // abstracted non-walk transit leg
    done
};

inline std::string to_string(PedPhase p) {
    switch (p) {
        case PedPhase::route_walking: return "route_walking";
        case PedPhase::intend_to_cross: return "intend_to_cross";
        case PedPhase::waiting: return "waiting";
        case PedPhase::crossing: return "crossing";
        case PedPhase::mid_road_waiting: return "mid_road_waiting";
        case PedPhase::activity: return "activity";
        case PedPhase::riding: return "riding";
        case PedPhase::done: return "done";
    }
    return "?";
}

struct CrossingPlan {
    bool is_jaywalk = false;
    int crosswalk = -1;  // valid when !is_jaywalk
    int road = -1;
    Vec2 entry, exit;  // sidewalk-centerline endpoints of the crossing segment
    std::vector<CrossingLaneRef> lanes;
    int next_lane = 0;  // index into lanes of the next lane to enter
    CrossingPattern pattern = CrossingPattern::one_stage;
    bool signalized = false;
    int controller = -1;
    std::size_t resume_waypoint = 0;  // route index to continue from after the far curb
};

struct PedestrianState {
    Vec2 pos;
    double heading = 0.0;  // phi_ped, rad
    PedPhase phase = PedPhase::route_walking;
    double wait_time = 0.0;    // ped_wt, s
    double c_gap = 0.0;        // ped_c-gap, s
    double cross_speed = 0.0;  // ped_crs, m/s
    LawObedience resolved_law = LawObedience::obedient;
    bool timeout_fired = false;

    Route route;
    std::size_t waypoint = 0;  // index of the next waypoint to reach
    std::optional<CrossingPlan> plan;
    Vec2 destination;
    TransitMode mode = TransitMode::walk;
    bool ride_pending = false;  // non-walk leg still ahead (route ends at the boarding point)
    double activity_until = 0.0;
    double ride_until = 0.0;
    double side_offset = 0.0;  // lateral detour around stopped vehicles while crossing
    double total_wait = 0.0;   // lifetime waiting + mid-road time, for metrics
    double walk_dist = 0.0;
    bool collided = false;
};

/// Skew-normal walking speed; shape follows the trait's sign, clamped > 0.
double sample_walking_speed(PedType type, PedTrait trait, const PedestrianConfig& cfg,
                            RngStream& rng);

/// Skew-normal initial gap acceptance, clamped into gap_range.
double sample_gap_acceptance(PedTrait trait, Range gap_range, RngStream& rng);

/// Standard-normal perceptual z-score, fixed per pedestrian.
double sample_perceptual_noise(RngStream& rng);

/// Samples the full heterogeneous population from the configured percentages.
std::vector<PedestrianProfile> generate_population(const ScenarioConfig& cfg, RngStream& rng);

/// Declared-average pedestrians are obedient iff dist_c < th_dist_c (strict).
LawObedience resolve_law_obedience(const PedestrianProfile& profile, double dist_c);

}  // namespace iwc
