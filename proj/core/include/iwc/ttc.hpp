#pragma once

#include <vector>

#include "iwc/geometry.hpp"
#include "iwc/scene.hpp"
#include "iwc/types.hpp"

namespace iwc {

enum class RelevanceVerdict {
    relevant,
    positionally_irrelevant,
    intentionally_irrelevant,
    passed,
    out_of_scope
};

inline std::string to_string(RelevanceVerdict v) {
    switch (v) {
        case RelevanceVerdict::relevant: return "relevant";
        case RelevanceVerdict::positionally_irrelevant: return "positionally_irrelevant";
        case RelevanceVerdict::intentionally_irrelevant: return "intentionally_irrelevant";
        case RelevanceVerdict::passed: return "passed";
        case RelevanceVerdict::out_of_scope: return "out_of_scope";
    }
    return "?";
}

struct TTCEstimate {
    int vehicle = -1;
    int lane = -1;
    double raw = kInf;
    double adjusted = kInf;
    double perceived = kInf;
    RelevanceVerdict verdict = RelevanceVerdict::relevant;
};

/// Read-only per-step view of one vehicle, as the TTC pipeline needs it.
struct VehicleView {
    int id = -1;
    VehType type = VehType::passenger;
    Vec2 front;  // front-bumper position
    double heading = 0.0;
    double speed = 0.0;
    double accel = 0.0;         // attributed approach acceleration (capability, >= 0)
    double motion_accel = 0.0;  // instantaneous signed acceleration, for clearance estimates
    double length = 0.0;
    double width = 0.0;
    double max_speed = 0.0;
    TurnIntent intent = TurnIntent::straight;
    bool signal_on = false;
    std::vector<Vec2> path;         // remaining route polyline, starting at front
    std::vector<OrientedRect> body;  // footprint, bent around route corners
};

/// Bearing from r to t in degrees, atan2(dy, dx) convention, in (-180, 180].
/// Throws std::invalid_argument when r == t.
double bearing_deg(Vec2 r, Vec2 t);

struct PositionalRelevance {
    bool relevant = false;
    double theta_p = 0.0;  // deg, bearing(ped->veh) - ped heading
    double theta_v = 0.0;  // deg, bearing(veh->ped) - veh heading
};

/// A vehicle is positionally relevant when the two heading-relative bearings
/// have opposite signs (converging geometry); exact 0/180 counts as relevant.
PositionalRelevance positional_relevance(Vec2 ped_pos, double phi_ped, Vec2 veh_pos,
                                         double phi_veh);

/// Whether the vehicle's assumed path (signaled route, or straight continuation
/// when no signal is on) geometrically crosses the pedestrian's crossing segment.
bool intentional_relevance(const VehicleView& veh, Vec2 cross_a, Vec2 cross_b);

/// Raw time for the vehicle front to cover dist.
/// constant: dist/speed. average: dist over the mean of speed and max_s.
/// dynamic (and the adjusted variants): two-phase constant-acceleration
/// kinematics capped at max_s; decelerating vehicles that stop short give +inf.
double ttc_compute(TtcMethod method, double dist, double speed, double accel, double max_s);

/// Subtracts the pedestrian's travel time to the lane; negative results are
/// resolved with the rear-bumper passage time: fully passed -> +inf,
/// still covering the point -> 0 (side collision).
double adjust_ttc(double raw, double ped_travel_time, double veh_length,
                  double veh_speed_at_passage);

/// Affine perception model with a near-range cutoff; result floored at 0.
double perceived_ttc(double ttc, double noise_z, double noise_threshold);

/// Crossing geometry shared by every per-lane TTC evaluation of one pedestrian.
struct CrossingFrame {
    Vec2 entry, exit;      // sidewalk-centerline endpoints of the crossing
    double curb_offset = 0.0;  // distance from entry to the first curb
    double lane_width = 0.0;

    Vec2 dir() const { return (exit - entry).normalized(); }
    double heading() const { return std::atan2(exit.y - entry.y, exit.x - entry.x); }
    double c_of(Vec2 p) const { return (p - entry).dot(dir()); }
    double lane_near(const CrossingLaneRef& l) const { return curb_offset + l.entry_offset; }
};

struct PedTtcQuery {
    Vec2 pos;
    double heading = 0.0;      // phi_ped
    double cross_speed = 0.0;  // ped_crs
    double p_noise = 0.0;
    bool go_around_blocking = false;
};

struct MinTtcResult {
    double overall = kInf;
    std::vector<double> per_lane;  // parallel to the scope lanes
    std::vector<TTCEstimate> estimates;
};

/// Full pipeline: relevance filtering, per-lane raw TTC at the projected
/// crossing points, adjustment and perceptual noise as the method requires.
MinTtcResult min_adjusted_ttc(const PedTtcQuery& ped, const std::vector<VehicleView>& vehicles,
                              TtcMethod method, const std::vector<CrossingLaneRef>& scope_lanes,
                              const CrossingFrame& frame, double road_max_s,
                              double noise_threshold);

}  // namespace iwc
