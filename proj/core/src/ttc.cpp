#include "iwc/ttc.hpp"

#include <cmath>
#include <stdexcept>

namespace iwc {
namespace {

constexpr double kTinyEps = 1e-9;
constexpr double kStoppedSpeed = 0.05;      // m/s, below this a vehicle counts as stopped
constexpr double kBlockingReach = 3.0;      // m past the body still counted as blocking
constexpr double kAssumedRayLength = 500.0;  // straight-continuation horizon, m

double sign_of(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

/// First intersection of the polyline with segment [a, b]; fills the arc
/// distance from the polyline start and the intersection point.
bool first_intersection(const std::vector<Vec2>& poly, Vec2 a, Vec2 b, double* arc, Vec2* hit) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        double t = 0.0;
        if (segments_intersect(poly[i], poly[i + 1], a, b, &t)) {
            double seg = distance(poly[i], poly[i + 1]);
            *arc = acc + t * seg;
            *hit = poly[i] + (poly[i + 1] - poly[i]) * t;
            return true;
        }
        acc += distance(poly[i], poly[i + 1]);
    }
    return false;
}

std::vector<Vec2> assumed_path(const VehicleView& veh) {
    if (veh.signal_on && veh.path.size() >= 2) return veh.path;
    return {veh.front, veh.front + heading_vector(veh.heading) * kAssumedRayLength};
}

/// Mean speed of the vehicle while it advances dist under capped kinematics;
/// 0 when it stops short, so the rear-passage time resolves to +inf.
double mean_speed_over(double dist, double speed, double accel, double cap) {
    if (dist < kTinyEps) return speed;
    const double t = ttc_compute(TtcMethod::dynamic, dist, speed, accel, cap);
    if (std::isinf(t)) return 0.0;
    return t < kTinyEps ? speed : dist / t;
}

}  // namespace

double bearing_deg(Vec2 r, Vec2 t) {
    if (distance(r, t) < kTinyEps)
        throw std::invalid_argument("bearing undefined for coincident points");
    return wrap_deg(std::atan2(t.y - r.y, t.x - r.x) * 180.0 / M_PI);
}

PositionalRelevance positional_relevance(Vec2 ped_pos, double phi_ped, Vec2 veh_pos,
                                         double phi_veh) {
    if (distance(ped_pos, veh_pos) < kTinyEps)
        throw std::invalid_argument("positional relevance undefined for coincident positions");
    PositionalRelevance r;
    r.theta_p = wrap_deg(bearing_deg(ped_pos, veh_pos) - phi_ped * 180.0 / M_PI);
    r.theta_v = wrap_deg(bearing_deg(veh_pos, ped_pos) - phi_veh * 180.0 / M_PI);
    auto on_axis = [](double a) {
        return std::abs(a) < 1e-7 || std::abs(std::abs(a) - 180.0) < 1e-7;
    };
    if (on_axis(r.theta_p) || on_axis(r.theta_v)) {
        r.relevant = true;  // head-on tie-break
        return r;
    }
    r.relevant = sign_of(r.theta_p) != sign_of(r.theta_v);
    return r;
}

bool intentional_relevance(const VehicleView& veh, Vec2 cross_a, Vec2 cross_b) {
    double arc = 0.0;
    Vec2 hit;
    return first_intersection(assumed_path(veh), cross_a, cross_b, &arc, &hit);
}

double ttc_compute(TtcMethod method, double dist, double speed, double accel, double max_s) {
    if (dist < 0) throw std::invalid_argument("ttc_compute: negative distance");
    if (!(max_s > 0)) throw std::invalid_argument("ttc_compute: max_s must be > 0");
    if (dist == 0) return 0.0;
    switch (method) {
        case TtcMethod::constant:
            return speed > kTinyEps ? dist / speed : kInf;
        case TtcMethod::average:
            return dist / (0.5 * (speed + max_s));
        default:
            break;
    }
    if (std::abs(accel) < kTinyEps) return speed > kTinyEps ? dist / speed : kInf;
    if (accel > 0 && speed >= max_s) return dist / speed;
    double disc = speed * speed + 2.0 * accel * dist;
    if (accel < 0) {
        if (disc < 0) return kInf;  // stops short of the point
        return (-speed + std::sqrt(disc)) / accel;
    }
    double t_vp = (-speed + std::sqrt(disc)) / accel;
    double t_max = (max_s - speed) / accel;
    if (t_vp <= t_max) return t_vp;
    double dist_max = 0.5 * (speed + max_s) * t_max;
    return t_max + (dist - dist_max) / max_s;
}

double adjust_ttc(double raw, double ped_travel_time, double veh_length,
                  double veh_speed_at_passage) {
    if (ped_travel_time < 0) throw std::invalid_argument("adjust_ttc: negative travel time");
    if (std::isinf(raw)) return kInf;
    double hat = raw - ped_travel_time;
    if (hat >= 0) return hat;
    double t_rear =
        veh_speed_at_passage > kTinyEps ? veh_length / veh_speed_at_passage : kInf;
    if (hat + t_rear < 0) return kInf;  // rear clears before the pedestrian arrives
    return 0.0;                         // side collision
}

double perceived_ttc(double ttc, double noise_z, double noise_threshold) {
    if (std::isinf(ttc)) return kInf;
    if (ttc < noise_threshold) return ttc;
    double mean = 0.7 + 0.56 * ttc;
    double stdev = 0.17 * ttc + 0.49;
    return std::max(0.0, mean + noise_z * stdev);
}

MinTtcResult min_adjusted_ttc(const PedTtcQuery& ped, const std::vector<VehicleView>& vehicles,
                              TtcMethod method, const std::vector<CrossingLaneRef>& scope_lanes,
                              const CrossingFrame& frame, double road_max_s,
                              double noise_threshold) {
    MinTtcResult res;
    res.per_lane.assign(scope_lanes.size(), kInf);
    if (scope_lanes.empty()) return res;

    const bool adjusted_method =
        method == TtcMethod::dynamic_adj || method == TtcMethod::dynamic_adj_noise;
    const bool noisy = method == TtcMethod::dynamic_adj_noise;
    const double c_ped = frame.c_of(ped.pos);
    const double w = frame.lane_width;

    auto lane_index_for = [&](double c) -> int {
        for (std::size_t k = 0; k < scope_lanes.size(); ++k) {
            double near = frame.lane_near(scope_lanes[k]);
            if (c >= near - 0.25 * w && c <= near + 1.25 * w) return static_cast<int>(k);
        }
        return -1;
    };
    auto travel_time_to = [&](int k) {
        double dist = std::max(0.0, frame.lane_near(scope_lanes[static_cast<std::size_t>(k)]) - c_ped);
        return dist / std::max(ped.cross_speed, 0.1);
    };
    auto record = [&](TTCEstimate est, int k, double value) {
        if (k >= 0 && value < res.per_lane[static_cast<std::size_t>(k)])
            res.per_lane[static_cast<std::size_t>(k)] = value;
        if (value < res.overall) res.overall = value;
        res.estimates.push_back(est);
    };

    for (const auto& veh : vehicles) {
        TTCEstimate est;
        est.vehicle = veh.id;
        const bool stopped = veh.speed < kStoppedSpeed;

        // Rear-bumper rule for a body already straddling the crossing line:
        // raw TTC is 0, the remaining body length decides side collision vs
        // cleared. Only the adjusting methods look this far.
        if (adjusted_method) {
            Vec2 rear = veh.front - heading_vector(veh.heading) * veh.length;
            double t_body = 0.0;
            if (segments_intersect(rear, veh.front, frame.entry, frame.exit, &t_body)) {
                Vec2 hit = rear + (veh.front - rear) * t_body;
                int k = lane_index_for(frame.c_of(hit));
                if (k >= 0) {
                    est.lane = scope_lanes[static_cast<std::size_t>(k)].lane;
                    if (stopped && ped.go_around_blocking) {
                        est.verdict = RelevanceVerdict::out_of_scope;
                        res.estimates.push_back(est);
                        continue;
                    }
                    est.raw = 0.0;
                    const double rem = t_body * veh.length;
                    const double cap = std::min(road_max_s, veh.max_speed);
                    est.adjusted =
                        adjust_ttc(0.0, travel_time_to(k), rem,
                                   mean_speed_over(rem, veh.speed, veh.motion_accel, cap));
                    est.perceived =
                        noisy ? perceived_ttc(est.adjusted, ped.p_noise, noise_threshold)
                              : est.adjusted;
                    est.verdict = std::isinf(est.adjusted) ? RelevanceVerdict::passed
                                                           : RelevanceVerdict::relevant;
                    record(est, k, est.perceived);
                    continue;
                }
            }
        }

        double veh_dist = 0.0;
        Vec2 hit;
        const bool path_hits =
            first_intersection(assumed_path(veh), frame.entry, frame.exit, &veh_dist, &hit);
        // A vehicle signaling a turn that leads into the crossing stays
        // relevant even where the straight-line angle test would drop it.
        const bool signaled_toward = veh.signal_on && path_hits;

        if (!signaled_toward && distance(ped.pos, veh.front) >= kTinyEps) {
            auto pr = positional_relevance(ped.pos, ped.heading, veh.front, veh.heading);
            if (!pr.relevant) {
                est.verdict = RelevanceVerdict::positionally_irrelevant;
                res.estimates.push_back(est);
                continue;
            }
        }
        if (!path_hits) {
            est.verdict = RelevanceVerdict::intentionally_irrelevant;
            res.estimates.push_back(est);
            continue;
        }
        int k = lane_index_for(frame.c_of(hit));
        if (k < 0) {
            est.verdict = RelevanceVerdict::out_of_scope;
            res.estimates.push_back(est);
            continue;
        }
        est.lane = scope_lanes[static_cast<std::size_t>(k)].lane;

        if (stopped && ped.go_around_blocking && veh_dist <= veh.length + kBlockingReach) {
            est.verdict = RelevanceVerdict::out_of_scope;  // queue member the ped walks around
            res.estimates.push_back(est);
            continue;
        }

        double cap = std::min(road_max_s, veh.max_speed);
        double max_s = method == TtcMethod::average ? road_max_s : cap;
        est.raw = ttc_compute(method, veh_dist, veh.speed, veh.accel, max_s);
        if (adjusted_method) {
            double v_eff = 0.0;
            if (!std::isinf(est.raw)) {
                // Clearance runs on observed motion: nobody bets a braking or
                // parked vehicle will speed up just to get out of the way.
                const double t_all = ttc_compute(TtcMethod::dynamic, veh_dist + veh.length,
                                                 veh.speed, veh.motion_accel, cap);
                v_eff = std::isinf(t_all) ? 0.0
                                          : veh.length / std::max(t_all - est.raw, kTinyEps);
            }
            est.adjusted = adjust_ttc(est.raw, travel_time_to(k), veh.length, v_eff);
        } else {
            est.adjusted = est.raw;
        }
        est.perceived =
            noisy ? perceived_ttc(est.adjusted, ped.p_noise, noise_threshold) : est.adjusted;
        est.verdict = (adjusted_method && std::isinf(est.adjusted) && !std::isinf(est.raw))
                          ? RelevanceVerdict::passed
                          : RelevanceVerdict::relevant;
        record(est, k, est.perceived);
    }
    return res;
}

}  // namespace iwc
