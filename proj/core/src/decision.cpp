#include "iwc/decision.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iwc {

namespace {

constexpr double kCurbSetback = 0.3;  // waiting spot sits this far before the pavement
constexpr double kStepEps = 1e-9;
constexpr double kStoppedSpeed = 0.05;
constexpr double kSideStepMax = 4.0;  // widest detour around a stopped vehicle
constexpr double kSideStepGrid = 0.8;
constexpr double kProbeAhead = 0.6;
constexpr double kEndSetback = 13.0;   // longest vehicle + 1, jaywalk-free road ends
constexpr double kObstacleSpeed = 1.0;  // below this a vehicle reads as a static obstacle

double curb_offset(const RoadNetwork& net) { return net.geom.sidewalk_width * 0.5; }

CrossingFrame make_frame(const RoadNetwork& net, const CrossingPlan& plan) {
    CrossingFrame f;
    f.entry = plan.entry;
    f.exit = plan.exit;
    f.curb_offset = curb_offset(net);
    f.lane_width = net.geom.lane_width;
    return f;
}

const RouteCrossing* find_crossing(const Route& route, int start_index) {
    for (const RouteCrossing& rc : route.crossings)
        if (rc.start_index == start_index) return &rc;
    return nullptr;
}

CrossingPlan make_crossing_plan(const RoadNetwork& net, const Route& route,
                                const RouteCrossing& rc, const PedestrianProfile& profile,
                                LawObedience resolved_law) {
    CrossingPlan plan;
    // A resolved-violating pedestrian never treats a crossing as a crosswalk
    // use: even when the path coincides with one, the target is a free
    // jaywalk point and signals are ignored.
    plan.is_jaywalk = rc.crosswalk < 0 || resolved_law == LawObedience::violating;
    plan.crosswalk = plan.is_jaywalk ? -1 : rc.crosswalk;
    plan.road = rc.road;
    plan.entry = route.waypoints[static_cast<std::size_t>(rc.start_index)];
    plan.exit = route.waypoints[static_cast<std::size_t>(rc.start_index) + 1];
    const Vec2 d = plan.exit - plan.entry;
    plan.lanes = crossing_lanes(net, plan.entry, std::atan2(d.y, d.x));
    plan.next_lane = 0;
    plan.pattern = profile.pattern;
    if (!plan.is_jaywalk) {
        const Crosswalk& cw = net.crosswalks[static_cast<std::size_t>(plan.crosswalk)];
        plan.signalized = cw.signalized;
        plan.controller = cw.controller;
    }
    plan.resume_waypoint = static_cast<std::size_t>(rc.start_index) + 2;
    return plan;
}

/// Splices `add` onto `base` with a bridging crossing edge between them.
void append_with_crossing(Route& base, const Route& add, int crosswalk, int road) {
    const int bridge_start = static_cast<int>(base.waypoints.size()) - 1;
    base.length += distance(base.waypoints.back(), add.waypoints.front());
    base.crossings.push_back({bridge_start, crosswalk, road});
    for (const Vec2& w : add.waypoints) base.waypoints.push_back(w);
    for (const RouteCrossing& rc : add.crossings)
        base.crossings.push_back({rc.start_index + bridge_start + 1, rc.crosswalk, rc.road});
    base.length += add.length;
    base.involves_crossing = true;
}

bool route_via_crosswalk(const RoadNetwork& net, Vec2 from, Vec2 to, int cw_id, Route& out) {
    const Crosswalk& cw = net.crosswalks.at(static_cast<std::size_t>(cw_id));
    const int comp_from = net.component_of(from);
    Vec2 near_end = cw.end_a, far_end = cw.end_b;
    if (net.component_of(cw.end_b) == comp_from && net.component_of(cw.end_a) != comp_from)
        std::swap(near_end, far_end);
    else if (net.component_of(cw.end_a) != comp_from)
        return false;
    try {
        Route leg_a = shortest_path(net, from, near_end, LawObedience::obedient);
        const Route leg_b = shortest_path(net, far_end, to, LawObedience::obedient);
        out = std::move(leg_a);
        append_with_crossing(out, leg_b, cw_id, cw.road);
        return true;
    } catch (const std::runtime_error&) {
        return false;
    }
}

Route plan_obedient(const RoadNetwork& net, Vec2 from, Vec2 to, const CrossingConfig& cfg) {
    if (net.component_of(from) != net.component_of(to)) {
        bool any_signalized = false;
        for (const Crosswalk& cw : net.crosswalks) any_signalized |= cw.signalized;
        NearestCrosswalkResult pick;
        if (cfg.prefer_signalized && any_signalized) pick = nearest_crosswalk(net, to, true);
        if (pick.crosswalk < 0) pick = nearest_crosswalk(net, to, false);
        Route via;
        if (pick.crosswalk >= 0 && route_via_crosswalk(net, from, to, pick.crosswalk, via))
            return via;
    }
    return shortest_path(net, from, to, LawObedience::obedient);
}

Route plan_violating(const RoadNetwork& net, Vec2 from, Vec2 to, const CrossingConfig& cfg,
                     RngStream& rng) {
    Route direct = shortest_path(net, from, to, LawObedience::violating);
    if (direct.crossings.empty()) return direct;

    // Randomize the final crossing point near the destination's road projection.
    const RouteCrossing last = direct.crossings.back();
    const RoadDef& road = net.roads.at(static_cast<std::size_t>(last.road));
    const Vec2 e0 = direct.waypoints[static_cast<std::size_t>(last.start_index)];

    const double dest_axis = road.horizontal ? to.x : to.y;
    double pt = rng.uniform(dest_axis - cfg.jaywalk_radius, dest_axis + cfg.jaywalk_radius);
    // Keep clear of the spawn pocket at each road end, where vehicles appear.
    const double setback =
        std::max(1.0, std::min(kEndSetback, 0.5 * (road.axis_hi - road.axis_lo) - 1.0));
    pt = std::clamp(pt, road.axis_lo + setback, road.axis_hi - setback);
    const double corner = net.corner_offset();
    if (road.has_crossing && std::abs(pt - road.cross_pos) < corner) {
        // Push out of the intersection box, smeared so crossing points do not
        // all pile up on the stop line where queues form and discharge.
        const double push = corner + rng.uniform(0.0, 12.0);
        pt = road.cross_pos + (pt >= road.cross_pos ? push : -push);
    }

    const double side = (road.horizontal ? e0.y : e0.x) >= 0.0 ? 1.0 : -1.0;
    const Vec2 entry = road.horizontal ? Vec2{pt, side * corner} : Vec2{side * corner, pt};
    const Vec2 exit = road.horizontal ? Vec2{pt, -side * corner} : Vec2{-side * corner, pt};
    try {
        Route out = shortest_path(net, from, entry, LawObedience::violating);
        const Route leg_b = shortest_path(net, exit, to, LawObedience::violating);
        append_with_crossing(out, leg_b, -1, road.id);
        return out;
    } catch (const std::runtime_error&) {
        return direct;
    }
}

}  // namespace

TransitMode choose_transit_mode(RngStream& rng, const std::array<double, 4>& mode_weights) {
    double sum = 0.0;
    for (double w : mode_weights) {
        if (w < 0.0) throw std::invalid_argument("transit mode weights must be non-negative");
        sum += w;
    }
    if (sum <= 0.0) throw std::invalid_argument("transit mode weights must not be all zero");
    const double u = rng.uniform() * sum;
    double acc = 0.0;
    for (std::size_t i = 0; i < mode_weights.size(); ++i) {
        acc += mode_weights[i];
        if (u < acc) return static_cast<TransitMode>(i);
    }
    return TransitMode::taxi;
}

void plan_route(const RoadNetwork& net, const PedestrianProfile& profile, PedestrianState& state,
                const CrossingConfig& cfg, RngStream& rng) {
    const NearestCrosswalkResult near_cw = nearest_crosswalk(net, state.pos, false);
    state.resolved_law = resolve_law_obedience(profile, near_cw.distance);
    state.route = state.resolved_law == LawObedience::obedient
                      ? plan_obedient(net, state.pos, state.destination, cfg)
                      : plan_violating(net, state.pos, state.destination, cfg, rng);
    state.waypoint = 1;
    state.plan.reset();
    state.phase = PedPhase::route_walking;
}

double update_crossing_gap(double ped_gap, double ped_wt, double wt_const, double gap_min) {
    if (ped_gap < 0.0 || ped_wt < 0.0 || wt_const < 0.0 || gap_min < 0.0)
        throw std::invalid_argument("update_crossing_gap: inputs must be non-negative");
    return std::max(gap_min, ped_gap - wt_const * ped_wt);
}

BehaviorSwitch handle_wait_timeout(const PedestrianProfile& profile, PedestrianState& state,
                                   const RoadNetwork& net, const PedestrianConfig& cfg) {
    if (state.phase != PedPhase::waiting && state.phase != PedPhase::mid_road_waiting)
        throw std::logic_error("handle_wait_timeout: pedestrian is not in a waiting phase");
    switch (profile.law) {
        case LawObedience::violating:
            state.cross_speed = cfg.speedup_factor * profile.speed;
            return BehaviorSwitch::speedup;
        case LawObedience::average: {
            if (state.phase == PedPhase::mid_road_waiting) {
                // No way to reroute from the middle of the road; finish faster instead.
                state.cross_speed = cfg.speedup_factor * profile.speed;
                return BehaviorSwitch::speedup;
            }
            state.resolved_law = LawObedience::obedient;
            const NearestCrosswalkResult pick = nearest_crosswalk(net, state.pos, false);
            Route route;
            const bool ok =
                pick.crosswalk >= 0 &&
                route_via_crosswalk(net, state.pos, state.destination, pick.crosswalk, route);
            if (!ok)
                route = shortest_path(net, state.pos, state.destination, LawObedience::obedient);
            state.route = std::move(route);
            state.waypoint = 1;
            state.plan.reset();
            state.phase = PedPhase::route_walking;
            return BehaviorSwitch::reroute_to_crosswalk;
        }
        case LawObedience::obedient:
            break;
    }
    throw std::logic_error("handle_wait_timeout: obedient pedestrian cannot time out");
}

bool decide_cross(double c_gap, double min_ttc) { return c_gap < min_ttc; }

namespace {

/// Time for each vehicle to reach the crossing segment along its actual path,
/// at current speed; used only by the yield check at unsignalized crosswalks.
bool vehicles_yielding(const std::vector<VehicleView>& vehicles, const CrossingFrame& frame,
                       double yield_ttc) {
    for (const VehicleView& veh : vehicles) {
        double arc = 0.0;
        double hit = kInf;
        for (std::size_t i = 0; i + 1 < veh.path.size(); ++i) {
            double t = 0.0;
            if (segments_intersect(veh.path[i], veh.path[i + 1], frame.entry, frame.exit, &t)) {
                hit = arc + t * distance(veh.path[i], veh.path[i + 1]);
                break;
            }
            arc += distance(veh.path[i], veh.path[i + 1]);
        }
        if (!std::isfinite(hit)) continue;
        const double ttc = veh.speed > 1e-9 ? hit / veh.speed : kInf;
        const bool yielding = veh.speed < kStoppedSpeed || veh.accel < -1e-6;
        if (ttc <= yield_ttc && !yielding) return false;
    }
    return true;
}

bool vehicle_body_at(const std::vector<VehicleView>& vehicles, Vec2 p, double radius,
                     double max_speed) {
    for (const VehicleView& veh : vehicles) {
        if (veh.speed >= max_speed) continue;
        for (const OrientedRect& rect : veh.body)
            if (rect.overlaps_circle(p, radius + 0.1)) return true;
    }
    return false;
}

}  // namespace

void step_pedestrian(const PedestrianProfile& profile, PedestrianState& state,
                     const WorldView& view, const PedestrianConfig& ped_cfg,
                     const CrossingConfig& cross_cfg, RngStream& rng, double dt,
                     std::vector<PedEvent>& events) {
    if (dt <= 0.0) throw std::invalid_argument("step_pedestrian: dt must be > 0");
    if (state.phase == PedPhase::done || state.collided) return;
    const RoadNetwork& net = *view.net;

    auto emit = [&](PedEventKind kind, double value = 0.0) {
        events.push_back({view.time, profile.id, kind, value});
    };
    auto arrive = [&]() {
        state.phase = PedPhase::done;
        emit(PedEventKind::arrived);
    };
    auto finish_route = [&]() {
        if (state.ride_pending) {
            state.ride_pending = false;
            const double speed =
                state.mode == TransitMode::bus ? 0.6 * view.road_max_speed : view.road_max_speed;
            state.ride_until =
                view.time + distance(state.pos, state.destination) / std::max(1.0, speed);
            state.phase = PedPhase::riding;
        } else {
            arrive();
        }
    };
    // Scope of one evaluation: the lanes the pattern watches, every remaining
    // lane (cross-start metric), or just the lane currently being walked.
    enum class TtcScope { pattern, all_remaining, occupied_lane };
    auto eval_ttc = [&](const CrossingPlan& plan, const CrossingFrame& frame, TtcScope mode,
                        Vec2 at) {
        std::vector<CrossingLaneRef> scope;
        const int lane_count = static_cast<int>(plan.lanes.size());
        const int first = mode == TtcScope::occupied_lane ? plan.next_lane - 1 : plan.next_lane;
        if (first >= 0 && first < lane_count) {
            if (mode != TtcScope::occupied_lane &&
                (mode == TtcScope::all_remaining ||
                 plan.pattern == CrossingPattern::one_stage))
                scope.assign(plan.lanes.begin() + first, plan.lanes.end());
            else
                scope.push_back(plan.lanes[static_cast<std::size_t>(first)]);
        }
        // Evaluate along the line actually walked: sidestepping displaces it.
        CrossingFrame f = frame;
        if (state.side_offset != 0.0) {
            const Vec2 d = frame.dir();
            const Vec2 off = Vec2{-d.y, d.x} * state.side_offset;
            f.entry = frame.entry + off;
            f.exit = frame.exit + off;
        }
        PedTtcQuery q;
        q.pos = at;
        q.heading = frame.heading();
        q.cross_speed = state.cross_speed > 0.0 ? state.cross_speed : profile.speed;
        q.p_noise = profile.p_noise;
        q.go_around_blocking = profile.go_around_blocking;
        return min_adjusted_ttc(q, *view.vehicles, view.method, scope, f,
                                view.road_max_speed, view.noise_threshold);
    };

    switch (state.phase) {
        case PedPhase::route_walking: {
            if (ped_cfg.activity_prob > 0.0 && rng.uniform() < ped_cfg.activity_prob) {
                state.activity_until =
                    view.time +
                    rng.uniform(ped_cfg.activity_duration.min, ped_cfg.activity_duration.max);
                state.phase = PedPhase::activity;
                break;
            }
            double budget = profile.speed * dt;
            while (true) {
                if (state.waypoint >= state.route.waypoints.size()) {
                    finish_route();
                    break;
                }
                const int edge_start = static_cast<int>(state.waypoint) - 1;
                if (distance(state.pos, state.route.waypoints[state.waypoint - 1]) < 1e-9) {
                    if (const RouteCrossing* rc = find_crossing(state.route, edge_start)) {
                        state.plan =
                            make_crossing_plan(net, state.route, *rc, profile, state.resolved_law);
                        state.cross_speed = profile.speed;
                        state.wait_time = 0.0;
                        state.timeout_fired = false;
                        state.side_offset = 0.0;
                        state.heading = make_frame(net, *state.plan).heading();
                        state.phase = PedPhase::intend_to_cross;
                        emit(PedEventKind::intend);
                        break;
                    }
                }
                if (budget <= kStepEps) break;
                const Vec2 target = state.route.waypoints[state.waypoint];
                const double d = distance(state.pos, target);
                if (d > budget) {
                    const Vec2 dir = (target - state.pos) * (1.0 / d);
                    state.pos = state.pos + dir * budget;
                    state.heading = std::atan2(dir.y, dir.x);
                    state.walk_dist += budget;
                    budget = 0.0;
                } else {
                    if (d > kStepEps) {
                        const Vec2 dir = (target - state.pos) * (1.0 / d);
                        state.heading = std::atan2(dir.y, dir.x);
                    }
                    state.pos = target;
                    state.walk_dist += d;
                    budget -= d;
                    state.waypoint += 1;
                }
            }
            break;
        }

        case PedPhase::intend_to_cross: {
            const CrossingFrame frame = make_frame(net, *state.plan);
            const double c_wait = std::max(0.0, frame.curb_offset - kCurbSetback);
            const Vec2 target = state.plan->entry + frame.dir() * c_wait;
            const double budget = profile.speed * dt;
            const double d = distance(state.pos, target);
            if (d > budget) {
                state.pos = state.pos + (target - state.pos) * (budget / d);
                state.walk_dist += budget;
            } else {
                state.pos = target;
                state.walk_dist += d;
                state.wait_time = 0.0;
                state.c_gap =
                    update_crossing_gap(profile.gap, 0.0, ped_cfg.wt_const, ped_cfg.gap_min);
                state.heading = frame.heading();
                state.phase = PedPhase::waiting;
                emit(PedEventKind::wait_start);
            }
            break;
        }

        case PedPhase::waiting: {
            CrossingPlan& plan = *state.plan;
            const CrossingFrame frame = make_frame(net, plan);
            state.wait_time += dt;
            state.total_wait += dt;
            state.c_gap = update_crossing_gap(profile.gap, state.wait_time, ped_cfg.wt_const,
                                              ped_cfg.gap_min);

            const bool signal_wait =
                plan.signalized && state.resolved_law == LawObedience::obedient;
            const bool yield_wait = !signal_wait && !plan.is_jaywalk &&
                                    state.resolved_law == LawObedience::obedient;
            if (!signal_wait && !yield_wait && !state.timeout_fired &&
                profile.gap - ped_cfg.wt_const * state.wait_time < ped_cfg.gap_min) {
                state.timeout_fired = true;
                const BehaviorSwitch sw = handle_wait_timeout(profile, state, net, ped_cfg);
                emit(sw == BehaviorSwitch::speedup ? PedEventKind::speedup
                                                   : PedEventKind::reroute_to_crosswalk);
                if (sw == BehaviorSwitch::reroute_to_crosswalk) break;
            }

            bool go;
            if (signal_wait)
                go = signal_state(net, plan.controller, view.time) ==
                     SignalPhase::pedestrian_green;
            else if (yield_wait)
                go = vehicles_yielding(*view.vehicles, frame, cross_cfg.yield_ttc);
            else
                go = decide_cross(state.c_gap,
                                  eval_ttc(plan, frame, TtcScope::pattern, state.pos).overall);
            if (go) {
                const double ttc_metric =
                    eval_ttc(plan, frame, TtcScope::all_remaining, state.pos).overall;
                plan.next_lane += 1;  // entry into the first lane is granted by this decision
                state.phase = PedPhase::crossing;
                emit(PedEventKind::cross_start, ttc_metric);
            }
            break;
        }

        case PedPhase::crossing: {
            CrossingPlan& plan = *state.plan;
            const CrossingFrame frame = make_frame(net, plan);
            const Vec2 dir = frame.dir();
            const Vec2 perp{-dir.y, dir.x};
            const double c_end = distance(plan.entry, plan.exit);
            const int lane_count = static_cast<int>(plan.lanes.size());
            double c = frame.c_of(state.pos);
            double budget = state.cross_speed * dt;

            // A slow body ahead is an obstacle: go-around pedestrians detour
            // sideways, the rest stand until it moves. Fast vehicles are never
            // dodged this way; misjudging those is what the TTC methods are
            // measured on. Lateral slides never pass through any body.
            auto body_at = [&](double cc, double off, double below_speed) {
                const Vec2 p = plan.entry + dir * std::min(cc, c_end) + perp * off;
                return vehicle_body_at(*view.vehicles, p, profile.body_radius, below_speed);
            };
            const double max_shift = profile.speed * dt;
            if (body_at(c + kProbeAhead, state.side_offset, kObstacleSpeed)) {
                if (profile.go_around_blocking) {
                    double target = state.side_offset;
                    bool found = false;
                    for (double off = 0.0; off <= kSideStepMax + 1e-9 && !found;
                         off += kSideStepGrid) {
                        for (double sign : {1.0, -1.0}) {
                            if (!body_at(c + kProbeAhead, sign * off, kObstacleSpeed)) {
                                target = sign * off;
                                found = true;
                                break;
                            }
                            if (off == 0.0) break;
                        }
                    }
                    if (found) {
                        const double cand =
                            state.side_offset +
                            std::clamp(target - state.side_offset, -max_shift, max_shift);
                        if (!body_at(c, cand, kInf)) state.side_offset = cand;
                    }
                }
                if (body_at(c + kProbeAhead, state.side_offset, kObstacleSpeed))
                    budget = 0.0;  // stand until the blocker moves on
            } else if (state.side_offset != 0.0) {
                const double cand =
                    state.side_offset + std::clamp(-state.side_offset, -max_shift, max_shift);
                if (!body_at(c, cand, kInf) && !body_at(c + kProbeAhead, cand, kObstacleSpeed))
                    state.side_offset = cand;
            }

            const bool signal_cross =
                plan.signalized && state.resolved_law == LawObedience::obedient;
            const bool yield_cross = !signal_cross && !plan.is_jaywalk &&
                                     state.resolved_law == LawObedience::obedient;

            // Re-check the lane being walked every step: when it turns unsafe,
            // head for the nearest lane edge and wait there. The judgment is
            // the pedestrian's own estimator, so misjudging methods bail at
            // the wrong moments while careful ones step out of harm's way.
            const int occupied = plan.next_lane - 1;
            if (!signal_cross && !yield_cross && occupied >= 0 && occupied < lane_count &&
                budget > kStepEps) {
                const double near_e =
                    frame.lane_near(plan.lanes[static_cast<std::size_t>(occupied)]);
                const double far_e = near_e + frame.lane_width;
                if (c > near_e + kStepEps && c < far_e - kStepEps &&
                    !decide_cross(state.c_gap,
                                  eval_ttc(plan, frame, TtcScope::occupied_lane, state.pos)
                                      .overall)) {
                    const double target = c - near_e <= far_e - c ? near_e : far_e;
                    const double move = std::min(budget, std::abs(target - c));
                    const double cand = c + (target > c ? move : -move);
                    if (!body_at(cand, state.side_offset, kInf)) {
                        c = cand;
                        state.walk_dist += move;
                    }
                    budget = 0.0;
                    if (std::abs(c - target) <= kStepEps) {
                        if (target == near_e) plan.next_lane = occupied;
                        state.pos = plan.entry + dir * c + perp * state.side_offset;
                        state.heading = frame.heading();
                        state.phase = PedPhase::mid_road_waiting;
                        emit(PedEventKind::midroad_wait);
                        break;
                    }
                }
            }

            bool finished = false;
            bool stopped = false;
            while (true) {
                if (c >= c_end - kStepEps) {
                    finished = true;
                    break;
                }
                // Standing exactly on the lane boundary leaves the widest
                // vehicle envelope 0.25 m clear on both sides.
                const double gate =
                    plan.next_lane < lane_count
                        ? frame.lane_near(plan.lanes[static_cast<std::size_t>(plan.next_lane)])
                        : kInf;
                if (c >= gate - kStepEps) {
                    bool enter = true;
                    if (yield_cross)
                        enter = vehicles_yielding(*view.vehicles, frame, cross_cfg.yield_ttc);
                    else if (!signal_cross) {
                        const Vec2 gate_pos =
                            plan.entry + dir * gate + perp * state.side_offset;
                        enter = decide_cross(
                            state.c_gap,
                            eval_ttc(plan, frame, TtcScope::pattern, gate_pos).overall);
                    }
                    // Nobody steps off the line into the flank of a vehicle
                    // already across the path; committed walkers further in
                    // take their chances, which is what the estimate judges.
                    if (enter && body_at(gate + kProbeAhead, state.side_offset, kInf))
                        enter = false;
                    if (!enter) {
                        c = gate;
                        stopped = true;
                        break;
                    }
                    plan.next_lane += 1;
                    continue;
                }
                if (budget <= kStepEps) break;
                const double move = std::min(budget, std::min(gate, c_end) - c);
                c += move;
                budget -= move;
                state.walk_dist += move;
            }

            if (finished) {
                state.pos = plan.exit;
                state.side_offset = 0.0;
                state.heading = frame.heading();
                state.waypoint = plan.resume_waypoint;
                emit(PedEventKind::cross_end, plan.is_jaywalk ? 1.0 : 0.0);
                state.plan.reset();
                state.phase = PedPhase::route_walking;
            } else {
                state.pos = plan.entry + dir * c + perp * state.side_offset;
                state.heading = frame.heading();
                if (stopped) {
                    state.phase = PedPhase::mid_road_waiting;
                    emit(PedEventKind::midroad_wait);
                }
            }
            break;
        }

        case PedPhase::mid_road_waiting: {
            CrossingPlan& plan = *state.plan;
            const CrossingFrame frame = make_frame(net, plan);
            state.wait_time += dt;
            state.total_wait += dt;
            state.c_gap = update_crossing_gap(profile.gap, state.wait_time, ped_cfg.wt_const,
                                              ped_cfg.gap_min);

            const bool yield_cross = !plan.is_jaywalk &&
                                     state.resolved_law == LawObedience::obedient &&
                                     !plan.signalized;
            if (!yield_cross && state.resolved_law == LawObedience::violating &&
                !state.timeout_fired &&
                profile.gap - ped_cfg.wt_const * state.wait_time < ped_cfg.gap_min) {
                // Rerouting is impossible mid-road, so every timeout speeds up here.
                state.timeout_fired = true;
                state.cross_speed = ped_cfg.speedup_factor * profile.speed;
                emit(PedEventKind::speedup);
            }

            const bool resume =
                yield_cross
                    ? vehicles_yielding(*view.vehicles, frame, cross_cfg.yield_ttc)
                    : decide_cross(state.c_gap,
                                   eval_ttc(plan, frame, TtcScope::pattern, state.pos).overall);
            if (resume) {
                plan.next_lane += 1;
                state.phase = PedPhase::crossing;
            }
            break;
        }

        case PedPhase::activity: {
            if (view.time >= state.activity_until) state.phase = PedPhase::route_walking;
            break;
        }

        case PedPhase::riding: {
            if (view.time >= state.ride_until) {
                state.pos = state.destination;
                arrive();
            }
            break;
        }

        case PedPhase::done:
            break;
    }
}

}  // namespace iwc
