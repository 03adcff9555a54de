#include "iwc/vehicles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iwc {

namespace {

std::size_t segment_index(const VehicleRoute& route, double s) {
    if (route.pts.size() < 2) throw std::logic_error("route has no segments");
    for (std::size_t i = 0; i + 2 < route.pts.size(); ++i) {
        if (s < route.pts[i + 1].s) return i;
    }
    return route.pts.size() - 2;
}

}  // namespace

Vec2 route_point(const VehicleRoute& route, double s) {
    s = std::clamp(s, 0.0, route.length);
    const std::size_t i = segment_index(route, s);
    const PathPoint& a = route.pts[i];
    const PathPoint& b = route.pts[i + 1];
    const double seg = b.s - a.s;
    const double t = seg > 1e-12 ? (s - a.s) / seg : 0.0;
    return a.pos + (b.pos - a.pos) * t;
}

double route_heading(const VehicleRoute& route, double s) {
    s = std::clamp(s, 0.0, route.length);
    const std::size_t i = segment_index(route, s);
    const Vec2 d = route.pts[i + 1].pos - route.pts[i].pos;
    return std::atan2(d.y, d.x);
}

int route_lane(const VehicleRoute& route, double s) {
    s = std::clamp(s, 0.0, route.length);
    return route.pts[segment_index(route, s)].lane;
}

std::vector<OrientedRect> route_body(const VehicleRoute& route, double s, double length,
                                     double width) {
    std::vector<OrientedRect> rects;
    // The body may overhang the route ends (spawning in, exiting); those
    // overhangs continue straight along the first/last segment's direction.
    const double lo = s - length;
    for (std::size_t i = 0; i + 1 < route.pts.size(); ++i) {
        const PathPoint& a = route.pts[i];
        const PathPoint& b = route.pts[i + 1];
        const bool first = i == 0;
        const bool last = i + 2 == route.pts.size();
        const double s0 = first ? lo : std::max(lo, a.s);
        const double s1 = last ? s : std::min(s, b.s);
        if (s1 - s0 < 1e-9) continue;
        const double seg = b.s - a.s;
        if (seg < 1e-12) continue;
        const Vec2 dir = (b.pos - a.pos) * (1.0 / seg);
        const Vec2 p0 = a.pos + dir * (s0 - a.s);
        const Vec2 p1 = a.pos + dir * (s1 - a.s);
        rects.push_back({(p0 + p1) * 0.5, dir, 0.5 * (s1 - s0), 0.5 * width});
    }
    return rects;
}

VehicleRoute build_route(const RoadNetwork& net, int entry_lane, TurnIntent movement) {
    const Lane& L = net.lane(entry_lane);
    VehicleRoute route;
    route.entry_lane = entry_lane;

    auto straight_through = [&]() {
        route.pts = {{L.a, 0.0, L.id}, {L.b, L.length(), -1}};
        route.length = L.length();
        route.exit_lane = L.id;
        route.turn = TurnIntent::straight;
        route.turn_s = kInf;
    };

    if (movement == TurnIntent::straight || !net.has_intersection) {
        straight_through();
        return route;
    }

    // Target direction: left turns rotate the heading +90 degrees, right -90.
    const Vec2 de = L.dir();
    const Vec2 dt = movement == TurnIntent::left ? Vec2{-de.y, de.x} : Vec2{de.y, -de.x};
    const int want_index =
        movement == TurnIntent::left ? net.geom.lanes_per_direction - 1 : 0;

    const Lane* target = nullptr;
    for (const Lane& T : net.lanes) {
        if (T.road == L.road) continue;
        if (T.index != want_index) continue;
        if (T.dir().dot(dt) > 0.999) {
            target = &T;
            break;
        }
    }
    if (target == nullptr) {
        straight_through();
        return route;
    }

    // Corner point where the two lane centerlines cross.
    const bool entry_horizontal = std::abs(de.y) < 1e-9;
    const Vec2 p1 = entry_horizontal ? Vec2{target->a.x, L.a.y} : Vec2{L.a.x, target->a.y};
    const double s1 = distance(L.a, p1);
    const double s2 = s1 + distance(p1, target->b);
    route.pts = {{L.a, 0.0, L.id}, {p1, s1, target->id}, {target->b, s2, -1}};
    route.length = s2;
    route.exit_lane = target->id;
    route.turn = movement;
    route.turn_s = s1;
    return route;
}

TurnStatus turn_intent(const VehicleState& state, const VehicleConfig& cfg) {
    TurnStatus out;
    if (state.route.turn == TurnIntent::straight || state.s >= state.route.turn_s)
        return out;
    out.intent = state.route.turn;
    out.signal_on = state.route.turn_s - state.s <= cfg.signaling_distance;
    return out;
}

void step_vehicle(const VehicleProfile& profile, VehicleState& state,
                  const VehicleStepContext& ctx, const VehicleConfig& cfg, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
    if (state.done) return;

    const VehicleTypeParams& p = profile.params;
    const double v = state.speed;
    const double v_cap = std::min(ctx.speed_limit, p.max_speed);

    // Safe speed against an obstacle `gap` metres ahead moving at v_obs whose
    // worst-case braking rate is b_obs (0 = stationary wall).
    auto safe_speed = [&](double gap, double v_obs, double b_obs) {
        const double g = std::max(0.0, gap);
        const double reach = b_obs > 0.0 ? v_obs * v_obs / (2.0 * b_obs) : 0.0;
        const double b = p.decel;
        const double bt = b * cfg.reaction_time;
        return -bt + std::sqrt(bt * bt + 2.0 * b * (g + reach));
    };

    double v_next = std::min(v + p.accel * dt, v_cap);
    if (state.route.turn != TurnIntent::straight && cfg.turn_speed < v_cap) {
        // Brake toward the corner speed on approach, hold it until the body
        // has cleared the corner, then accelerate back out.
        const double to_turn = state.route.turn_s - state.s;
        if (to_turn > 0.0)
            v_next = std::min(v_next, std::sqrt(cfg.turn_speed * cfg.turn_speed +
                                                2.0 * p.decel * to_turn));
        else if (state.s < state.route.turn_s + p.length)
            v_next = std::min(v_next, cfg.turn_speed);
    }
    if (std::isfinite(ctx.leader_gap)) {
        v_next = std::min(v_next, safe_speed(ctx.leader_gap - cfg.min_gap, ctx.leader_speed,
                                             ctx.leader_emergency_decel));
        v_next = std::min(v_next, std::max(0.0, ctx.leader_gap) / cfg.headway);
    }
    if (std::isfinite(ctx.stop_line_dist))
        v_next = std::min(v_next, safe_speed(ctx.stop_line_dist, 0.0, 0.0));
    if (std::isfinite(ctx.ped_dist))
        v_next = std::min(v_next, safe_speed(ctx.ped_dist - 1.0, 0.0, 0.0));

    v_next = std::max(0.0, v_next);
    const double v_floor = std::max(0.0, v - p.emergency_decel * dt);
    if (v_next < v_floor) v_next = v_floor;

    state.accel = (v_next - v) / dt;
    state.s += 0.5 * (v + v_next) * dt;
    state.speed = v_next;
    if (state.s >= state.route.length) state.done = true;
}

LeaderInfo find_leader(const Vehicle& self, const std::vector<Vehicle>& all, double lane_width) {
    LeaderInfo best;
    const VehicleRoute& route = self.state.route;
    const double lateral_tol = 0.45 * lane_width;

    for (const Vehicle& other : all) {
        if (other.profile.id == self.profile.id || other.state.done) continue;
        const Vec2 front = route_point(other.state.route, other.state.s);
        for (std::size_t i = 0; i + 1 < route.pts.size(); ++i) {
            const Vec2 a = route.pts[i].pos;
            const Vec2 b = route.pts[i + 1].pos;
            const double t = project_on_segment(front, a, b);
            const Vec2 proj = a + (b - a) * t;
            if (distance(front, proj) > lateral_tol) continue;
            const double arc = route.pts[i].s + t * (route.pts[i + 1].s - route.pts[i].s);
            const double gap = arc - other.profile.params.length - self.state.s;
            if (arc < self.state.s - 0.5) continue;  // behind the front bumper
            if (gap < best.gap) {
                best.gap = gap;
                best.speed = other.state.speed;
                best.emergency_decel = other.profile.params.emergency_decel;
            }
        }
    }
    return best;
}

namespace {

VehType draw_vehicle_type(const VehicleConfig& cfg, RngStream& rng) {
    const double u = rng.uniform() * 100.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < cfg.mix_pct.size(); ++i) {
        acc += cfg.mix_pct[i];
        if (u < acc) return static_cast<VehType>(i);
    }
    return static_cast<VehType>(cfg.mix_pct.size() - 1);
}

bool entry_blocked(const RoadNetwork& net, int entry_lane, double new_length,
                   const VehicleConfig& cfg, const std::vector<Vehicle>& vehicles) {
    for (const Vehicle& v : vehicles) {
        if (v.state.done || v.state.route.entry_lane != entry_lane) continue;
        if (route_lane(v.state.route, v.state.s) != entry_lane &&
            v.state.s > v.state.route.turn_s + v.profile.params.length)
            continue;  // already fully past the turn corner, off the entry lane
        const double rear = v.state.s - v.profile.params.length;
        if (rear < new_length + cfg.min_gap) return true;
    }
    (void)net;
    return false;
}

}  // namespace

std::vector<Vehicle> spawn_vehicles(const VehicleConfig& cfg, const RoadNetwork& net,
                                    RngStream& rng, double sim_time,
                                    const std::vector<Vehicle>& existing, SpawnState& st) {
    std::vector<Vehicle> placed;
    if (cfg.spawn_period <= 0.0) return placed;

    // Entry groups: one per (road, direction), lanes ordered curb to centre.
    std::vector<std::vector<int>> entries;
    for (const RoadDef& road : net.roads) {
        for (int dir : {+1, -1}) {
            std::vector<int> group;
            for (const Lane& lane : net.lanes) {
                if (lane.road != road.id) continue;
                const Vec2 d = lane.dir();
                const double along = road.horizontal ? d.x : d.y;
                if ((along > 0.0) == (dir > 0)) group.push_back(lane.id);
            }
            std::sort(group.begin(), group.end(), [&](int lhs, int rhs) {
                return net.lane(lhs).index < net.lane(rhs).index;
            });
            if (!group.empty()) entries.push_back(std::move(group));
        }
    }
    if (entries.empty()) return placed;

    while (st.next_time <= sim_time + 1e-9) {
        SpawnState::Pending req;
        req.type = draw_vehicle_type(cfg, rng);
        const std::vector<int>& group = entries[rng.uniform_index(entries.size())];
        double mu = rng.uniform();
        req.movement = !net.has_intersection ? TurnIntent::straight
                       : mu < 1.0 / 3.0      ? TurnIntent::left
                       : mu < 2.0 / 3.0      ? TurnIntent::right
                                             : TurnIntent::straight;
        switch (req.movement) {
            case TurnIntent::left:
                req.entry_lane = group.back();
                break;
            case TurnIntent::right:
                req.entry_lane = group.front();
                break;
            default:
                req.entry_lane = group[rng.uniform_index(group.size())];
                break;
        }
        st.pending.push_back(req);
        st.next_time += cfg.spawn_period;
    }

    // FIFO release; an entry stays blocked for everything queued behind it too,
    // otherwise later spawns would overtake earlier ones on the same lane.
    std::vector<SpawnState::Pending> still_waiting;
    auto blocked_now = [&](const SpawnState::Pending& req, double length) {
        if (entry_blocked(net, req.entry_lane, length, cfg, existing)) return true;
        if (entry_blocked(net, req.entry_lane, length, cfg, placed)) return true;
        for (const SpawnState::Pending& w : still_waiting)
            if (w.entry_lane == req.entry_lane) return true;
        return false;
    };
    for (const SpawnState::Pending& req : st.pending) {
        const VehicleTypeParams& params = cfg.types[static_cast<std::size_t>(req.type)];
        if (blocked_now(req, params.length)) {
            still_waiting.push_back(req);
            continue;
        }
        Vehicle veh;
        veh.profile.id = st.next_id++;
        veh.profile.type = req.type;
        veh.profile.params = params;
        veh.state.route = build_route(net, req.entry_lane, req.movement);
        veh.state.s = params.length;  // rear bumper starts at the road edge
        veh.state.speed = 0.0;
        placed.push_back(std::move(veh));
    }
    st.pending = std::move(still_waiting);
    return placed;
}

}  // namespace iwc
