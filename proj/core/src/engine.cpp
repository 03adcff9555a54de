#include "iwc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace iwc {

namespace {

constexpr double kSweepStride = 0.5;     // m of motion per collision sub-sample
constexpr double kPassedLineSlack = 0.3;  // m past a stop line before it is ignored

double lane_speed_limit(const RoadNetwork& net, const VehicleRoute& route, double s) {
    const int lane = route_lane(route, s);
    return lane >= 0 ? net.lane(lane).speed_limit : net.geom.road_max_speed;
}

/// Distance from the vehicle front to the nearest stop line ahead on its route
/// whose controller is not currently showing vehicle-green.
double holding_stop_line_distance(const RoadNetwork& net, const Vehicle& veh, double t) {
    const VehicleRoute& route = veh.state.route;
    const double s = veh.state.s;
    double best = kInf;
    for (std::size_t i = 0; i + 1 < route.pts.size(); ++i) {
        const int lane_id = route.pts[i].lane;
        if (lane_id < 0) break;
        const double seg_len = route.pts[i + 1].s - route.pts[i].s;
        const Lane& lane = net.lane(lane_id);
        const double lane_s0 = lane.s_of(route.pts[i].pos);
        for (const StopLine& sl : net.lane_stop_lines[static_cast<std::size_t>(lane_id)]) {
            const double along_seg = sl.s - lane_s0;
            if (along_seg < -1e-9 || along_seg > seg_len + 1e-9) continue;
            const double d = route.pts[i].s + along_seg - s;
            if (d < -kPassedLineSlack) continue;
            if (signal_state(net, sl.controller, t) == SignalPhase::vehicle_green) continue;
            best = std::min(best, d);
        }
    }
    return best;
}

struct PedBody {
    Vec2 pos;
    double radius;
};

double corridor_ped_distance(const RoadNetwork& net, const Vehicle& veh,
                             const std::vector<PedBody>& peds, double sight) {
    (void)net;
    const Vec2 front = route_point(veh.state.route, veh.state.s);
    const Vec2 h = heading_vector(route_heading(veh.state.route, veh.state.s));
    const double half_corridor = 0.5 * veh.profile.params.width + 0.4;
    double best = kInf;
    for (const PedBody& p : peds) {
        const Vec2 rel = p.pos - front;
        const double ahead = rel.dot(h);
        if (ahead <= 0.0 || ahead > sight) continue;
        const double lateral = std::abs(rel.x * h.y - rel.y * h.x);
        if (lateral <= half_corridor + p.radius) best = std::min(best, ahead);
    }
    return best;
}

VehicleView make_view(const Vehicle& veh, const VehicleConfig& cfg) {
    VehicleView view;
    view.id = veh.profile.id;
    view.type = veh.profile.type;
    view.front = route_point(veh.state.route, veh.state.s);
    view.heading = route_heading(veh.state.route, veh.state.s);
    // Pedestrians judge a moving vehicle by what it could do, not by braking
    // they cannot reliably discern: a rolling car may always speed back up.
    // A crawl below perceptible speed reads as parked until it visibly moves.
    const bool parked = veh.state.speed < 0.05;
    view.speed = parked ? 0.0 : veh.state.speed;
    view.accel = parked ? std::max(veh.state.accel, 0.0) : veh.profile.params.accel;
    view.motion_accel = veh.state.accel;
    view.length = veh.profile.params.length;
    view.width = veh.profile.params.width;
    view.max_speed = veh.profile.params.max_speed;
    const TurnStatus ts = turn_intent(veh.state, cfg);
    view.intent = ts.intent;
    view.signal_on = ts.signal_on;
    view.path.push_back(view.front);
    for (const PathPoint& p : veh.state.route.pts)
        if (p.s > veh.state.s + 1e-9) view.path.push_back(p.pos);
    view.body = route_body(veh.state.route, veh.state.s, view.length, view.width);
    return view;
}

bool ped_is_physical(const PedestrianState& st) {
    return st.phase != PedPhase::done && st.phase != PedPhase::riding && !st.collided;
}

void activate_pedestrian(World& w, std::size_t i) {
    const ScenarioConfig& cfg = w.scenario;
    const PedestrianProfile& profile = w.ped_profiles[i];
    PedestrianState& st = w.ped_states[i];
    RngStream& rng = w.ped_rngs[i];

    const std::array<double, 4> mode_weights = {
        cfg.pedestrians.mode_walk_pct, cfg.pedestrians.mode_drive_pct,
        cfg.pedestrians.mode_bus_pct, cfg.pedestrians.mode_taxi_pct};
    st.mode = choose_transit_mode(rng, mode_weights);

    st.pos = w.net.sidewalk_point_at(rng.uniform() * w.net.total_sidewalk_length());
    const int comp_o = w.net.component_of(st.pos);
    const double u_comp = rng.uniform();
    const double u_point = rng.uniform();
    int comp_d = comp_o;
    if (profile.requires_crossing && w.net.component_count > 1) {
        int k = static_cast<int>(u_comp * (w.net.component_count - 1));
        k = std::min(k, w.net.component_count - 2);
        comp_d = k >= comp_o ? k + 1 : k;
    }
    st.destination = w.net.point_in_component(comp_d, u_point);

    if (st.mode != TransitMode::walk) {
        // Walk leg to a boarding point on the same side, then ride (abstracted).
        const Vec2 board = w.net.point_in_component(comp_o, rng.uniform());
        st.resolved_law =
            resolve_law_obedience(profile, nearest_crosswalk(w.net, st.pos, false).distance);
        st.ride_pending = true;
        st.route = shortest_path(w.net, st.pos, board, LawObedience::obedient);
        st.waypoint = 1;
        st.phase = PedPhase::route_walking;
    } else {
        try {
            plan_route(w.net, profile, st, cfg.crossing, rng);
        } catch (const std::runtime_error&) {
            // Destination side unreachable (no crosswalk for an obedient ped):
            // stay on the origin side instead of deadlocking.
            st.destination = w.net.point_in_component(comp_o, u_point);
            plan_route(w.net, profile, st, cfg.crossing, rng);
        }
    }
    w.ped_spawned[i] = true;
    w.prev_ped_pos[i] = st.pos;
}

std::optional<Aggregate> make_aggregate(const std::vector<double>& xs) {
    if (xs.empty()) return std::nullopt;
    Aggregate a;
    a.n = static_cast<int>(xs.size());
    a.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / a.n;
    double ss = 0.0;
    for (double x : xs) ss += (x - a.mean) * (x - a.mean);
    a.stdev = a.n > 1 ? std::sqrt(ss / (a.n - 1)) : 0.0;
    return a;
}

}  // namespace

World make_world(const ScenarioConfig& scenario, std::uint64_t seed) {
    const std::vector<std::string> errors = scenario.validate();
    if (!errors.empty()) {
        std::string joined = "invalid scenario:";
        for (const std::string& e : errors) joined += "\n  - " + e;
        throw std::invalid_argument(joined);
    }

    World w;
    w.scenario = scenario;
    w.seed = seed;
    w.net = build_grid_network(scenario.geometry, scenario.signal);

    RngStream pop_rng(seed, "population");
    w.ped_profiles = generate_population(scenario, pop_rng);
    w.ped_states.resize(w.ped_profiles.size());
    w.ped_spawned.assign(w.ped_profiles.size(), false);
    w.ped_move_time.assign(w.ped_profiles.size(), 0.0);
    w.prev_ped_pos.assign(w.ped_profiles.size(), Vec2{});
    w.ped_activation.resize(w.ped_profiles.size());
    const double period = std::max(0.0, scenario.pedestrians.arrival_period);
    for (std::size_t i = 0; i < w.ped_profiles.size(); ++i)
        w.ped_activation[i] = static_cast<double>(i) * period;
    w.ped_rngs.reserve(w.ped_profiles.size());
    for (std::size_t i = 0; i < w.ped_profiles.size(); ++i)
        w.ped_rngs.emplace_back(seed, "decisions", static_cast<std::uint64_t>(i));
    w.vehicle_rng = RngStream(seed, "vehicle-spawn");
    return w;
}

std::vector<CollisionEvent> detect_collisions(const World& w) {
    std::vector<CollisionEvent> found;
    const double dt = w.scenario.run.dt;
    for (std::size_t vi = 0; vi < w.vehicles.size(); ++vi) {
        const Vehicle& veh = w.vehicles[vi];
        const double s0 = vi < w.prev_veh_s.size() ? w.prev_veh_s[vi] : veh.state.s;
        const double s1 = veh.state.s;
        const Vec2 front1 = route_point(veh.state.route, s1);
        const double reach = veh.profile.params.length + (s1 - s0) + 5.0;

        for (std::size_t pi = 0; pi < w.ped_states.size(); ++pi) {
            if (!w.ped_spawned[pi]) continue;
            const PedestrianState& ped = w.ped_states[pi];
            if (!ped_is_physical(ped)) continue;
            const Vec2 p0 = w.prev_ped_pos[pi];
            const Vec2 p1 = ped.pos;
            const double radius = w.ped_profiles[pi].body_radius;
            if (distance(p1, front1) > reach + distance(p0, p1) + radius) continue;

            const double travel = std::max(s1 - s0, distance(p0, p1));
            const int samples = std::max(1, static_cast<int>(std::ceil(travel / kSweepStride)));
            for (int k = 1; k <= samples; ++k) {
                const double f = static_cast<double>(k) / samples;
                const double s = s0 + f * (s1 - s0);
                const Vec2 pp = p0 + (p1 - p0) * f;
                const std::vector<OrientedRect> body = route_body(
                    veh.state.route, s, veh.profile.params.length, veh.profile.params.width);
                bool hit = false;
                for (const OrientedRect& rect : body)
                    if (rect.overlaps_circle(pp, radius)) {
                        hit = true;
                        break;
                    }
                if (!hit) continue;
                const Vec2 axis = heading_vector(route_heading(veh.state.route, s));

                CollisionEvent ev;
                ev.t = w.time + f * dt;
                ev.ped = w.ped_profiles[pi].id;
                ev.veh = veh.profile.id;
                ev.lane = route_lane(veh.state.route, s);
                ev.phase = ped.phase;
                const Vec2 veh_vel = axis * veh.state.speed;
                const Vec2 ped_vel = dt > 0.0 ? (p1 - p0) * (1.0 / dt) : Vec2{};
                ev.rel_speed = (veh_vel - ped_vel).norm();
                found.push_back(ev);
                break;
            }
        }
    }
    return found;
}

void step_world(World& w) {
    const ScenarioConfig& cfg = w.scenario;
    const double dt = cfg.run.dt;
    const double t = w.time;

    // 1. Spawn vehicles due by now.
    std::vector<Vehicle> placed =
        spawn_vehicles(cfg.vehicles, w.net, w.vehicle_rng, t, w.vehicles, w.spawn_state);
    for (Vehicle& v : placed) {
        w.prev_veh_s.push_back(v.state.s);
        w.vehicles.push_back(std::move(v));
        w.vehicles_spawned += 1;
    }

    // 2. Vehicle phase: contexts from the frozen pre-step state, then commit.
    std::vector<PedBody> bodies;
    for (std::size_t i = 0; i < w.ped_states.size(); ++i)
        if (w.ped_spawned[i] && ped_is_physical(w.ped_states[i]))
            bodies.push_back({w.ped_states[i].pos, w.ped_profiles[i].body_radius});

    std::vector<VehicleStepContext> ctxs(w.vehicles.size());
    for (std::size_t i = 0; i < w.vehicles.size(); ++i) {
        const Vehicle& veh = w.vehicles[i];
        VehicleStepContext& ctx = ctxs[i];
        ctx.speed_limit = lane_speed_limit(w.net, veh.state.route, veh.state.s);
        const LeaderInfo leader = find_leader(veh, w.vehicles, w.net.geom.lane_width);
        ctx.leader_gap = leader.gap;
        ctx.leader_speed = leader.speed;
        ctx.leader_emergency_decel = leader.emergency_decel;
        ctx.stop_line_dist = holding_stop_line_distance(w.net, veh, t);
        ctx.ped_dist = corridor_ped_distance(w.net, veh, bodies, cfg.vehicles.sight_distance);
    }
    for (std::size_t i = 0; i < w.vehicles.size(); ++i)
        w.prev_veh_s[i] = w.vehicles[i].state.s;
    for (std::size_t i = 0; i < w.vehicles.size(); ++i)
        step_vehicle(w.vehicles[i].profile, w.vehicles[i].state, ctxs[i], cfg.vehicles, dt);

    // 3. Activate pedestrians that are due.
    for (std::size_t i = 0; i < w.ped_profiles.size(); ++i)
        if (!w.ped_spawned[i] && w.ped_activation[i] <= t + 1e-9) activate_pedestrian(w, i);

    // 4. Pedestrian phase against the committed vehicle state.
    std::vector<VehicleView> views;
    views.reserve(w.vehicles.size());
    for (const Vehicle& veh : w.vehicles)
        if (!veh.state.done) views.push_back(make_view(veh, cfg.vehicles));

    WorldView wv;
    wv.net = &w.net;
    wv.time = t;
    wv.vehicles = &views;
    wv.method = cfg.ttc.method;
    wv.road_max_speed = cfg.geometry.road_max_speed;
    wv.noise_threshold = cfg.ttc.noise_threshold;

    for (std::size_t i = 0; i < w.ped_states.size(); ++i) {
        if (!w.ped_spawned[i]) continue;
        PedestrianState& st = w.ped_states[i];
        if (st.phase == PedPhase::done || st.collided) continue;
        w.prev_ped_pos[i] = st.pos;
        const PedPhase before = st.phase;
        if (before == PedPhase::route_walking || before == PedPhase::intend_to_cross ||
            before == PedPhase::crossing)
            w.ped_move_time[i] += dt;
        step_pedestrian(w.ped_profiles[i], st, wv, cfg.pedestrians, cfg.crossing, w.ped_rngs[i],
                        dt, w.events);
    }

    // 5. Collisions: collided pedestrians leave the simulation.
    std::vector<CollisionEvent> hits = detect_collisions(w);
    for (const CollisionEvent& ev : hits) {
        w.collisions.push_back(ev);
        w.ped_states[static_cast<std::size_t>(ev.ped)].collided = true;
    }

    // 6. Prune finished vehicles (keep prev_veh_s parallel).
    std::size_t keep = 0;
    for (std::size_t i = 0; i < w.vehicles.size(); ++i) {
        if (w.vehicles[i].state.done) continue;
        if (keep != i) {
            w.vehicles[keep] = std::move(w.vehicles[i]);
            w.prev_veh_s[keep] = w.prev_veh_s[i];
        }
        ++keep;
    }
    w.vehicles.resize(keep);
    w.prev_veh_s.resize(keep);

    w.time += dt;
    w.step += 1;
}

MetricsSummary collect_metrics(const World& w) {
    MetricsSummary m;
    m.collisions = static_cast<int>(w.collisions.size());
    m.vehicles_spawned = w.vehicles_spawned;

    // Per-ped bookkeeping from the event stream.
    struct Scratch {
        double wait = 0.0, wait_started = -1.0;
        double cross = 0.0, cross_started = -1.0;
        double min_ttc = kInf;
        int crossings = 0, illegal = 0;
    };
    std::vector<Scratch> scratch(w.ped_profiles.size());
    for (const PedEvent& ev : w.events) {
        Scratch& s = scratch[static_cast<std::size_t>(ev.ped)];
        switch (ev.kind) {
            case PedEventKind::wait_start:
                s.wait_started = ev.t;
                break;
            case PedEventKind::cross_start:
                if (s.wait_started >= 0.0) {
                    s.wait += ev.t - s.wait_started;
                    s.wait_started = -1.0;
                }
                s.cross_started = ev.t;
                s.min_ttc = std::min(s.min_ttc, ev.value);
                break;
            case PedEventKind::cross_end:
                if (s.cross_started >= 0.0) {
                    s.cross += ev.t - s.cross_started;
                    s.cross_started = -1.0;
                }
                s.crossings += 1;
                if (ev.value > 0.5) s.illegal += 1;
                break;
            default:
                break;
        }
    }

    std::vector<double> waits, ttcs, durations, speeds;
    for (std::size_t i = 0; i < w.ped_profiles.size(); ++i) {
        if (!w.ped_spawned[i]) continue;
        const PedestrianProfile& p = w.ped_profiles[i];
        const PedestrianState& st = w.ped_states[i];
        const Scratch& s = scratch[i];
        PedMetricsRow row;
        row.ped = p.id;
        row.type = p.type;
        row.trait = p.trait;
        row.law_declared = p.law;
        row.law_resolved = st.resolved_law;
        row.wait_time = s.wait;
        row.min_ttc = s.min_ttc;
        row.cross_duration = s.cross;
        row.crossings = s.crossings;
        row.illegal_crossings = s.illegal;
        row.mean_speed = w.ped_move_time[i] > 0.0 ? st.walk_dist / w.ped_move_time[i] : 0.0;
        row.arrived = st.phase == PedPhase::done && !st.collided;
        row.collided = st.collided;
        m.rows.push_back(row);

        m.peds_spawned += 1;
        if (row.collided)
            m.peds_collided += 1;
        else if (row.arrived)
            m.peds_arrived += 1;
        else
            m.peds_active_at_end += 1;
        m.crossings_total += s.crossings;
        m.crossings_illegal += s.illegal;
        if (st.collided) continue;  // excluded from behavioral aggregates
        if (s.crossings > 0) {
            waits.push_back(s.wait);
            durations.push_back(s.cross);
        }
        if (std::isfinite(s.min_ttc)) ttcs.push_back(s.min_ttc);
        if (w.ped_move_time[i] > 0.0) speeds.push_back(row.mean_speed);
    }
    m.wait_time = make_aggregate(waits);
    m.min_ttc = make_aggregate(ttcs);
    m.cross_duration = make_aggregate(durations);
    m.walk_speed = make_aggregate(speeds);
    if (m.crossings_total > 0)
        m.illegal_pct = 100.0 * m.crossings_illegal / m.crossings_total;
    return m;
}

RunResult run_simulation(const ScenarioConfig& scenario, std::uint64_t seed) {
    World w = make_world(scenario, seed);
    for (std::int64_t i = 0; i < scenario.run.steps; ++i) step_world(w);
    RunResult out;
    out.metrics = collect_metrics(w);
    out.events = w.events;
    out.collisions = w.collisions;
    return out;
}

}  // namespace iwc
