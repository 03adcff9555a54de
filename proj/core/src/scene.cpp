#include "iwc/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>
#include <stdexcept>
#include <utility>

namespace iwc {
namespace {

constexpr double kEps = 1e-9;
constexpr double kCoordEps = 1e-6;

std::pair<long long, long long> coord_key(Vec2 p) {
    return {llround(p.x * 1e6), llround(p.y * 1e6)};
}

double axis_of(const RoadDef& r, Vec2 p) { return r.horizontal ? p.x : p.y; }
double lateral_of_road(const RoadDef& r, Vec2 p) { return r.horizontal ? p.y : p.x; }
Vec2 road_point(const RoadDef& r, double axis, double lateral) {
    return r.horizontal ? Vec2{axis, lateral} : Vec2{lateral, axis};
}

struct NodeMap {
    std::map<std::pair<long long, long long>, int> ids;
    std::vector<WalkNode>* nodes;

    int get(Vec2 p) {
        auto key = coord_key(p);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(nodes->size());
        nodes->push_back({id, p});
        ids.emplace(key, id);
        return id;
    }
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

void add_stop_line(RoadNetwork& net, int lane_id, double axis, int controller) {
    const Lane& ln = net.lanes[static_cast<std::size_t>(lane_id)];
    const RoadDef& r = net.roads[static_cast<std::size_t>(ln.road)];
    double s = ln.s_of(road_point(r, axis, lateral_of_road(r, ln.a)));
    if (s <= kEps || s >= ln.length() - kEps) return;
    net.lane_stop_lines[static_cast<std::size_t>(lane_id)].push_back({s, controller});
}

}  // namespace

RoadNetwork build_grid_network(const GeometryConfig& geom, const SignalConfig& signal) {
    if (geom.h_nodes == 0 && geom.v_nodes == 0)
        throw std::invalid_argument("geometry needs at least one road axis");
    if (geom.h_nodes < 0 || geom.v_nodes < 0 || geom.h_nodes == 1 || geom.v_nodes == 1)
        throw std::invalid_argument("node counts must be 0 or >= 2 per axis");
    if (!(geom.node_spacing > 0)) throw std::invalid_argument("node spacing must be > 0");
    if (geom.lanes_per_direction < 1)
        throw std::invalid_argument("lanes_per_direction must be >= 1");
    if (!(geom.lane_width > 0)) throw std::invalid_argument("lane width must be > 0");
    if (!(geom.sidewalk_width > 0)) throw std::invalid_argument("sidewalk width must be > 0");
    if (!(geom.road_max_speed > 0)) throw std::invalid_argument("road speed limit must be > 0");
    if (geom.crosswalk_offset_edges < 1)
        throw std::invalid_argument("crosswalk_offset_edges must be >= 1");

    RoadNetwork net;
    net.geom = geom;
    net.signal_timing = signal;

    const double half = net.road_half_width();
    const double corner = net.corner_offset();

    auto add_road = [&](bool horizontal, int n_nodes) {
        if (n_nodes < 2) return;
        RoadDef r;
        r.id = static_cast<int>(net.roads.size());
        r.horizontal = horizontal;
        r.half_width = half;
        int center_idx = (n_nodes - 1) / 2;
        r.axis_lo = -center_idx * geom.node_spacing;
        r.axis_hi = (n_nodes - 1 - center_idx) * geom.node_spacing;
        net.roads.push_back(r);
        for (int i = 0; i < n_nodes; ++i) {
            double axis = r.axis_lo + i * geom.node_spacing;
            net.nodes.push_back(road_point(r, axis, 0.0));
        }
    };
    add_road(true, geom.h_nodes);
    add_road(false, geom.v_nodes);

    net.has_intersection = net.roads.size() == 2;
    net.intersection_center = {0, 0};
    for (auto& r : net.roads) {
        r.has_crossing = net.has_intersection;
        r.cross_pos = 0.0;
    }

    // Directed lanes; right-hand traffic. Direction +1 = east / north.
    for (const auto& r : net.roads) {
        for (int dir : {+1, -1}) {
            for (int idx = 0; idx < geom.lanes_per_direction; ++idx) {
                double mag = half - (idx + 0.5) * geom.lane_width;
                int lat_sign = r.horizontal ? -dir : dir;
                double lat = lat_sign * mag;
                Lane ln;
                ln.id = static_cast<int>(net.lanes.size());
                ln.road = r.id;
                ln.index = idx;
                ln.width = geom.lane_width;
                ln.speed_limit = geom.road_max_speed;
                ln.a = road_point(r, dir > 0 ? r.axis_lo : r.axis_hi, lat);
                ln.b = road_point(r, dir > 0 ? r.axis_hi : r.axis_lo, lat);
                net.lanes.push_back(ln);
            }
        }
    }

    // Crosswalks: with an intersection, one scramble at its west edge plus one
    // arm per connecting road every crosswalk_offset_edges edges out; a single
    // road instead gets one at every crosswalk_offset_edges-th node.
    auto add_crosswalk = [&](int road, double axis, bool scramble) {
        const RoadDef& r = net.roads[static_cast<std::size_t>(road)];
        if (axis < r.axis_lo - kEps || axis > r.axis_hi + kEps) return;
        Crosswalk cw;
        cw.id = static_cast<int>(net.crosswalks.size());
        cw.road = road;
        cw.axis_pos = axis;
        cw.scramble = scramble;
        cw.end_a = road_point(r, axis, -corner);
        cw.end_b = road_point(r, axis, +corner);
        cw.signalized = true;
        cw.controller = cw.id;
        for (const auto& ln : net.lanes)
            if (ln.road == road) cw.lanes.push_back(ln.id);
        net.crosswalks.push_back(cw);
        // Controllers run uncoordinated: alternate half-cycle offsets so the
        // corridor is not one accidental green wave.
        SignalConfig timing = signal;
        timing.offset += (cw.id % 2) * 0.5 * signal.cycle_length();
        net.signals.push_back({cw.id, timing});
    };

    if (net.has_intersection) {
        add_crosswalk(0, net.roads[0].cross_pos - corner, true);
        for (const auto& r : net.roads) {
            double off = geom.crosswalk_offset_edges * geom.node_spacing;
            for (int side : {-1, +1}) {
                double axis = r.cross_pos + side * off;
                if (std::abs(axis - r.cross_pos) < corner + kCrosswalkHalfWidth) continue;
                add_crosswalk(r.id, axis, false);
            }
        }
    } else {
        const RoadDef& r = net.roads[0];
        int n = static_cast<int>(std::llround((r.axis_hi - r.axis_lo) / geom.node_spacing)) + 1;
        int center_idx = (n - 1) / 2;
        for (int i = 0; i < n; ++i) {
            int k = geom.crosswalk_offset_edges;
            if (((i - center_idx) % k + k) % k != 0) continue;
            add_crosswalk(0, r.axis_lo + i * geom.node_spacing, false);
        }
    }

    // Stop lines held by each signalized crosswalk's controller.
    net.lane_stop_lines.resize(net.lanes.size());
    for (const auto& cw : net.crosswalks) {
        if (!cw.signalized) continue;
        const RoadDef& own = net.roads[static_cast<std::size_t>(cw.road)];
        for (const auto& ln : net.lanes) {
            const RoadDef& lr = net.roads[static_cast<std::size_t>(ln.road)];
            double dir = axis_of(lr, ln.b) > axis_of(lr, ln.a) ? 1.0 : -1.0;
            if (!cw.scramble) {
                if (ln.road != cw.road) continue;
                add_stop_line(net, ln.id, cw.axis_pos - dir * (kCrosswalkHalfWidth + kStopLineMargin),
                              cw.controller);
                continue;
            }
            // Scramble: approaches that meet the band before the box stop ahead
            // of it; every other approach stops at the box entry.
            const RoadDef& other = net.roads[static_cast<std::size_t>(1 - cw.road)];
            if (ln.road == cw.road) {
                double cw_side = cw.axis_pos < own.cross_pos ? -1.0 : 1.0;
                if (dir * cw_side < 0) {
                    add_stop_line(net, ln.id,
                                  cw.axis_pos - dir * (kCrosswalkHalfWidth + kStopLineMargin),
                                  cw.controller);
                } else {
                    double box = other.half_width + kIntersectionMargin;
                    add_stop_line(net, ln.id, own.cross_pos - dir * box, cw.controller);
                }
            } else {
                double box = own.half_width + kIntersectionMargin;
                add_stop_line(net, ln.id, lr.cross_pos - dir * box, cw.controller);
            }
        }
    }
    for (auto& sl : net.lane_stop_lines)
        std::sort(sl.begin(), sl.end(), [](const StopLine& a, const StopLine& b) { return a.s < b.s; });

    // Sidewalk centerlines, split where the crossing road's pavement interrupts.
    NodeMap nm{{}, &net.walk_nodes};
    for (const auto& r : net.roads) {
        for (int side : {-1, +1}) {
            double lat = side * corner;
            std::vector<std::pair<double, double>> spans;
            if (r.has_crossing) {
                spans.emplace_back(r.axis_lo, r.cross_pos - corner);
                spans.emplace_back(r.cross_pos + corner, r.axis_hi);
            } else {
                spans.emplace_back(r.axis_lo, r.axis_hi);
            }
            for (auto [lo, hi] : spans) {
                if (hi - lo < kCoordEps) continue;
                SidewalkLine line;
                line.road = r.id;
                line.lateral = lat;
                line.a = road_point(r, lo, lat);
                line.b = road_point(r, hi, lat);
                std::vector<double> stations{lo, hi};
                for (const auto& cw : net.crosswalks) {
                    if (cw.road != r.id) continue;
                    if (cw.axis_pos > lo + kCoordEps && cw.axis_pos < hi - kCoordEps)
                        stations.push_back(cw.axis_pos);
                }
                std::sort(stations.begin(), stations.end());
                for (double ax : stations) line.stations.push_back(nm.get(road_point(r, ax, lat)));
                net.sidewalk_lines.push_back(std::move(line));
            }
        }
    }

    for (const auto& line : net.sidewalk_lines) {
        for (std::size_t i = 0; i + 1 < line.stations.size(); ++i) {
            int a = line.stations[i], b = line.stations[i + 1];
            net.walk_edges.push_back({a, b,
                                      distance(net.walk_nodes[static_cast<std::size_t>(a)].pos,
                                               net.walk_nodes[static_cast<std::size_t>(b)].pos),
                                      WalkEdgeKind::sidewalk, -1, -1});
        }
    }
    for (auto& cw : net.crosswalks) {
        cw.end_a_node = nm.get(cw.end_a);
        cw.end_b_node = nm.get(cw.end_b);
        net.walk_edges.push_back({cw.end_a_node, cw.end_b_node, cw.length(),
                                  WalkEdgeKind::crosswalk, cw.id, cw.road});
    }

    // Components of the crossing-free graph define "requires a crossing".
    UnionFind uf(static_cast<int>(net.walk_nodes.size()));
    for (const auto& e : net.walk_edges)
        if (e.kind == WalkEdgeKind::sidewalk) uf.unite(e.a, e.b);
    std::map<int, int> roots;
    net.node_component.resize(net.walk_nodes.size());
    for (std::size_t i = 0; i < net.walk_nodes.size(); ++i) {
        int root = uf.find(static_cast<int>(i));
        auto [it, fresh] = roots.emplace(root, static_cast<int>(roots.size()));
        net.node_component[i] = it->second;
    }
    net.component_count = static_cast<int>(roots.size());

    net.line_cumlen_.resize(net.sidewalk_lines.size());
    net.line_component_.resize(net.sidewalk_lines.size());
    net.component_length_.assign(static_cast<std::size_t>(net.component_count), 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < net.sidewalk_lines.size(); ++i) {
        const auto& line = net.sidewalk_lines[i];
        double len = distance(line.a, line.b);
        acc += len;
        net.line_cumlen_[i] = acc;
        int comp = net.node_component[static_cast<std::size_t>(line.stations.front())];
        net.line_component_[i] = comp;
        net.component_length_[static_cast<std::size_t>(comp)] += len;
    }
    return net;
}

SignalPhase signal_state(const SignalController& ctrl, double t) {
    double cyc = ctrl.timing.cycle_length();
    double u = std::fmod(t - ctrl.timing.offset, cyc);
    if (u < 0) u += cyc;
    if (u < ctrl.timing.vehicle_green) return SignalPhase::vehicle_green;
    if (u < ctrl.timing.vehicle_green + ctrl.timing.clearance) return SignalPhase::clearance;
    return SignalPhase::pedestrian_green;
}

SignalPhase signal_state(const RoadNetwork& net, int controller, double t) {
    return signal_state(net.signals.at(static_cast<std::size_t>(controller)), t);
}

double RoadNetwork::total_sidewalk_length() const {
    return line_cumlen_.empty() ? 0.0 : line_cumlen_.back();
}

Vec2 RoadNetwork::sidewalk_point_at(double arc) const {
    if (sidewalk_lines.empty()) return {0, 0};
    arc = std::clamp(arc, 0.0, total_sidewalk_length());
    auto it = std::lower_bound(line_cumlen_.begin(), line_cumlen_.end(), arc);
    std::size_t i = static_cast<std::size_t>(it - line_cumlen_.begin());
    if (i >= sidewalk_lines.size()) i = sidewalk_lines.size() - 1;
    const auto& line = sidewalk_lines[i];
    double start = i == 0 ? 0.0 : line_cumlen_[i - 1];
    double local = arc - start;
    double len = distance(line.a, line.b);
    double t = len > 0 ? std::clamp(local / len, 0.0, 1.0) : 0.0;
    return line.a + (line.b - line.a) * t;
}

int RoadNetwork::component_of(Vec2 p) const {
    double best = kInf;
    int comp = 0;
    for (std::size_t i = 0; i < sidewalk_lines.size(); ++i) {
        double d = point_segment_distance(p, sidewalk_lines[i].a, sidewalk_lines[i].b);
        if (d < best) {
            best = d;
            comp = line_component_[i];
        }
    }
    return comp;
}

Vec2 RoadNetwork::point_in_component(int component, double u) const {
    double total = component_length_.at(static_cast<std::size_t>(component));
    double target = std::clamp(u, 0.0, 1.0) * total;
    for (std::size_t i = 0; i < sidewalk_lines.size(); ++i) {
        if (line_component_[i] != component) continue;
        double len = distance(sidewalk_lines[i].a, sidewalk_lines[i].b);
        if (target <= len || i + 1 == sidewalk_lines.size()) {
            double t = len > 0 ? std::clamp(target / len, 0.0, 1.0) : 0.0;
            return sidewalk_lines[i].a + (sidewalk_lines[i].b - sidewalk_lines[i].a) * t;
        }
        target -= len;
    }
    return sidewalk_lines.empty() ? Vec2{0, 0} : sidewalk_lines.front().a;
}

namespace {

struct GEdge {
    int to = -1;
    double len = 0.0;
    WalkEdgeKind kind = WalkEdgeKind::sidewalk;
    int crosswalk = -1;
    int road = -1;
};

struct Graph {
    std::vector<Vec2> pos;
    std::vector<std::vector<GEdge>> adj;

    int add_node(Vec2 p) {
        pos.push_back(p);
        adj.emplace_back();
        return static_cast<int>(pos.size()) - 1;
    }
    void add_edge(int a, int b, double len, WalkEdgeKind kind, int cw, int road) {
        adj[static_cast<std::size_t>(a)].push_back({b, len, kind, cw, road});
        adj[static_cast<std::size_t>(b)].push_back({a, len, kind, cw, road});
    }
};

Graph base_graph(const RoadNetwork& net, bool sidewalk_only) {
    Graph g;
    for (const auto& n : net.walk_nodes) g.add_node(n.pos);
    for (const auto& e : net.walk_edges) {
        if (sidewalk_only && e.kind != WalkEdgeKind::sidewalk) continue;
        g.add_edge(e.a, e.b, e.length, e.kind, e.crosswalk, e.road);
    }
    return g;
}

int find_node(const Graph& g, Vec2 p) {
    for (std::size_t i = 0; i < g.pos.size(); ++i)
        if (distance(g.pos[i], p) < kCoordEps) return static_cast<int>(i);
    return -1;
}

/// Snaps p to the sidewalk lines and splices it into the graph.
int attach_point(const RoadNetwork& net, Graph& g, Vec2 p) {
    double best = kInf;
    std::size_t best_line = 0;
    double best_t = 0.0;
    for (std::size_t i = 0; i < net.sidewalk_lines.size(); ++i) {
        const auto& line = net.sidewalk_lines[i];
        double t = project_on_segment(p, line.a, line.b);
        double d = distance(p, line.a + (line.b - line.a) * t);
        if (d < best) {
            best = d;
            best_line = i;
            best_t = t;
        }
    }
    if (net.sidewalk_lines.empty()) throw std::runtime_error("network has no walkable geometry");
    const auto& line = net.sidewalk_lines[best_line];
    Vec2 q = line.a + (line.b - line.a) * best_t;
    if (int existing = find_node(g, q); existing >= 0) return existing;

    int id = g.add_node(q);
    const RoadDef& r = net.roads[static_cast<std::size_t>(line.road)];
    double qa = axis_of(r, q);
    int lo = line.stations.front(), hi = line.stations.back();
    for (std::size_t i = 0; i + 1 < line.stations.size(); ++i) {
        double a0 = axis_of(r, g.pos[static_cast<std::size_t>(line.stations[i])]);
        double a1 = axis_of(r, g.pos[static_cast<std::size_t>(line.stations[i + 1])]);
        if (qa >= std::min(a0, a1) - kCoordEps && qa <= std::max(a0, a1) + kCoordEps) {
            lo = line.stations[i];
            hi = line.stations[i + 1];
            break;
        }
    }
    g.add_edge(id, lo, distance(q, g.pos[static_cast<std::size_t>(lo)]), WalkEdgeKind::sidewalk, -1, -1);
    g.add_edge(id, hi, distance(q, g.pos[static_cast<std::size_t>(hi)]), WalkEdgeKind::sidewalk, -1, -1);
    return id;
}

/// Adds perpendicular jaywalk edges at the feet of every current node,
/// outside the intersection band.
void add_jaywalk_edges(const RoadNetwork& net, Graph& g) {
    double corner = net.corner_offset();
    std::vector<Vec2> snapshot = g.pos;
    for (const auto& r : net.roads) {
        std::vector<double> cands;
        for (const auto& p : snapshot) {
            double ax = axis_of(r, p);
            if (ax < r.axis_lo - kCoordEps || ax > r.axis_hi + kCoordEps) continue;
            if (r.has_crossing && std::abs(ax - r.cross_pos) < corner - kCoordEps) continue;
            cands.push_back(ax);
        }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end(),
                                [](double a, double b) { return std::abs(a - b) < kCoordEps; }),
                    cands.end());
        for (double ax : cands) {
            int a = attach_point(net, g, road_point(r, ax, -corner));
            int b = attach_point(net, g, road_point(r, ax, +corner));
            g.add_edge(a, b, net.crossing_length(), WalkEdgeKind::jaywalk, -1, r.id);
        }
    }
}

struct DijkstraResult {
    std::vector<double> dist;
    std::vector<int> crossings;
    std::vector<int> pred;
    std::vector<GEdge> pred_edge;
};

DijkstraResult dijkstra(const Graph& g, int source) {
    std::size_t n = g.pos.size();
    DijkstraResult res;
    res.dist.assign(n, kInf);
    res.crossings.assign(n, 0);
    res.pred.assign(n, -1);
    res.pred_edge.assign(n, {});
    using Item = std::tuple<double, int, int>;  // dist, crossings, node
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    res.dist[static_cast<std::size_t>(source)] = 0.0;
    pq.emplace(0.0, 0, source);
    while (!pq.empty()) {
        auto [d, c, u] = pq.top();
        pq.pop();
        auto su = static_cast<std::size_t>(u);
        if (d > res.dist[su] + kEps || (d > res.dist[su] - kEps && c > res.crossings[su])) continue;
        for (const auto& e : g.adj[su]) {
            double nd = d + e.len;
            int nc = c + (e.kind == WalkEdgeKind::sidewalk ? 0 : 1);
            auto sv = static_cast<std::size_t>(e.to);
            bool better = nd < res.dist[sv] - kEps;
            if (!better && nd < res.dist[sv] + kEps) {
                if (nc < res.crossings[sv]) better = true;
                else if (nc == res.crossings[sv] && u < res.pred[sv]) better = true;
            }
            if (!better) continue;
            res.dist[sv] = nd;
            res.crossings[sv] = nc;
            res.pred[sv] = u;
            res.pred_edge[sv] = e;
            pq.emplace(nd, nc, e.to);
        }
    }
    return res;
}

}  // namespace

Route shortest_path(const RoadNetwork& net, Vec2 origin, Vec2 destination, LawObedience law) {
    Graph g = base_graph(net, false);
    int o = attach_point(net, g, origin);
    int d = attach_point(net, g, destination);
    if (law == LawObedience::violating) add_jaywalk_edges(net, g);

    if (o == d) return Route{{g.pos[static_cast<std::size_t>(o)]}, 0.0, false, {}};

    DijkstraResult res = dijkstra(g, o);
    if (std::isinf(res.dist[static_cast<std::size_t>(d)])) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "no admissible route from (%.2f, %.2f) to (%.2f, %.2f)",
                      origin.x, origin.y, destination.x, destination.y);
        throw std::runtime_error(buf);
    }

    std::vector<int> chain;
    for (int v = d; v != -1; v = res.pred[static_cast<std::size_t>(v)]) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());

    Route route;
    route.length = res.dist[static_cast<std::size_t>(d)];
    for (std::size_t i = 0; i < chain.size(); ++i) {
        route.waypoints.push_back(g.pos[static_cast<std::size_t>(chain[i])]);
        if (i + 1 < chain.size()) {
            const GEdge& e = res.pred_edge[static_cast<std::size_t>(chain[i + 1])];
            if (e.kind != WalkEdgeKind::sidewalk)
                route.crossings.push_back({static_cast<int>(i), e.crosswalk, e.road});
        }
    }
    route.involves_crossing = !route.crossings.empty();
    return route;
}

NearestCrosswalkResult nearest_crosswalk(const RoadNetwork& net, Vec2 position,
                                         bool signalized_only) {
    Graph g = base_graph(net, true);
    int s = attach_point(net, g, position);
    DijkstraResult res = dijkstra(g, s);
    NearestCrosswalkResult best;
    for (const auto& cw : net.crosswalks) {
        if (signalized_only && !cw.signalized) continue;
        double d = std::min(res.dist[static_cast<std::size_t>(cw.end_a_node)],
                            res.dist[static_cast<std::size_t>(cw.end_b_node)]);
        if (d < best.distance - kEps) {
            best = {cw.id, d};
        }
    }
    return best;
}

std::vector<CrossingLaneRef> crossing_lanes(const RoadNetwork& net, Vec2 curb_point,
                                            double heading_rad) {
    Vec2 hv = heading_vector(heading_rad);
    const double half = net.road_half_width();
    const double outer = half + net.geom.sidewalk_width + kStopLineMargin;
    for (const auto& r : net.roads) {
        double ax = axis_of(r, curb_point);
        double lat = lateral_of_road(r, curb_point);
        if (ax < r.axis_lo - kStopLineMargin || ax > r.axis_hi + kStopLineMargin) continue;
        double across = r.horizontal ? hv.y : hv.x;
        double along = r.horizontal ? hv.x : hv.y;
        if (std::abs(across) <= std::abs(along)) continue;
        if (std::abs(lat) < half - 0.5)
            throw std::invalid_argument("crossing_lanes: point lies inside the road pavement");
        if (std::abs(lat) > outer) continue;
        double side = lat < 0 ? -1.0 : 1.0;
        if (across * side > 0) continue;  // heading away from the road

        std::vector<CrossingLaneRef> result;
        for (const auto& ln : net.lanes) {
            if (ln.road != r.id) continue;
            double lane_lat = lateral_of_road(r, ln.a);
            double near_edge = lane_lat + side * ln.width * 0.5;
            result.push_back({ln.id, -side * near_edge + half});
        }
        std::sort(result.begin(), result.end(),
                  [](const CrossingLaneRef& a, const CrossingLaneRef& b) {
                      return a.entry_offset < b.entry_offset;
                  });
        return result;
    }
    throw std::invalid_argument("crossing_lanes: point is not adjacent to a road");
}

}  // namespace iwc
