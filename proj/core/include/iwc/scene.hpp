#pragma once

#include <string>
#include <vector>

#include "iwc/config.hpp"
#include "iwc/geometry.hpp"
#include "iwc/types.hpp"

namespace iwc {

inline constexpr double kCrosswalkHalfWidth = 1.5;  // painted band half width, m
inline constexpr double kStopLineMargin = 0.5;      // gap between stop line and band, m
inline constexpr double kIntersectionMargin = 1.0;  // stop-line setback from the box, m

enum class SignalPhase { vehicle_green, clearance, pedestrian_green };

struct Lane {
    int id = -1;
    int road = -1;
    int index = 0;  // 0 = nearest curb
    double width = 0.0;
    double speed_limit = 0.0;
    Vec2 a, b;  // centerline, travel direction a -> b

    Vec2 dir() const { return (b - a).normalized(); }
    double length() const { return distance(a, b); }
    double heading() const { return std::atan2(b.y - a.y, b.x - a.x); }
    Vec2 point_at(double s) const { return a + dir() * s; }
    /// Unclamped arc position of p projected onto the centerline.
    double s_of(Vec2 p) const { return (p - a).dot(dir()); }
    /// Signed lateral offset of p from the centerline (+ = left of travel).
    double lateral_of(Vec2 p) const { return dir().cross(p - a); }
};

struct StopLine {
    double s = 0.0;       // lane arc position of the vehicle front at rest
    int controller = -1;  // signal controller holding this line
};

struct Crosswalk {
    int id = -1;
    int road = -1;
    double axis_pos = 0.0;  // position along the road axis
    Vec2 end_a, end_b;      // sidewalk-centerline endpoints
    bool signalized = false;
    bool scramble = false;  // central crosswalk: holds every approach of both roads
    int controller = -1;
    std::vector<int> lanes;  // spanned lane ids
    int end_a_node = -1;     // walk-graph node ids of the two ends
    int end_b_node = -1;

    double length() const { return distance(end_a, end_b); }
};

struct SignalController {
    int id = -1;
    SignalConfig timing;
};

enum class WalkEdgeKind { sidewalk, crosswalk, jaywalk };

struct WalkNode {
    int id = -1;
    Vec2 pos;
};

struct WalkEdge {
    int a = -1;
    int b = -1;
    double length = 0.0;
    WalkEdgeKind kind = WalkEdgeKind::sidewalk;
    int crosswalk = -1;  // kind == crosswalk
    int road = -1;       // road being crossed, for crosswalk/jaywalk edges
};

struct SidewalkLine {
    int road = -1;
    double lateral = 0.0;  // signed offset of the line from the road axis
    Vec2 a, b;
    std::vector<int> stations;  // walk node ids in order along the line
};

struct RouteCrossing {
    int start_index = 0;  // waypoints[start_index] -> [start_index + 1] crosses a road
    int crosswalk = -1;   // -1 = jaywalk
    int road = -1;
};

struct Route {
    std::vector<Vec2> waypoints;
    double length = 0.0;
    bool involves_crossing = false;
    std::vector<RouteCrossing> crossings;
};

struct NearestCrosswalkResult {
    int crosswalk = -1;  // -1 = none reachable
    double distance = kInf;
};

struct CrossingLaneRef {
    int lane = -1;
    double entry_offset = 0.0;  // distance from the curb to the lane's near edge, m
};

struct RoadDef {
    int id = -1;
    bool horizontal = true;
    double axis_lo = 0.0, axis_hi = 0.0;  // extent along the road axis
    double half_width = 0.0;              // pavement half width
    double cross_pos = 0.0;               // crossing-road position along this axis
    bool has_crossing = false;
};

struct RoadNetwork {
    GeometryConfig geom;
    SignalConfig signal_timing;
    std::vector<Vec2> nodes;
    std::vector<RoadDef> roads;
    std::vector<Lane> lanes;
    std::vector<Crosswalk> crosswalks;
    std::vector<SignalController> signals;
    std::vector<std::vector<StopLine>> lane_stop_lines;  // per lane, sorted by s

    std::vector<WalkNode> walk_nodes;
    std::vector<WalkEdge> walk_edges;
    std::vector<SidewalkLine> sidewalk_lines;
    std::vector<int> node_component;  // component of the crossing-free graph
    int component_count = 0;

    Vec2 intersection_center{0, 0};
    bool has_intersection = false;

    double corner_offset() const {
        return geom.lanes_per_direction * geom.lane_width + geom.sidewalk_width * 0.5;
    }
    double road_half_width() const { return geom.lanes_per_direction * geom.lane_width; }
    double crossing_length() const { return 2.0 * corner_offset(); }

    const Lane& lane(int id) const { return lanes.at(static_cast<std::size_t>(id)); }

    /// Total walkable sidewalk length (for uniform point sampling).
    double total_sidewalk_length() const;
    /// Point at arc position along the concatenated sidewalk lines.
    Vec2 sidewalk_point_at(double arc) const;
    /// Component of the nearest sidewalk line to p.
    int component_of(Vec2 p) const;
    /// Uniform point over the sidewalk lines of one component; u in [0, 1).
    Vec2 point_in_component(int component, double u) const;
    /// Sidewalk length per component.
    const std::vector<double>& component_lengths() const { return component_length_; }

    std::vector<double> line_cumlen_;  // filled by build_grid_network
    std::vector<double> component_length_;
    std::vector<int> line_component_;
};

/// Builds the axis-aligned grid network with sidewalks, crosswalks and signals.
RoadNetwork build_grid_network(const GeometryConfig& geom, const SignalConfig& signal = {});

/// Signal phase of a controller at simulation time t (pure, periodic).
SignalPhase signal_state(const SignalController& ctrl, double t);
SignalPhase signal_state(const RoadNetwork& net, int controller, double t);

/// Minimal-length walking route; law status decides whether jaywalk segments
/// are admissible. Ties broken by fewest crossings, then deterministic order.
/// Throws std::runtime_error when no admissible route exists.
Route shortest_path(const RoadNetwork& net, Vec2 origin, Vec2 destination, LawObedience law);

/// Closest crosswalk by walking distance within the position's sidewalk
/// component; ties by lowest id. crosswalk == -1 when none reachable.
NearestCrosswalkResult nearest_crosswalk(const RoadNetwork& net, Vec2 position,
                                         bool signalized_only);

/// Lanes a crossing starting at a curb point with the given heading traverses,
/// ordered nearest to farthest, with entry offsets from the curb.
/// Throws std::invalid_argument if the point is not adjacent to a road.
std::vector<CrossingLaneRef> crossing_lanes(const RoadNetwork& net, Vec2 curb_point,
                                            double heading_rad);

}  // namespace iwc
