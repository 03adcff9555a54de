#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "iwc/agents.hpp"
#include "iwc/config.hpp"
#include "iwc/decision.hpp"
#include "iwc/rng.hpp"
#include "iwc/scene.hpp"
#include "iwc/ttc.hpp"
#include "iwc/vehicles.hpp"

namespace iwc {

struct CollisionEvent {
    double t = 0.0;
    int ped = -1;
    int veh = -1;
    int lane = -1;
    PedPhase phase = PedPhase::crossing;  // pedestrian phase at impact
    double rel_speed = 0.0;
};

struct PedMetricsRow {
    int ped = -1;
    PedType type = PedType::adult;
    PedTrait trait = PedTrait::average;
    LawObedience law_declared = LawObedience::average;
    LawObedience law_resolved = LawObedience::obedient;
    double wait_time = 0.0;      // summed curbside wait_start -> cross_start intervals
    double min_ttc = kInf;       // smallest adjusted min TTC over cross_start decisions
    double cross_duration = 0.0; // summed cross_start -> cross_end intervals
    int crossings = 0;
    int illegal_crossings = 0;
    double mean_speed = 0.0;  // walked distance over locomotion time
    bool arrived = false;
    bool collided = false;
};

struct Aggregate {
    double mean = 0.0;
    double stdev = 0.0;
    int n = 0;
};

struct MetricsSummary {
    std::vector<PedMetricsRow> rows;
    std::optional<Aggregate> wait_time;       // peds with a completed crossing
    std::optional<Aggregate> min_ttc;         // peds with a finite crossing-decision TTC
    std::optional<Aggregate> cross_duration;  // peds with a completed crossing
    std::optional<Aggregate> walk_speed;      // peds that moved at all
    int collisions = 0;
    int crossings_total = 0;
    int crossings_illegal = 0;
    std::optional<double> illegal_pct;  // absent when nothing was crossed
    int peds_spawned = 0;
    int peds_arrived = 0;
    int peds_collided = 0;
    int peds_active_at_end = 0;
    int vehicles_spawned = 0;
};

struct World {
    ScenarioConfig scenario;
    RoadNetwork net;
    std::uint64_t seed = 0;
    double time = 0.0;
    long step = 0;

    std::vector<PedestrianProfile> ped_profiles;
    std::vector<PedestrianState> ped_states;
    std::vector<double> ped_activation;  // entry time per pedestrian
    std::vector<bool> ped_spawned;
    std::vector<double> ped_move_time;  // time spent in locomotion phases
    std::vector<RngStream> ped_rngs;

    std::vector<Vehicle> vehicles;
    SpawnState spawn_state;
    RngStream vehicle_rng{0, "vehicle-spawn"};
    int vehicles_spawned = 0;

    // Motion over the last committed step, for the swept collision test.
    std::vector<Vec2> prev_ped_pos;
    std::vector<double> prev_veh_s;  // parallel to `vehicles`

    std::vector<PedEvent> events;
    std::vector<CollisionEvent> collisions;
};

struct RunResult {
    MetricsSummary metrics;
    std::vector<PedEvent> events;
    std::vector<CollisionEvent> collisions;
};

/// Builds the initial world: network, population, per-agent streams, schedules.
World make_world(const ScenarioConfig& scenario, std::uint64_t seed);

/// One synchronous tick: spawn, vehicles, pedestrians, collisions, bookkeeping.
void step_world(World& world);

/// Swept circle-vs-rectangle overlap across the last step's motion.
std::vector<CollisionEvent> detect_collisions(const World& world);

/// Per-pedestrian rows plus aggregates; empty aggregates are absent, not zero.
MetricsSummary collect_metrics(const World& world);

/// Full deterministic run; throws std::invalid_argument on config errors.
RunResult run_simulation(const ScenarioConfig& scenario, std::uint64_t seed);

}  // namespace iwc
