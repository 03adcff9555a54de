#include "iwc/agents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iwc {
namespace {

double mean_speed_for(PedType type, const PedestrianConfig& cfg) {
    switch (type) {
        case PedType::adult: return cfg.mean_speed_adult;
        case PedType::child: return cfg.mean_speed_child;
        case PedType::elderly: return cfg.mean_speed_elderly;
    }
    throw std::invalid_argument("unknown pedestrian type");
}

/// Picks the category whose cumulative percentage bin contains u (in [0,100)).
template <typename T, std::size_t N>
T pick_categorical(const std::array<std::pair<T, double>, N>& bins, double u) {
    double acc = 0.0;
    for (const auto& [value, pct] : bins) {
        acc += pct;
        if (u < acc) return value;
    }
    return bins.back().first;
}

void require_pct_sum(double sum, const char* what) {
    if (std::abs(sum - 100.0) > 1e-9)
        throw std::invalid_argument(std::string(what) + " must sum to 100");
}

}  // namespace

double sample_walking_speed(PedType type, PedTrait trait, const PedestrianConfig& cfg,
                            RngStream& rng) {
    double mu = mean_speed_for(type, cfg);
    double alpha = 0.0;
    if (trait == PedTrait::aggressive) alpha = mu;
    if (trait == PedTrait::conservative) alpha = -mu;
    double v = rng.skew_normal(mu, cfg.speed_stddev, alpha);
    return std::max(v, 1e-3);
}

double sample_gap_acceptance(PedTrait trait, Range gap_range, RngStream& rng) {
    if (!(gap_range.min < gap_range.max))
        throw std::invalid_argument("gap_range.min < gap_range.max required");
    double mid = gap_range.midpoint();
    double scale = gap_range.width() / 4.0;
    double alpha = 0.0;
    if (trait == PedTrait::aggressive) alpha = -mid;
    if (trait == PedTrait::conservative) alpha = mid;
    double g = rng.skew_normal(mid, scale, alpha);
    return std::clamp(g, gap_range.min, gap_range.max);
}

double sample_perceptual_noise(RngStream& rng) { return rng.normal(); }

std::vector<PedestrianProfile> generate_population(const ScenarioConfig& cfg, RngStream& rng) {
    const auto& p = cfg.pedestrians;
    require_pct_sum(p.trait_conservative_pct + p.trait_aggressive_pct + p.trait_average_pct,
                    "trait percentages");
    require_pct_sum(p.law_violating_pct + p.law_obedient_pct + p.law_average_pct,
                    "law-obedience percentages");
    require_pct_sum(p.type_adult_pct + p.type_child_pct + p.type_elderly_pct,
                    "type percentages");

    std::array<std::pair<PedType, double>, 3> type_bins{{{PedType::adult, p.type_adult_pct},
                                                         {PedType::child, p.type_child_pct},
                                                         {PedType::elderly, p.type_elderly_pct}}};
    std::array<std::pair<PedTrait, double>, 3> trait_bins{
        {{PedTrait::conservative, p.trait_conservative_pct},
         {PedTrait::aggressive, p.trait_aggressive_pct},
         {PedTrait::average, p.trait_average_pct}}};
    std::array<std::pair<LawObedience, double>, 3> law_bins{
        {{LawObedience::violating, p.law_violating_pct},
         {LawObedience::obedient, p.law_obedient_pct},
         {LawObedience::average, p.law_average_pct}}};

    std::vector<PedestrianProfile> out;
    out.reserve(static_cast<std::size_t>(p.count));
    for (int i = 0; i < p.count; ++i) {
        PedestrianProfile prof;
        prof.id = i;
        prof.type = pick_categorical(type_bins, rng.uniform(0.0, 100.0));
        prof.trait = pick_categorical(trait_bins, rng.uniform(0.0, 100.0));
        prof.law = pick_categorical(law_bins, rng.uniform(0.0, 100.0));
        prof.speed = sample_walking_speed(prof.type, prof.trait, p, rng);
        prof.gap = sample_gap_acceptance(prof.trait, p.gap_range, rng);
        prof.p_noise = sample_perceptual_noise(rng);
        prof.th_dist_c = rng.uniform(p.dist_c_range.min, p.dist_c_range.max);
        prof.pattern = rng.uniform(0.0, 100.0) < p.one_stage_pct ? CrossingPattern::one_stage
                                                                 : CrossingPattern::rolling_gap;
        prof.go_around_blocking = rng.uniform(0.0, 100.0) < p.go_around_blocking_pct;
        prof.requires_crossing = rng.uniform(0.0, 100.0) < p.crossing_pct;
        prof.body_radius =
            p.body_radius_adult * (prof.type == PedType::child ? p.child_scale : 1.0);
        out.push_back(prof);
    }
    return out;
}

LawObedience resolve_law_obedience(const PedestrianProfile& profile, double dist_c) {
    if (dist_c < 0) throw std::invalid_argument("dist_c must be >= 0");
    switch (profile.law) {
        case LawObedience::obedient: return LawObedience::obedient;
        case LawObedience::violating: return LawObedience::violating;
        case LawObedience::average:
            return dist_c < profile.th_dist_c ? LawObedience::obedient : LawObedience::violating;
    }
    return LawObedience::obedient;
}

}  // namespace iwc
