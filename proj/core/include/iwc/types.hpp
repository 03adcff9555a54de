#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iwc {

enum class PedType { adult, child, elderly };
enum class PedTrait { aggressive, conservative, average };
enum class LawObedience { obedient, violating, average };
enum class CrossingPattern { one_stage, rolling_gap };
enum class TransitMode { walk, drive, bus, taxi };
enum class TtcMethod { constant, average, dynamic, dynamic_adj, dynamic_adj_noise };
enum class VehType { passenger, bus, bicycle, truck, motorcycle };
enum class TurnIntent { straight, left, right };

inline std::string to_string(PedType v) {
    switch (v) {
        case PedType::adult: return "adult";
        case PedType::child: return "child";
        case PedType::elderly: return "elderly";
    }
    return "?";
}

inline std::string to_string(PedTrait v) {
    switch (v) {
        case PedTrait::aggressive: return "aggressive";
        case PedTrait::conservative: return "conservative";
        case PedTrait::average: return "average";
    }
    return "?";
}

inline std::string to_string(LawObedience v) {
    switch (v) {
        case LawObedience::obedient: return "obedient";
        case LawObedience::violating: return "violating";
        case LawObedience::average: return "average";
    }
    return "?";
}

inline std::string to_string(CrossingPattern v) {
    return v == CrossingPattern::one_stage ? "one_stage" : "rolling_gap";
}

inline std::string to_string(TransitMode v) {
    switch (v) {
        case TransitMode::walk: return "walk";
        case TransitMode::drive: return "drive";
        case TransitMode::bus: return "bus";
        case TransitMode::taxi: return "taxi";
    }
    return "?";
}

inline std::string to_string(TtcMethod v) {
    switch (v) {
        case TtcMethod::constant: return "constant";
        case TtcMethod::average: return "average";
        case TtcMethod::dynamic: return "dynamic";
        case TtcMethod::dynamic_adj: return "dynamic_adj";
        case TtcMethod::dynamic_adj_noise: return "dynamic_adj_noise";
    }
    return "?";
}

inline std::string to_string(VehType v) {
    switch (v) {
        case VehType::passenger: return "passenger";
        case VehType::bus: return "bus";
        case VehType::bicycle: return "bicycle";
        case VehType::truck: return "truck";
        case VehType::motorcycle: return "motorcycle";
    }
    return "?";
}

inline std::string to_string(TurnIntent v) {
    switch (v) {
        case TurnIntent::straight: return "straight";
        case TurnIntent::left: return "left";
        case TurnIntent::right: return "right";
    }
    return "?";
}

inline TtcMethod ttc_method_from_string(std::string_view s) {
    if (s == "constant") return TtcMethod::constant;
    if (s == "average") return TtcMethod::average;
    if (s == "dynamic") return TtcMethod::dynamic;
    if (s == "dynamic_adj") return TtcMethod::dynamic_adj;
    if (s == "dynamic_adj_noise") return TtcMethod::dynamic_adj_noise;
    throw std::invalid_argument("unknown ttc method '" + std::string(s) + "'");
}

inline PedTrait ped_trait_from_string(std::string_view s) {
    if (s == "aggressive") return PedTrait::aggressive;
    if (s == "conservative") return PedTrait::conservative;
    if (s == "average") return PedTrait::average;
    throw std::invalid_argument("unknown trait '" + std::string(s) + "'");
}

inline LawObedience law_from_string(std::string_view s) {
    if (s == "obedient") return LawObedience::obedient;
    if (s == "violating") return LawObedience::violating;
    if (s == "average") return LawObedience::average;
    throw std::invalid_argument("unknown law obedience '" + std::string(s) + "'");
}

inline CrossingPattern pattern_from_string(std::string_view s) {
    if (s == "one_stage") return CrossingPattern::one_stage;
    if (s == "rolling_gap") return CrossingPattern::rolling_gap;
    throw std::invalid_argument("unknown crossing pattern '" + std::string(s) + "'");
}

inline VehType veh_type_from_string(std::string_view s) {
    if (s == "passenger") return VehType::passenger;
    if (s == "bus") return VehType::bus;
    if (s == "bicycle") return VehType::bicycle;
    if (s == "truck") return VehType::truck;
    if (s == "motorcycle") return VehType::motorcycle;
    throw std::invalid_argument("unknown vehicle type '" + std::string(s) + "'");
}

}  // namespace iwc
