#pragma once

#include <cstdint>

#include "cellplan/map_model.hpp"

namespace cellplan {

enum class DensityMode { Homogeneous, Heterogeneous };

struct SyntheticSpec {
    std::size_t node_count = 0;
    std::int64_t target_total_subscribers = 0;
    double target_area_m2 = 0.0;
    DensityMode density_mode = DensityMode::Homogeneous;
    std::size_t hotspot_count = 0;     // Heterogeneous only
    double hotspot_share = 0.6;        // fraction of total load on the hotspots
    std::uint64_t seed = 0;
};

// Nodes placed uniformly in a square of the target area; loads drawn randomly
// and rescaled by largest-remainder rounding so the total matches the spec
// exactly. Deterministic per seed.
PlanningMap generate_map(const SyntheticSpec& spec);

}  // namespace cellplan
