#pragma once

#include <cstdint>

#include "cellplan/map_model.hpp"

namespace cellplan {

struct CellParams {
    double cell_range_m = 0.0;        // cell radius R
    std::int64_t subscribers_per_cell = 0;
};

struct CellCounts {
    std::int64_t by_coverage = 1;
    std::int64_t by_capacity = 1;
    std::int64_t initial_k = 1;  // max of the two, clamped to the node count
};

// Regular hexagon of circumradius R: (3*sqrt(3)/2) * R^2.
double cell_area(double cell_range_m);

// ceil(total_area / cell_area), at least 1.
std::int64_t coverage_cell_count(double total_area_m2, const CellParams& params);

// ceil(subscribers / subscribers_per_cell), at least 1.
std::int64_t capacity_cell_count(std::int64_t total_subscribers, const CellParams& params);

CellCounts initial_k(const PlanningMap& map, const CellParams& params);

}  // namespace cellplan
