#include "cellplan/dimensioning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cellplan {

double cell_area(double cell_range_m) {
    if (!(cell_range_m > 0.0))
        throw std::invalid_argument("cell_range_m must be positive");
    return 1.5 * std::sqrt(3.0) * cell_range_m * cell_range_m;
}

std::int64_t coverage_cell_count(double total_area_m2, const CellParams& params) {
    if (!(total_area_m2 > 0.0))
        throw std::invalid_argument("total_area_m2 must be positive");
    const double cells = total_area_m2 / cell_area(params.cell_range_m);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(cells)));
}

std::int64_t capacity_cell_count(std::int64_t total_subscribers, const CellParams& params) {
    if (params.subscribers_per_cell < 1)
        throw std::invalid_argument("subscribers_per_cell must be >= 1");
    if (total_subscribers < 0)
        throw std::invalid_argument("total_subscribers must be >= 0");
    const std::int64_t cells =
        (total_subscribers + params.subscribers_per_cell - 1) / params.subscribers_per_cell;
    return std::max<std::int64_t>(1, cells);
}

CellCounts initial_k(const PlanningMap& map, const CellParams& params) {
    CellCounts counts;
    counts.by_coverage = coverage_cell_count(map.area_m2(), params);
    counts.by_capacity = capacity_cell_count(total_load(map), params);
    counts.initial_k = std::max(counts.by_coverage, counts.by_capacity);
    counts.initial_k = std::min(counts.initial_k,
                                static_cast<std::int64_t>(map.node_count()));
    return counts;
}

}  // namespace cellplan
