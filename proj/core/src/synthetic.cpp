#include "cellplan/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace cellplan {

namespace {

double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Integer loads summing exactly to `total`, proportional to `weights`
// (largest-remainder rounding, ties to the lower index).
std::vector<std::int64_t> apportion(const std::vector<double>& weights, std::int64_t total) {
    const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<std::int64_t> loads(weights.size(), 0);
    if (total == 0 || wsum <= 0.0) return loads;

    std::vector<std::pair<double, std::size_t>> fracs;  // (-frac, index)
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double quota = static_cast<double>(total) * weights[i] / wsum;
        loads[i] = static_cast<std::int64_t>(std::floor(quota));
        assigned += loads[i];
        fracs.emplace_back(-(quota - std::floor(quota)), i);
    }
    std::sort(fracs.begin(), fracs.end());
    for (std::int64_t r = 0; r < total - assigned; ++r) {
        loads[fracs[static_cast<std::size_t>(r) % fracs.size()].second] += 1;
    }
    return loads;
}

}  // namespace

PlanningMap generate_map(const SyntheticSpec& spec) {
    if (spec.node_count < 1) throw std::invalid_argument("node_count must be >= 1");
    if (spec.target_total_subscribers < 0)
        throw std::invalid_argument("target_total_subscribers must be >= 0");
    if (!(spec.target_area_m2 > 0.0))
        throw std::invalid_argument("target_area_m2 must be positive");
    if (spec.density_mode == DensityMode::Heterogeneous) {
        if (spec.hotspot_count < 1 || spec.hotspot_count > spec.node_count)
            throw std::invalid_argument("hotspot_count out of range");
        if (!(spec.hotspot_share > 0.0) || !(spec.hotspot_share < 1.0))
            throw std::invalid_argument("hotspot_share must be in (0,1)");
    }

    std::mt19937_64 rng(spec.seed);
    const double side = std::sqrt(spec.target_area_m2);
    const std::size_t n = spec.node_count;

    std::vector<NodeRecord> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i].id = static_cast<std::int64_t>(i);
        nodes[i].x = unit_double(rng) * side;
        nodes[i].y = unit_double(rng) * side;
    }

    std::vector<double> weights(n);
    for (auto& w : weights) w = 1.0 + unit_double(rng);

    std::vector<std::int64_t> loads;
    if (spec.density_mode == DensityMode::Homogeneous || n == spec.hotspot_count) {
        loads = apportion(weights, spec.target_total_subscribers);
    } else {
        // pick hotspot nodes, then apportion the two load pools separately
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = 0; i < spec.hotspot_count; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
            std::swap(order[i], order[j]);
        }
        const std::int64_t hot_total = static_cast<std::int64_t>(
            std::llround(spec.hotspot_share *
                         static_cast<double>(spec.target_total_subscribers)));
        std::vector<double> hot_w(spec.hotspot_count), cold_w(n - spec.hotspot_count);
        for (std::size_t i = 0; i < spec.hotspot_count; ++i) hot_w[i] = weights[order[i]];
        for (std::size_t i = spec.hotspot_count; i < n; ++i)
            cold_w[i - spec.hotspot_count] = weights[order[i]];
        const auto hot_loads = apportion(hot_w, hot_total);
        const auto cold_loads =
            apportion(cold_w, spec.target_total_subscribers - hot_total);
        loads.assign(n, 0);
        for (std::size_t i = 0; i < spec.hotspot_count; ++i)
            loads[order[i]] = hot_loads[i];
        for (std::size_t i = spec.hotspot_count; i < n; ++i)
            loads[order[i]] = cold_loads[i - spec.hotspot_count];
    }
    for (std::size_t i = 0; i < n; ++i) nodes[i].load = loads[i];

    return PlanningMap(std::move(nodes), {}, spec.target_area_m2);
}

}  // namespace cellplan
