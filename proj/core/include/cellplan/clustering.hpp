#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cellplan/map_model.hpp"

namespace cellplan {

enum class CostModel {
    Unweighted,    // sum of member-to-medoid distances
    LoadWeighted,  // each distance weighted by the member's effective load
};

class IterationCapError : public std::runtime_error {
public:
    explicit IterationCapError(const std::string& what) : std::runtime_error(what) {}
};

struct Clustering {
    std::vector<std::int64_t> medoids;               // node ids, ascending
    std::vector<std::int64_t> assignment_medoid;     // per problem point: assigned medoid id
    double cost = 0.0;
    std::int64_t iterations = 0;                     // applied swaps
};

struct SwapCandidate {
    std::int64_t medoid_out = 0;   // node id
    std::int64_t candidate_in = 0; // node id, currently non-medoid
    double resulting_cost = 0.0;
};

struct SearchOptions {
    std::int64_t iteration_cap = 0;          // 0 -> default 10*n*k
    std::size_t distance_matrix_threshold = 2000;  // precompute full matrix below this n
};

double euclidean_dist(const NodeRecord& a, const NodeRecord& b);

// k distinct node ids drawn without replacement from a generator seeded by
// `seed`; the same (subset, k, seed) always yields the same set.
std::vector<std::int64_t> select_initial_medoids(const PlanningMap& map,
                                                 const std::vector<std::size_t>& subset,
                                                 std::size_t k, std::uint64_t seed);
std::vector<std::int64_t> select_initial_medoids(const PlanningMap& map, std::size_t k,
                                                 std::uint64_t seed);

// PAM swap search over a subset of map nodes (indices into map.nodes()).
// Assignment is always by unweighted distance, ties to the lowest medoid id;
// loads enter only through the cost.
class SwapSearch {
public:
    SwapSearch(const PlanningMap& map, std::vector<std::size_t> subset,
               CostModel cost_model, SearchOptions options = {});
    SwapSearch(const PlanningMap& map, CostModel cost_model, SearchOptions options = {});

    // Recomputes assignment and cost from scratch for the given medoid set.
    Clustering assign(const std::vector<std::int64_t>& medoids) const;

    // Best strictly improving swap across all (medoid, non-medoid) pairs, or
    // nullopt at a local optimum. Ties by (medoid_out, candidate_in).
    std::optional<SwapCandidate> best_swap(const Clustering& clustering) const;

    // Steepest-descent loop from a seeded initial medoid set.
    Clustering run(std::size_t k, std::uint64_t seed) const;
    // Same loop from explicit starting medoids.
    Clustering run_from(std::vector<std::int64_t> medoids) const;

    const std::vector<std::size_t>& subset() const { return subset_; }
    std::size_t size() const { return subset_.size(); }
    double distance(std::size_t a, std::size_t b) const;  // positions within the subset

private:
    const PlanningMap& map_;
    std::vector<std::size_t> subset_;   // map node indices, ascending
    CostModel cost_model_;
    SearchOptions options_;
    std::vector<double> dist_matrix_;   // full matrix when size() below threshold
    bool use_matrix_ = false;
};

// Convenience wrapper: whole-map search.
Clustering run_swap_search(const PlanningMap& map, std::size_t k, std::uint64_t seed,
                           CostModel cost_model, SearchOptions options = {});

}  // namespace cellplan
