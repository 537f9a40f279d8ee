#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cellplan/clustering.hpp"
#include "cellplan/dimensioning.hpp"
#include "cellplan/map_model.hpp"

namespace cellplan {

// A node's load alone exceeds the per-cell capacity; no partition can help.
class InfeasibleCapacityError : public std::runtime_error {
public:
    explicit InfeasibleCapacityError(const std::string& what) : std::runtime_error(what) {}
};

enum class Algorithm { PAM, MPAM, CWNPAM };
enum class AdjustMethod { None, MethodI, MethodII };

struct AlgorithmChoice {
    Algorithm algorithm = Algorithm::CWNPAM;
    AdjustMethod method = AdjustMethod::MethodI;  // CWN-PAM only
    std::size_t explicit_k = 0;                   // PAM only

    static AlgorithmChoice pam(std::size_t k) { return {Algorithm::PAM, AdjustMethod::None, k}; }
    static AlgorithmChoice mpam() { return {Algorithm::MPAM, AdjustMethod::None, 0}; }
    static AlgorithmChoice cwnpam(AdjustMethod m) { return {Algorithm::CWNPAM, m, 0}; }
};

struct ClusterFeasibility {
    bool coverage_ok = true;
    bool capacity_ok = true;
    std::int64_t cells_needed_coverage = 1;
    std::int64_t cells_needed_capacity = 1;
    bool feasible() const { return cells_needed_coverage <= 1 && cells_needed_capacity <= 1; }
};

struct PlanCluster {
    std::int64_t medoid_id = 0;
    double bs_x = 0.0;  // base station sits on the medoid node
    double bs_y = 0.0;
    std::vector<std::int64_t> members;  // node ids, ascending, medoid included
    std::int64_t load_sum = 0;
    double max_dist_m = 0.0;
    ClusterFeasibility feasibility;
};

struct Plan {
    AlgorithmChoice algorithm;
    CellParams params;
    std::uint64_t seed = 0;
    std::vector<PlanCluster> clusters;  // sorted by medoid id
    std::size_t num_base_stations = 0;
    double total_cost = 0.0;            // under the algorithm's cost model
    std::int64_t adjustment_rounds = 0;
};

ClusterFeasibility check_cluster(const PlanningMap& map,
                                 const std::vector<std::int64_t>& members,
                                 std::int64_t medoid_id, const CellParams& params);

// Full pipeline: dimensioning (or explicit k), swap search, and for CWN-PAM
// the selected adjustment method. PAM and M-PAM report feasibility without
// enforcing it.
Plan plan(const PlanningMap& map, const CellParams& params, const AlgorithmChoice& algorithm,
          std::uint64_t seed);

// Phases I+II only: dimensioning plus swap search, feasibility reported but
// never enforced, for any algorithm choice.
Plan plan_unadjusted(const PlanningMap& map, const CellParams& params,
                     const AlgorithmChoice& algorithm, std::uint64_t seed);

// Re-clusters the whole map with k+1 per round (fresh seed = base ^ round)
// until every cluster is feasible.
Plan adjust_method_I(const PlanningMap& map, const CellParams& params, std::uint64_t seed,
                     std::size_t k_current);

// Splits each infeasible cluster in isolation (k=2, load-weighted), recursing
// until feasible; feasible clusters are left untouched.
Plan adjust_method_II(const PlanningMap& map, const CellParams& params, std::uint64_t seed,
                      const Plan& unadjusted);

// Canonical JSON serialization; byte-stable for identical inputs.
std::string serialize_plan(const Plan& plan);

// Convex hull of a cluster's member coordinates (monotone chain, CCW), for
// plotting cluster boundaries.
std::vector<std::pair<double, double>> cluster_hull(const PlanningMap& map,
                                                    const std::vector<std::int64_t>& members);

const char* algorithm_name(Algorithm a);

}  // namespace cellplan
