#include "cellplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

namespace cellplan {

using nlohmann::json;

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::PAM: return "pam";
        case Algorithm::MPAM: return "mpam";
        case Algorithm::CWNPAM: return "cwn-pam";
    }
    return "?";
}

namespace {

void validate_params(const CellParams& params) {
    if (!(params.cell_range_m > 0.0))
        throw std::invalid_argument("cell_range_m must be positive");
    if (params.subscribers_per_cell < 1)
        throw std::invalid_argument("subscribers_per_cell must be >= 1");
}

// No partition can serve a node whose own load exceeds one cell.
void check_per_node_capacity(const PlanningMap& map, const CellParams& params) {
    for (std::size_t i = 0; i < map.node_count(); ++i) {
        if (map.effective_load()[i] > params.subscribers_per_cell) {
            throw InfeasibleCapacityError(
                "node id=" + std::to_string(map.nodes()[i].id) + " carries load " +
                std::to_string(map.effective_load()[i]) + " > cell capacity " +
                std::to_string(params.subscribers_per_cell));
        }
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Child-split seed keyed by the parent cluster's medoid, so Method II is
// independent of cluster processing order.
std::uint64_t child_seed(std::uint64_t base, std::int64_t medoid_id) {
    return splitmix64(base ^ splitmix64(static_cast<std::uint64_t>(medoid_id) + 1));
}

PlanCluster make_cluster(const PlanningMap& map, std::int64_t medoid_id,
                         std::vector<std::int64_t> members, const CellParams& params) {
    std::sort(members.begin(), members.end());
    PlanCluster c;
    c.medoid_id = medoid_id;
    const auto& mnode = map.nodes()[map.index_of(medoid_id)];
    c.bs_x = mnode.x;
    c.bs_y = mnode.y;
    c.feasibility = check_cluster(map, members, medoid_id, params);
    for (std::int64_t id : members) {
        const std::size_t i = map.index_of(id);
        c.load_sum += map.effective_load()[i];
        c.max_dist_m = std::max(c.max_dist_m, euclidean_dist(map.nodes()[i], mnode));
    }
    c.members = std::move(members);
    return c;
}

double plan_cost(const PlanningMap& map, const std::vector<PlanCluster>& clusters,
                 CostModel cost_model) {
    double cost = 0.0;
    for (const auto& c : clusters) {
        const auto& mnode = map.nodes()[map.index_of(c.medoid_id)];
        for (std::int64_t id : c.members) {
            const std::size_t i = map.index_of(id);
            const double w = cost_model == CostModel::LoadWeighted
                                 ? static_cast<double>(map.effective_load()[i])
                                 : 1.0;
            cost += w * euclidean_dist(map.nodes()[i], mnode);
        }
    }
    return cost;
}

Plan plan_from_clustering(const PlanningMap& map, const std::vector<std::size_t>& subset,
                          const Clustering& clustering, const CellParams& params,
                          const AlgorithmChoice& algorithm, std::uint64_t seed,
                          CostModel cost_model) {
    std::map<std::int64_t, std::vector<std::int64_t>> by_medoid;
    for (std::size_t j = 0; j < subset.size(); ++j) {
        by_medoid[clustering.assignment_medoid[j]].push_back(map.nodes()[subset[j]].id);
    }
    Plan plan;
    plan.algorithm = algorithm;
    plan.params = params;
    plan.seed = seed;
    for (auto& [medoid_id, members] : by_medoid) {
        plan.clusters.push_back(make_cluster(map, medoid_id, std::move(members), params));
    }
    plan.num_base_stations = plan.clusters.size();
    plan.total_cost = plan_cost(map, plan.clusters, cost_model);
    return plan;
}

bool all_feasible(const Plan& plan) {
    return std::all_of(plan.clusters.begin(), plan.clusters.end(),
                       [](const PlanCluster& c) { return c.feasibility.feasible(); });
}

std::vector<std::size_t> whole_map(const PlanningMap& map) {
    std::vector<std::size_t> idx(map.node_count());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
}

// Recursive k=2 split of one infeasible cluster; returns feasible sub-clusters.
void split_until_feasible(const PlanningMap& map, const CellParams& params,
                          std::uint64_t base_seed, const PlanCluster& cluster,
                          std::vector<PlanCluster>& out, std::int64_t& splits) {
    if (cluster.feasibility.feasible()) {
        out.push_back(cluster);
        return;
    }
    if (cluster.members.size() == 1) {
        throw InfeasibleCapacityError("node id=" + std::to_string(cluster.medoid_id) +
                                      " carries load " + std::to_string(cluster.load_sum) +
                                      " > cell capacity " +
                                      std::to_string(params.subscribers_per_cell));
    }
    std::vector<std::size_t> subset;
    subset.reserve(cluster.members.size());
    for (std::int64_t id : cluster.members) subset.push_back(map.index_of(id));

    SwapSearch search(map, subset, CostModel::LoadWeighted);
    const Clustering sub = search.run(2, child_seed(base_seed, cluster.medoid_id));
    ++splits;

    std::map<std::int64_t, std::vector<std::int64_t>> by_medoid;
    for (std::size_t j = 0; j < search.subset().size(); ++j) {
        by_medoid[sub.assignment_medoid[j]].push_back(map.nodes()[search.subset()[j]].id);
    }
    for (auto& [medoid_id, members] : by_medoid) {
        split_until_feasible(map, params, base_seed,
                             make_cluster(map, medoid_id, std::move(members), params), out,
                             splits);
    }
}

}  // namespace

ClusterFeasibility check_cluster(const PlanningMap& map,
                                 const std::vector<std::int64_t>& members,
                                 std::int64_t medoid_id, const CellParams& params) {
    const auto& mnode = map.nodes()[map.index_of(medoid_id)];
    double max_dist = 0.0;
    std::int64_t load_sum = 0;
    for (std::int64_t id : members) {
        const std::size_t i = map.index_of(id);
        max_dist = std::max(max_dist, euclidean_dist(map.nodes()[i], mnode));
        load_sum += map.effective_load()[i];
    }
    ClusterFeasibility f;
    f.coverage_ok = max_dist <= params.cell_range_m;
    f.capacity_ok = load_sum <= params.subscribers_per_cell;
    f.cells_needed_coverage =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                      std::ceil(max_dist / params.cell_range_m)));
    f.cells_needed_capacity = capacity_cell_count(load_sum, params);
    return f;
}

Plan plan_unadjusted(const PlanningMap& map, const CellParams& params,
                     const AlgorithmChoice& algorithm, std::uint64_t seed) {
    validate_params(params);
    const std::size_t n = map.node_count();

    std::size_t k;
    if (algorithm.algorithm == Algorithm::PAM) {
        if (algorithm.explicit_k < 1 || algorithm.explicit_k > n)
            throw std::invalid_argument("pam requires 1 <= k <= node count");
        k = algorithm.explicit_k;
    } else {
        k = static_cast<std::size_t>(initial_k(map, params).initial_k);
    }
    const CostModel cm = algorithm.algorithm == Algorithm::CWNPAM ? CostModel::LoadWeighted
                                                                  : CostModel::Unweighted;
    const Clustering clustering = run_swap_search(map, k, seed, cm);
    return plan_from_clustering(map, whole_map(map), clustering, params, algorithm, seed, cm);
}

Plan plan(const PlanningMap& map, const CellParams& params, const AlgorithmChoice& algorithm,
          std::uint64_t seed) {
    validate_params(params);

    if (algorithm.algorithm == Algorithm::CWNPAM) {
        check_per_node_capacity(map, params);
        if (algorithm.method == AdjustMethod::MethodI) {
            const std::size_t k =
                static_cast<std::size_t>(initial_k(map, params).initial_k);
            Plan p = adjust_method_I(map, params, seed, k);
            p.algorithm = algorithm;
            return p;
        }
        return adjust_method_II(map, params, seed,
                                plan_unadjusted(map, params, algorithm, seed));
    }
    return plan_unadjusted(map, params, algorithm, seed);
}

Plan adjust_method_I(const PlanningMap& map, const CellParams& params, std::uint64_t seed,
                     std::size_t k_current) {
    validate_params(params);
    check_per_node_capacity(map, params);
    const std::size_t n = map.node_count();
    const AlgorithmChoice choice = AlgorithmChoice::cwnpam(AdjustMethod::MethodI);
    for (std::uint64_t round = 0;; ++round) {
        const std::size_t k = std::min(k_current + static_cast<std::size_t>(round), n);
        const Clustering clustering =
            run_swap_search(map, k, seed ^ round, CostModel::LoadWeighted);
        Plan p = plan_from_clustering(map, whole_map(map), clustering, params, choice, seed,
                                      CostModel::LoadWeighted);
        p.adjustment_rounds = static_cast<std::int64_t>(round);
        if (all_feasible(p)) return p;
        if (k == n) {
            // singletons still infeasible; the per-node check should have caught this
            throw InfeasibleCapacityError("k = n still infeasible");
        }
    }
}

Plan adjust_method_II(const PlanningMap& map, const CellParams& params, std::uint64_t seed,
                      const Plan& unadjusted) {
    validate_params(params);
    Plan result = unadjusted;
    result.algorithm = AlgorithmChoice::cwnpam(AdjustMethod::MethodII);
    std::vector<PlanCluster> final_clusters;
    std::int64_t splits = 0;
    for (const auto& cluster : result.clusters) {  // already ascending by medoid id
        // feasibility is re-evaluated under this call's params, never trusted
        split_until_feasible(map, params, seed,
                             make_cluster(map, cluster.medoid_id, cluster.members, params),
                             final_clusters, splits);
    }
    std::sort(final_clusters.begin(), final_clusters.end(),
              [](const PlanCluster& a, const PlanCluster& b) {
                  return a.medoid_id < b.medoid_id;
              });
    result.clusters = std::move(final_clusters);
    result.num_base_stations = result.clusters.size();
    result.total_cost = plan_cost(map, result.clusters, CostModel::LoadWeighted);
    result.adjustment_rounds = unadjusted.adjustment_rounds + splits;
    return result;
}

std::string serialize_plan(const Plan& plan) {
    json doc = json::object();
    doc["algorithm"] = algorithm_name(plan.algorithm.algorithm);
    if (plan.algorithm.algorithm == Algorithm::CWNPAM) {
        doc["method"] = plan.algorithm.method == AdjustMethod::MethodI ? 1 : 2;
    }
    doc["seed"] = plan.seed;
    doc["params"] = {{"cell_range_m", plan.params.cell_range_m},
                     {"subs_per_cell", plan.params.subscribers_per_cell}};
    doc["num_base_stations"] = plan.num_base_stations;
    doc["total_cost"] = plan.total_cost;
    doc["adjustment_rounds"] = plan.adjustment_rounds;
    json clusters = json::array();
    for (const auto& c : plan.clusters) {
        json jc = json::object();
        jc["medoid_id"] = c.medoid_id;
        jc["bs_x"] = c.bs_x;
        jc["bs_y"] = c.bs_y;
        jc["members"] = c.members;
        jc["load_sum"] = c.load_sum;
        jc["max_dist_m"] = c.max_dist_m;
        jc["feasible"] = c.feasibility.feasible();
        clusters.push_back(std::move(jc));
    }
    doc["clusters"] = std::move(clusters);
    return doc.dump();
}

std::vector<std::pair<double, double>> cluster_hull(const PlanningMap& map,
                                                    const std::vector<std::int64_t>& members) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(members.size());
    for (std::int64_t id : members) {
        const auto& n = map.nodes()[map.index_of(id)];
        pts.emplace_back(n.x, n.y);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;

    auto cross = [](const std::pair<double, double>& o, const std::pair<double, double>& a,
                    const std::pair<double, double>& b) {
        return (a.first - o.first) * (b.second - o.second) -
               (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<double, double>> hull(2 * pts.size());
    std::size_t h = 0;
    for (const auto& p : pts) {
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], p) <= 0) --h;
        hull[h++] = p;
    }
    const std::size_t lower = h + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (h >= lower && cross(hull[h - 2], hull[h - 1], *it) <= 0) --h;
        hull[h++] = *it;
    }
    hull.resize(h - 1);
    return hull;
}

}  // namespace cellplan
