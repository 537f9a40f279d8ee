#include "cellplan/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace cellplan {

double euclidean_dist(const NodeRecord& a, const NodeRecord& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

namespace {

std::vector<std::size_t> all_indices(const PlanningMap& map) {
    std::vector<std::size_t> idx(map.node_count());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

// Bounded draw from a seeded generator; modulo is fine for reproducibility,
// the distribution only needs to be fixed, not perfect.
std::size_t draw_below(std::mt19937_64& rng, std::size_t bound) {
    return static_cast<std::size_t>(rng() % bound);
}

}  // namespace

std::vector<std::int64_t> select_initial_medoids(const PlanningMap& map,
                                                 const std::vector<std::size_t>& subset,
                                                 std::size_t k, std::uint64_t seed) {
    if (k < 1 || k > subset.size())
        throw std::invalid_argument("k out of range: k=" + std::to_string(k) +
                                    ", n=" + std::to_string(subset.size()));
    std::vector<std::size_t> pool = subset;
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> medoids;
    medoids.reserve(k);
    // partial Fisher-Yates
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + draw_below(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
        medoids.push_back(map.nodes()[pool[i]].id);
    }
    std::sort(medoids.begin(), medoids.end());
    return medoids;
}

std::vector<std::int64_t> select_initial_medoids(const PlanningMap& map, std::size_t k,
                                                 std::uint64_t seed) {
    return select_initial_medoids(map, all_indices(map), k, seed);
}

SwapSearch::SwapSearch(const PlanningMap& map, std::vector<std::size_t> subset,
                       CostModel cost_model, SearchOptions options)
    : map_(map), subset_(std::move(subset)), cost_model_(cost_model), options_(options) {
    std::sort(subset_.begin(), subset_.end());
    subset_.erase(std::unique(subset_.begin(), subset_.end()), subset_.end());
    if (subset_.empty()) throw std::invalid_argument("empty node subset");
    const std::size_t n = subset_.size();
    use_matrix_ = n < options_.distance_matrix_threshold;
    if (use_matrix_) {
        dist_matrix_.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double d =
                    euclidean_dist(map_.nodes()[subset_[i]], map_.nodes()[subset_[j]]);
                dist_matrix_[i * n + j] = d;
                dist_matrix_[j * n + i] = d;
            }
        }
    }
}

SwapSearch::SwapSearch(const PlanningMap& map, CostModel cost_model, SearchOptions options)
    : SwapSearch(map, all_indices(map), cost_model, options) {}

double SwapSearch::distance(std::size_t a, std::size_t b) const {
    if (use_matrix_) return dist_matrix_[a * subset_.size() + b];
    return euclidean_dist(map_.nodes()[subset_[a]], map_.nodes()[subset_[b]]);
}

Clustering SwapSearch::assign(const std::vector<std::int64_t>& medoids) const {
    if (medoids.empty()) throw std::invalid_argument("empty medoid set");
    const std::size_t n = subset_.size();
    // medoid positions within the subset, ascending id
    std::vector<std::size_t> mpos;
    mpos.reserve(medoids.size());
    for (std::int64_t id : medoids) {
        const std::size_t map_idx = map_.index_of(id);
        const auto it = std::lower_bound(subset_.begin(), subset_.end(), map_idx);
        if (it == subset_.end() || *it != map_idx)
            throw std::invalid_argument("medoid id=" + std::to_string(id) + " not in subset");
        mpos.push_back(static_cast<std::size_t>(it - subset_.begin()));
    }

    Clustering result;
    result.medoids = medoids;
    result.assignment_medoid.resize(n);
    double cost = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double best = std::numeric_limits<double>::infinity();
        std::int64_t best_id = -1;
        bool is_medoid = false;
        for (std::size_t m = 0; m < mpos.size(); ++m) {
            if (mpos[m] == j) {
                is_medoid = true;
                best = 0.0;
                best_id = medoids[m];
                break;
            }
            const double d = distance(j, mpos[m]);
            if (d < best) {  // medoids ascend by id, so ties keep the lowest id
                best = d;
                best_id = medoids[m];
            }
        }
        result.assignment_medoid[j] = best_id;
        if (!is_medoid) {
            const double w = cost_model_ == CostModel::LoadWeighted
                                 ? static_cast<double>(map_.effective_load()[subset_[j]])
                                 : 1.0;
            cost += w * best;
        }
    }
    result.cost = cost;
    return result;
}

std::optional<SwapCandidate> SwapSearch::best_swap(const Clustering& clustering) const {
    const std::size_t n = subset_.size();
    const auto& medoids = clustering.medoids;
    if (medoids.size() >= n) return std::nullopt;  // no non-medoid candidates

    std::vector<std::size_t> mpos(medoids.size());
    std::vector<bool> is_medoid(n, false);
    for (std::size_t m = 0; m < medoids.size(); ++m) {
        const std::size_t map_idx = map_.index_of(medoids[m]);
        mpos[m] = static_cast<std::size_t>(
            std::lower_bound(subset_.begin(), subset_.end(), map_idx) - subset_.begin());
        is_medoid[mpos[m]] = true;
    }

    // nearest / second-nearest medoid distance per point
    std::vector<double> d1(n), d2(n);
    std::vector<std::size_t> near_m(n);  // index into mpos of nearest medoid
    std::vector<double> weight(n);
    for (std::size_t j = 0; j < n; ++j) {
        double b1 = std::numeric_limits<double>::infinity();
        double b2 = b1;
        std::size_t bm = 0;
        for (std::size_t m = 0; m < mpos.size(); ++m) {
            const double d = mpos[m] == j ? 0.0 : distance(j, mpos[m]);
            if (d < b1) {
                b2 = b1;
                b1 = d;
                bm = m;
            } else if (d < b2) {
                b2 = d;
            }
        }
        d1[j] = b1;
        d2[j] = b2;
        near_m[j] = bm;
        weight[j] = cost_model_ == CostModel::LoadWeighted
                        ? static_cast<double>(map_.effective_load()[subset_[j]])
                        : 1.0;
    }

    std::optional<SwapCandidate> best;
    // lexicographic scan by (medoid_out, candidate_in); strict < keeps the
    // first of equal-cost swaps
    for (std::size_t m = 0; m < mpos.size(); ++m) {
        for (std::size_t h = 0; h < n; ++h) {
            if (is_medoid[h]) continue;
            // row pointer keeps the innermost loop sequential in memory
            const double* row_h = use_matrix_ ? &dist_matrix_[h * n] : nullptr;
            double cost = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double dh = row_h ? row_h[j] : (j == h ? 0.0 : distance(j, h));
                const double d = near_m[j] == m ? std::min(d2[j], dh) : std::min(d1[j], dh);
                cost += weight[j] * d;
            }
            if (!best || cost < best->resulting_cost) {
                best = SwapCandidate{medoids[m], map_.nodes()[subset_[h]].id, cost};
            }
        }
    }
    if (!best || !(best->resulting_cost < clustering.cost)) return std::nullopt;
    return best;
}

Clustering SwapSearch::run_from(std::vector<std::int64_t> medoids) const {
    std::sort(medoids.begin(), medoids.end());
    Clustering current = assign(medoids);
    const std::size_t k = medoids.size();
    const std::int64_t cap = options_.iteration_cap > 0
                                 ? options_.iteration_cap
                                 : static_cast<std::int64_t>(10 * subset_.size() * k);
    while (true) {
        auto cand = best_swap(current);
        if (!cand) break;
        auto next_medoids = current.medoids;
        *std::find(next_medoids.begin(), next_medoids.end(), cand->medoid_out) =
            cand->candidate_in;
        std::sort(next_medoids.begin(), next_medoids.end());
        Clustering next = assign(next_medoids);
        if (!(next.cost < current.cost)) break;  // guards against fp round-off loops
        next.iterations = current.iterations + 1;
        current = std::move(next);
        if (current.iterations > cap) {
            throw IterationCapError("swap search exceeded iteration cap " +
                                    std::to_string(cap));
        }
    }
    return current;
}

Clustering SwapSearch::run(std::size_t k, std::uint64_t seed) const {
    return run_from(select_initial_medoids(map_, subset_, k, seed));
}

Clustering run_swap_search(const PlanningMap& map, std::size_t k, std::uint64_t seed,
                           CostModel cost_model, SearchOptions options) {
    return SwapSearch(map, cost_model, options).run(k, seed);
}

}  // namespace cellplan
