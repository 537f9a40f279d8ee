#include <doctest.h>

#include <random>
#include <set>

#include "cellplan/planner.hpp"
#include "test_util.hpp"

using namespace cellplan;

namespace {

// two groups of three nodes each, far enough apart that one cell can never
// cover both
cellplan::PlanningMap two_blob_map(std::int64_t load_per_node = 10) {
    std::vector<oracle::Point> pts;
    for (int i = 0; i < 3; ++i)
        pts.push_back({i, 50.0 * i, 0.0, load_per_node});
    for (int i = 0; i < 3; ++i)
        pts.push_back({10 + i, 10000.0 + 50.0 * i, 0.0, load_per_node});
    return testutil::to_map(pts, 1e5);
}

void check_partition(const PlanningMap& map, const Plan& p) {
    std::set<std::int64_t> seen;
    for (const auto& c : p.clusters) {
        bool medoid_in_members = false;
        for (std::int64_t id : c.members) {
            CHECK(seen.insert(id).second);
            if (id == c.medoid_id) medoid_in_members = true;
        }
        CHECK(medoid_in_members);
    }
    CHECK(seen.size() == map.node_count());
}

}  // namespace

TEST_CASE("check_cluster") {
    const CellParams params{1000.0, 600};
    SUBCASE("singleton within capacity is feasible") {
        const auto map = testutil::line_map({500});
        const auto f = check_cluster(map, {0}, 0, params);
        CHECK(f.feasible());
        CHECK(f.cells_needed_coverage == 1);
        CHECK(f.cells_needed_capacity == 1);
    }
    SUBCASE("member just beyond the cell range breaks coverage") {
        std::vector<oracle::Point> pts{{0, 0, 0, 1}, {1, 1010.0, 0, 1}};
        const auto map = testutil::to_map(pts);
        const auto f = check_cluster(map, {0, 1}, 0, params);
        CHECK_FALSE(f.coverage_ok);
        CHECK_FALSE(f.feasible());
    }
    SUBCASE("loads 300+301 against capacity 600 need two cells") {
        std::vector<oracle::Point> pts{{0, 0, 0, 300}, {1, 10, 0, 301}};
        const auto map = testutil::to_map(pts);
        const auto f = check_cluster(map, {0, 1}, 0, params);
        CHECK(f.cells_needed_capacity == 2);
        CHECK_FALSE(f.feasible());
    }
}

TEST_CASE("plan on a single node") {
    const auto map = testutil::line_map({5});
    const auto p = plan(map, CellParams{1000.0, 600},
                        AlgorithmChoice::cwnpam(AdjustMethod::MethodI), 1);
    CHECK(p.num_base_stations == 1);
    CHECK(p.clusters[0].medoid_id == 0);
    CHECK(p.clusters[0].bs_x == 0.0);
    CHECK(p.total_cost == 0.0);
    CHECK(p.adjustment_rounds == 0);
}

TEST_CASE("uniform loads: cwn-pam and m-pam agree per seed") {
    std::mt19937_64 rng(4);
    auto pts = oracle::random_points(rng, 30, 500.0);
    for (auto& p : pts) p.load = 5;
    const auto map = testutil::to_map(pts, 1e6);
    const CellParams params{5000.0, 1000};  // generous, no adjustment kicks in
    const auto a = plan(map, params, AlgorithmChoice::cwnpam(AdjustMethod::MethodI), 9);
    const auto b = plan(map, params, AlgorithmChoice::mpam(), 9);
    REQUIRE(a.num_base_stations == b.num_base_stations);
    for (std::size_t i = 0; i < a.clusters.size(); ++i) {
        CHECK(a.clusters[i].medoid_id == b.clusters[i].medoid_id);
        CHECK(a.clusters[i].members == b.clusters[i].members);
    }
}

TEST_CASE("a single overloaded node is reported as infeasible") {
    const auto map = testutil::line_map({10, 6000, 10});
    CHECK_THROWS_WITH_AS(
        plan(map, CellParams{1000.0, 600}, AlgorithmChoice::cwnpam(AdjustMethod::MethodII), 1),
        doctest::Contains("node id=1"), InfeasibleCapacityError);
}

TEST_CASE("pam requires a valid explicit k") {
    const auto map = testutil::line_map({1, 1, 1});
    CHECK_THROWS_AS(plan(map, CellParams{10.0, 10}, AlgorithmChoice::pam(0), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(plan(map, CellParams{10.0, 10}, AlgorithmChoice::pam(4), 1),
                    std::invalid_argument);
    const auto p = plan(map, CellParams{10.0, 10}, AlgorithmChoice::pam(2), 1);
    CHECK(p.num_base_stations == 2);
}

TEST_CASE("pam and m-pam report infeasibility without repairing it") {
    const auto map = two_blob_map();
    const CellParams params{1000.0, 600};  // blobs 10 km apart, one cell can't cover
    const auto p = plan(map, params, AlgorithmChoice::mpam(), 1);
    CHECK(p.num_base_stations == 1);  // dimensioning says one cell is enough
    CHECK_FALSE(p.clusters[0].feasibility.coverage_ok);
}

TEST_CASE("method I grows k until both blobs get a base station") {
    const auto map = two_blob_map();
    const CellParams params{1000.0, 600};
    const auto p = plan(map, params, AlgorithmChoice::cwnpam(AdjustMethod::MethodI), 1);
    CHECK(p.num_base_stations == 2);
    CHECK(p.adjustment_rounds == 1);
    for (const auto& c : p.clusters) {
        CHECK(c.feasibility.feasible());
        CHECK(c.members.size() == 3);
        // members stay within one blob
        const bool left = c.medoid_id < 10;
        for (auto id : c.members) CHECK((id < 10) == left);
    }
    check_partition(map, p);
}

TEST_CASE("method I on an already-feasible map returns zero rounds") {
    const auto map = testutil::line_map({5, 5, 5});
    const auto p = adjust_method_I(map, CellParams{100.0, 600}, 3, 1);
    CHECK(p.adjustment_rounds == 0);
    CHECK(p.num_base_stations == 1);
}

TEST_CASE("method II splits only the infeasible cluster") {
    // left cluster: 4 nodes x 200 load (800 > 600, splittable 2+2);
    // right cluster: 2 light nodes, feasible from the start
    std::vector<oracle::Point> pts{
        {0, 0, 0, 200},   {1, 10, 0, 200},   {2, 400, 0, 200}, {3, 410, 0, 200},
        {10, 9000, 0, 50}, {11, 9010, 0, 50},
    };
    const auto map = testutil::to_map(pts, 1e6);
    const CellParams params{1000.0, 600};

    // build the unenforced two-cluster plan, then adjust
    const auto before =
        plan_unadjusted(map, params, AlgorithmChoice::cwnpam(AdjustMethod::MethodII), 2);
    REQUIRE(before.num_base_stations == 2);
    const auto& feasible_before =
        before.clusters[0].feasibility.feasible() ? before.clusters[0] : before.clusters[1];
    REQUIRE(feasible_before.members == std::vector<std::int64_t>{10, 11});

    const auto after = adjust_method_II(map, params, 2, before);
    CHECK(after.num_base_stations == 3);
    for (const auto& c : after.clusters) CHECK(c.feasibility.feasible());
    check_partition(map, after);
    // the feasible cluster is untouched
    bool found = false;
    for (const auto& c : after.clusters) {
        if (c.medoid_id == feasible_before.medoid_id) {
            found = true;
            CHECK(c.members == feasible_before.members);
        }
    }
    CHECK(found);
}

TEST_CASE("method II on an all-feasible plan is the identity") {
    const auto map = two_blob_map();
    const CellParams params{1000.0, 600};
    const auto before = plan(map, params, AlgorithmChoice::cwnpam(AdjustMethod::MethodI), 1);
    const auto after = adjust_method_II(map, params, 1, before);
    CHECK(after.num_base_stations == before.num_base_stations);
    CHECK(after.adjustment_rounds == before.adjustment_rounds);
    CHECK(serialize_plan(after).size() > 0);
}

TEST_CASE("randomized plans always partition the nodes and never lose BS count") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const auto pts = oracle::random_points(rng, 20 + rng() % 40, 3000.0, 30);
        const auto map = testutil::to_map(pts, 1e6);
        const CellParams params{900.0, 200};
        for (auto method : {AdjustMethod::MethodI, AdjustMethod::MethodII}) {
            const auto before =
                plan_unadjusted(map, params, AlgorithmChoice::cwnpam(method), trial);
            const auto after = plan(map, params, AlgorithmChoice::cwnpam(method), trial);
            check_partition(map, after);
            CHECK(after.num_base_stations >= before.num_base_stations);
            for (const auto& c : after.clusters) CHECK(c.feasibility.feasible());
        }
    }
}

TEST_CASE("plan serialization is deterministic") {
    std::mt19937_64 rng(31);
    const auto map = testutil::to_map(oracle::random_points(rng, 25, 2000.0), 1e6);
    const CellParams params{800.0, 300};
    const auto a = plan(map, params, AlgorithmChoice::cwnpam(AdjustMethod::MethodII), 5);
    const auto b = plan(map, params, AlgorithmChoice::cwnpam(AdjustMethod::MethodII), 5);
    CHECK(serialize_plan(a) == serialize_plan(b));
    CHECK(serialize_plan(a).find("\"method\":2") != std::string::npos);
}

TEST_CASE("cluster hull of a square with an interior point") {
    std::vector<oracle::Point> pts{
        {0, 0, 0, 1}, {1, 10, 0, 1}, {2, 10, 10, 1}, {3, 0, 10, 1}, {4, 5, 5, 1}};
    const auto map = testutil::to_map(pts);
    const auto hull = cluster_hull(map, {0, 1, 2, 3, 4});
    CHECK(hull.size() == 4);
    const auto degenerate = cluster_hull(map, {0, 1});
    CHECK(degenerate.size() == 2);
}
