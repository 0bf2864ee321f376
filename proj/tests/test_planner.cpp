#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "attnav/planner.hpp"

using namespace attnav;

namespace {

WorldMap empty_room(double size = 10.0) {
    WorldMap m;
    m.bounds = {0, 0, size, size};
    return m;
}

}  // namespace

TEST_CASE("empty map path cost approaches the Euclidean lower bound") {
    WorldMap m = empty_room();
    PlannerConfig cfg;
    cfg.max_iterations = 5000;
    Rng rng(3);
    PlanResult res = plan({1, 1}, {9, 9}, m, cfg, rng);
    REQUIRE(res.feasible);
    double lower = std::sqrt(128.0);  // straight-line oracle
    CHECK(res.cost >= lower - 1e-9);
    CHECK(res.cost <= 1.05 * lower);
    CHECK(dist(res.path.front(), {1, 1}) == doctest::Approx(0.0));
    CHECK(dist(res.path.back(), {9, 9}) <= cfg.goal_tolerance + 1e-9);
}

TEST_CASE("a separating wall makes the problem infeasible") {
    WorldMap m = empty_room();
    m.furniture.push_back({0, 4.5, 10, 5.5});  // full-width block
    PlannerConfig cfg;
    cfg.max_iterations = 2000;
    Rng rng(5);
    PlanResult res = plan({5, 1}, {5, 9}, m, cfg, rng);
    CHECK_FALSE(res.feasible);
}

TEST_CASE("goal equal to start yields a single-node zero-cost path") {
    WorldMap m = empty_room();
    PlannerConfig cfg;
    cfg.max_iterations = 50;
    Rng rng(9);
    PlanResult res = plan({4, 4}, {4, 4}, m, cfg, rng);
    REQUIRE(res.feasible);
    CHECK(res.path.size() == 1);
    CHECK(res.cost == doctest::Approx(0.0));
}

TEST_CASE("best path cost is non-increasing in the iteration budget") {
    WorldMap m = empty_room();
    m.furniture.push_back({4, 0, 5, 6});
    double prev = 1e18;
    for (int iters : {800, 2000, 5000}) {
        PlannerConfig cfg;
        cfg.max_iterations = iters;
        Rng rng(11);  // same stream prefix under a fixed seed
        PlanResult res = plan({1, 1}, {9, 9}, m, cfg, rng);
        REQUIRE(res.feasible);
        CHECK(res.cost <= prev + 1e-9);
        prev = res.cost;
    }
}

TEST_CASE("cost labels stay consistent through rewiring (500-iteration audit)") {
    WorldMap m = empty_room();
    m.furniture.push_back({3, 3, 7, 4});
    PlannerConfig cfg;
    cfg.max_iterations = 500;
    cfg.audit_costs = true;  // throws on the first inconsistent iteration
    Rng rng(13);
    PlanResult res = plan({1, 1}, {9, 9}, m, cfg, rng);
    CHECK(tree_cost_inconsistency(res.tree) <= 1e-9);
}

TEST_CASE("all tree edges are collision-free under the inflated test") {
    WorldMap m = empty_room();
    m.furniture.push_back({2, 2, 4, 8});
    m.furniture.push_back({6, 0, 7, 6});
    PlannerConfig cfg;
    cfg.max_iterations = 1200;
    Rng rng(17);
    PlanResult res = plan({1, 1}, {9, 9}, m, cfg, rng);
    for (size_t i = 1; i < res.tree.nodes.size(); ++i) {
        int p = res.tree.parent[i];
        REQUIRE(p >= 0);
        CHECK(planner_segment_free(m, res.tree.nodes[p], res.tree.nodes[i], cfg));
    }
}

TEST_CASE("plan is deterministic given the seed") {
    WorldMap m = empty_room();
    m.furniture.push_back({4, 4, 6, 6});
    PlannerConfig cfg;
    cfg.max_iterations = 1000;
    Rng a(21), b(21);
    PlanResult ra = plan({1, 1}, {9, 9}, m, cfg, a);
    PlanResult rb = plan({1, 1}, {9, 9}, m, cfg, b);
    REQUIRE(ra.feasible == rb.feasible);
    REQUIRE(ra.path.size() == rb.path.size());
    for (size_t i = 0; i < ra.path.size(); ++i) {
        CHECK(ra.path[i].x == rb.path[i].x);
        CHECK(ra.path[i].y == rb.path[i].y);
    }
}

TEST_CASE("extract_subgoals resamples by arc length") {
    SUBCASE("straight 4 m path at 1 m spacing") {
        std::vector<Vec2> path{{0, 0}, {4, 0}};
        auto sg = extract_subgoals(path, 1.0);
        REQUIRE(sg.size() == 4);
        for (int i = 0; i < 4; ++i) {
            CHECK(sg[i].x == doctest::Approx(i + 1.0));
            CHECK(sg[i].y == doctest::Approx(0.0));
        }
    }
    SUBCASE("path shorter than the spacing collapses to the goal") {
        std::vector<Vec2> path{{0, 0}, {0.5, 0}};
        auto sg = extract_subgoals(path, 1.5);
        REQUIRE(sg.size() == 1);
        CHECK(sg[0].x == doctest::Approx(0.5));
    }
    SUBCASE("multi-segment path keeps the final goal last") {
        std::vector<Vec2> path{{0, 0}, {2, 0}, {2, 2.5}};
        auto sg = extract_subgoals(path, 1.0);
        CHECK(sg.back().x == doctest::Approx(2.0));
        CHECK(sg.back().y == doctest::Approx(2.5));
        for (size_t i = 0; i + 1 < sg.size(); ++i) {
            double gap = dist(sg[i], sg[i + 1]);
            CHECK(gap <= 1.0 + 1e-9);
        }
    }
    SUBCASE("non-positive spacing is rejected") {
        std::vector<Vec2> path{{0, 0}, {1, 0}};
        CHECK_THROWS_AS(extract_subgoals(path, 0.0), std::runtime_error);
        CHECK_THROWS_AS(extract_subgoals({}, 1.0), std::runtime_error);
    }
}

TEST_CASE("emitted sub-goals are collision-free on a planned path") {
    WorldMap m = empty_room();
    m.furniture.push_back({3, 3, 7, 4});
    PlannerConfig cfg;
    cfg.max_iterations = 2000;
    Rng rng(31);
    PlanResult res = plan({1, 1}, {9, 9}, m, cfg, rng);
    REQUIRE(res.feasible);
    auto sg = extract_subgoals(res.path, 1.5);
    for (const auto& p : sg) CHECK(planner_point_free(m, p, cfg));
}

TEST_CASE("infeasible start or goal is reported, not thrown") {
    WorldMap m = empty_room();
    m.furniture.push_back({4, 4, 6, 6});
    PlannerConfig cfg;
    Rng rng(1);
    CHECK_FALSE(plan({5, 5}, {9, 9}, m, cfg, rng).feasible);
    CHECK_FALSE(plan({1, 1}, {5, 5}, m, cfg, rng).feasible);
}
