#pragma once

#include <vector>

#include "attnav/rng.hpp"
#include "attnav/world.hpp"

namespace attnav {

struct PlannerConfig {
    int max_iterations = 5000;
    double steer_step = 0.5;        // eta, meters
    double goal_bias = 0.05;        // probability of sampling the goal
    double goal_tolerance = 0.3;    // meters
    double robot_radius = 0.25;
    double clearance_margin = 0.1;  // extra obstacle inflation, planner only
    double rewire_gamma = 0.0;      // 0 = auto: 2*sqrt(1.5*area/pi)
    bool audit_costs = false;       // verify cost labels after every iteration
};

struct PlanTree {
    std::vector<Vec2> nodes;
    std::vector<int> parent;     // -1 for root
    std::vector<double> cost;    // cost-to-come, meters
};

struct PlanResult {
    bool feasible = false;
    std::vector<Vec2> path;  // start .. goal when feasible
    double cost = 0.0;
    PlanTree tree;
};

// Point/segment collision tests against obstacles inflated by
// robot_radius + clearance_margin.
bool planner_point_free(const WorldMap& map, const Vec2& p, const PlannerConfig& cfg);
bool planner_segment_free(const WorldMap& map, const Vec2& a, const Vec2& b, const PlannerConfig& cfg);

// Standard RRT*: sample with goal bias, steer by eta, choose minimum-cost
// parent among near nodes, rewire. Deterministic given the rng stream.
// Infeasible start/goal or an empty near-goal set yields feasible=false.
PlanResult plan(const Vec2& start, const Vec2& goal, const WorldMap& map, const PlannerConfig& cfg,
                Rng& rng);

// Resamples the path polyline at fixed arc-length spacing; the final goal is
// always the last entry.
std::vector<Vec2> extract_subgoals(const std::vector<Vec2>& path, double spacing);

// Max |stored cost - recomputed cost| over all nodes; audit helper.
double tree_cost_inconsistency(const PlanTree& tree);

}  // namespace attnav
