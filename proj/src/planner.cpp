#include "attnav/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "attnav/common.hpp"

namespace attnav {

bool planner_point_free(const WorldMap& map, const Vec2& p, const PlannerConfig& cfg) {
    return !pose_collides(map, p.x, p.y, cfg.robot_radius + cfg.clearance_margin);
}

bool planner_segment_free(const WorldMap& map, const Vec2& a, const Vec2& b,
                          const PlannerConfig& cfg) {
    double r = cfg.robot_radius + cfg.clearance_margin;
    if (!planner_point_free(map, a, cfg) || !planner_point_free(map, b, cfg)) return false;
    // both endpoints inside the deflated (convex) bounds => the segment is too
    for (const auto& f : map.furniture)
        if (segment_intersects_rect(a, b, f.inflated(r))) return false;
    return true;
}

double tree_cost_inconsistency(const PlanTree& tree) {
    double worst = 0.0;
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        double expect = tree.parent[i] < 0
                            ? 0.0
                            : tree.cost[tree.parent[i]] + dist(tree.nodes[tree.parent[i]], tree.nodes[i]);
        worst = std::max(worst, std::abs(expect - tree.cost[i]));
    }
    return worst;
}

namespace {

// Push a cost delta down the subtree rooted at `node` after rewiring.
void propagate_cost(PlanTree& tree, const std::vector<std::vector<int>>& children, int node,
                    double delta) {
    std::vector<int> stack(children[node]);
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        tree.cost[cur] += delta;
        stack.insert(stack.end(), children[cur].begin(), children[cur].end());
    }
}

}  // namespace

PlanResult plan(const Vec2& start, const Vec2& goal, const WorldMap& map, const PlannerConfig& cfg,
                Rng& rng) {
    require(cfg.steer_step > 0, "planner: steer step must be positive");
    require(cfg.goal_bias >= 0 && cfg.goal_bias < 1, "planner: goal bias must be in [0,1)");

    PlanResult result;
    PlanTree& tree = result.tree;
    if (!planner_point_free(map, start, cfg) || !planner_point_free(map, goal, cfg)) return result;

    tree.nodes.push_back(start);
    tree.parent.push_back(-1);
    tree.cost.push_back(0.0);
    std::vector<std::vector<int>> children(1);

    double gamma = cfg.rewire_gamma > 0
                       ? cfg.rewire_gamma
                       : 2.0 * std::sqrt(1.5 * map.bounds.area() / std::numbers::pi);

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        Vec2 sample = rng.uniform() < cfg.goal_bias
                          ? goal
                          : Vec2{rng.uniform(map.bounds.x0, map.bounds.x1),
                                 rng.uniform(map.bounds.y0, map.bounds.y1)};

        // nearest by linear scan; desk-scale trees make an index unnecessary
        int nearest = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < tree.nodes.size(); ++i) {
            double d = dist(tree.nodes[i], sample);
            if (d < best_d) {
                best_d = d;
                nearest = static_cast<int>(i);
            }
        }

        Vec2 from = tree.nodes[nearest];
        Vec2 to = sample;
        if (best_d > cfg.steer_step) {
            double s = cfg.steer_step / best_d;
            to = {from.x + (sample.x - from.x) * s, from.y + (sample.y - from.y) * s};
        }
        if (best_d < 1e-12) continue;
        if (!planner_point_free(map, to, cfg)) continue;
        if (!planner_segment_free(map, from, to, cfg)) continue;

        size_t n = tree.nodes.size();
        double radius = std::min(cfg.steer_step,
                                 gamma * std::sqrt(std::log(static_cast<double>(n + 1)) /
                                                   static_cast<double>(n + 1)));

        // choose minimum-cost parent among near nodes
        int parent = nearest;
        double parent_cost = tree.cost[nearest] + dist(from, to);
        std::vector<int> near;
        for (size_t i = 0; i < n; ++i) {
            if (dist(tree.nodes[i], to) > radius) continue;
            near.push_back(static_cast<int>(i));
            double c = tree.cost[i] + dist(tree.nodes[i], to);
            if (c < parent_cost && planner_segment_free(map, tree.nodes[i], to, cfg)) {
                parent = static_cast<int>(i);
                parent_cost = c;
            }
        }

        int new_idx = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(to);
        tree.parent.push_back(parent);
        tree.cost.push_back(parent_cost);
        children.emplace_back();
        children[parent].push_back(new_idx);

        // rewire near nodes through the new node when cheaper
        for (int i : near) {
            double c = parent_cost + dist(to, tree.nodes[i]);
            if (c + 1e-12 < tree.cost[i] && planner_segment_free(map, to, tree.nodes[i], cfg)) {
                double delta = c - tree.cost[i];
                auto& sib = children[tree.parent[i]];
                sib.erase(std::find(sib.begin(), sib.end(), i));
                tree.parent[i] = new_idx;
                children[new_idx].push_back(i);
                tree.cost[i] = c;
                propagate_cost(tree, children, i, delta);
            }
        }

        if (cfg.audit_costs)
            require(tree_cost_inconsistency(tree) <= 1e-9,
                    str("planner: cost labels inconsistent at iteration ", iter));
    }

    // best node within goal tolerance, by total cost through to the goal
    int best = -1;
    double best_total = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        double dg = dist(tree.nodes[i], goal);
        if (dg > cfg.goal_tolerance) continue;
        double total = tree.cost[i] + dg;
        if (total < best_total) {
            best_total = total;
            best = static_cast<int>(i);
        }
    }
    if (best < 0) return result;

    std::vector<Vec2> rev;
    for (int cur = best; cur != -1; cur = tree.parent[cur]) rev.push_back(tree.nodes[cur]);
    result.path.assign(rev.rbegin(), rev.rend());
    result.cost = tree.cost[best];
    if (dist(tree.nodes[best], goal) > 1e-12 &&
        planner_segment_free(map, tree.nodes[best], goal, cfg)) {
        result.path.push_back(goal);
        result.cost += dist(tree.nodes[best], goal);
    }
    result.feasible = true;
    return result;
}

std::vector<Vec2> extract_subgoals(const std::vector<Vec2>& path, double spacing) {
    require(spacing > 0, "extract_subgoals: spacing must be positive");
    require(!path.empty(), "extract_subgoals: empty path");
    std::vector<Vec2> out;
    double next_s = spacing;
    double walked = 0.0;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        Vec2 a = path[i], b = path[i + 1];
        double seg = dist(a, b);
        while (seg > 0 && next_s <= walked + seg + 1e-12) {
            double t = (next_s - walked) / seg;
            out.push_back({a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t});
            next_s += spacing;
        }
        walked += seg;
    }
    if (out.empty() || dist(out.back(), path.back()) > 1e-9) out.push_back(path.back());
    return out;
}

}  // namespace attnav
