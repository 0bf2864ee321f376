#include "attnav/env.hpp"

#include <cmath>

#include "attnav/common.hpp"

namespace attnav {

StepResult step(const RobotPose& pose, Action action, const Vec2& subgoal, const WorldMap& map,
                const KinematicsConfig& kin, const RewardConfig& rew) {
    int code = static_cast<int>(action);
    require(code >= 0 && code < kNumActions, str("step: invalid action code ", code));

    RobotPose next = pose;
    double d_prev = dist({pose.x, pose.y}, subgoal);
    if (action == Action::kForward) {
        next.x += kin.step_length * std::cos(pose.heading);
        next.y += kin.step_length * std::sin(pose.heading);
        if (pose_collides(map, next.x, next.y, kin.robot_radius)) {
            // robot bumps and stays put
            return {pose, rew.r_crash, true, StepEvent::kCrash};
        }
    } else if (action == Action::kTurnLeft) {
        next.heading = wrap_angle(pose.heading + kin.turn_rad);
    } else {
        next.heading = wrap_angle(pose.heading - kin.turn_rad);
    }

    double d_curr = dist({next.x, next.y}, subgoal);
    if (d_curr < rew.goal_radius) {
        return {next, rew.r_goal, false, StepEvent::kSubgoalReached};
    }
    double reward = 0.0;
    if (action == Action::kForward) {
        reward = std::clamp(rew.progress_scale * (d_prev - d_curr), -1.0, 1.0);
    }
    return {next, reward, false, StepEvent::kNone};
}

SubGoalPolar subgoal_polar(const RobotPose& pose, const Vec2& subgoal) {
    double dx = subgoal.x - pose.x;
    double dy = subgoal.y - pose.y;
    return {wrap_angle(std::atan2(dy, dx) - pose.heading), std::hypot(dx, dy)};
}

RobotPose sample_free_pose(const WorldMap& map, const Rect& region, double robot_radius, Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        RobotPose p;
        p.x = rng.uniform(region.x0, region.x1);
        p.y = rng.uniform(region.y0, region.y1);
        p.heading = wrap_angle(rng.uniform(-std::numbers::pi, std::numbers::pi));
        if (!pose_collides(map, p.x, p.y, robot_radius)) return p;
    }
    throw std::runtime_error("sample_free_pose: region infeasible after 1000 rejections");
}

Episode::Episode(const WorldMap* map, RobotPose start, std::vector<Vec2> subgoals,
                 RenderConfig render_cfg, KinematicsConfig kin, RewardConfig rew, EpisodeConfig cfg)
    : map_(map), pose_(start), subgoals_(std::move(subgoals)), render_cfg_(render_cfg), kin_(kin),
      rew_(rew), cfg_(cfg) {
    require(!subgoals_.empty(), "episode: empty sub-goal chain");
}

Episode::Outcome Episode::apply(Action action) {
    require(!done_, "episode: apply after done");
    StepResult r = step(pose_, action, subgoals_[leg_], *map_, kin_, rew_);
    pose_ = r.pose;
    ++total_steps_;
    Outcome out;
    out.reward = r.reward;
    out.event = r.event;
    if (r.event == StepEvent::kCrash) {
        done_ = true;
    } else if (r.event == StepEvent::kSubgoalReached) {
        ++leg_;
        steps_in_leg_ = 0;
        if (leg_ == static_cast<int>(subgoals_.size())) {
            done_ = true;
            success_ = true;
            leg_ = static_cast<int>(subgoals_.size()) - 1;  // keep polar() well-defined
        }
    } else {
        ++steps_in_leg_;
        if (steps_in_leg_ >= cfg_.max_steps_per_leg) {
            done_ = true;
            out.truncated = true;
        }
    }
    out.done = done_;
    out.success = success_;
    return out;
}

}  // namespace attnav
