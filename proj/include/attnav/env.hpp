#pragma once

#include <optional>
#include <vector>

#include "attnav/render.hpp"
#include "attnav/rng.hpp"
#include "attnav/world.hpp"

namespace attnav {

enum class Action : int { kForward = 0, kTurnLeft = 1, kTurnRight = 2 };
inline constexpr int kNumActions = 3;

enum class StepEvent { kNone, kSubgoalReached, kCrash };

// Sub-goal location relative to the robot; positive angle = to the left.
struct SubGoalPolar {
    double angle = 0.0;     // radians in (-pi, pi]
    double distance = 0.0;  // meters
};

struct RewardConfig {
    double r_goal = 30.0;
    double r_crash = -5.0;
    double progress_scale = 1.0;  // kappa in the forward-progress term
    double goal_radius = 0.5;
};

struct KinematicsConfig {
    double step_length = 0.2;                       // meters per forward action
    double turn_rad = 15.0 * std::numbers::pi / 180.0;
    double robot_radius = 0.25;
};

struct StepResult {
    RobotPose pose;
    double reward = 0.0;
    bool terminal = false;
    StepEvent event = StepEvent::kNone;
};

// Pure one-step transition. Reward cases are mutually exclusive with
// precedence crash > sub-goal reached > forward progress; turns score 0.
// terminal is set only on crash; episode-level termination (final goal,
// step caps) is the Episode's job.
StepResult step(const RobotPose& pose, Action action, const Vec2& subgoal, const WorldMap& map,
                const KinematicsConfig& kin, const RewardConfig& rew);

SubGoalPolar subgoal_polar(const RobotPose& pose, const Vec2& subgoal);

// Rejection-samples a collision-free pose with uniform heading inside the
// given region. Throws after 1000 consecutive rejections.
RobotPose sample_free_pose(const WorldMap& map, const Rect& region, double robot_radius, Rng& rng);

struct EpisodeConfig {
    int max_steps_per_leg = 300;
};

// Drives one episode through an ordered sub-goal chain. The episode ends on
// crash, on reaching the final sub-goal, or when a leg exceeds the step cap
// (truncation, no crash penalty).
class Episode {
public:
    Episode(const WorldMap* map, RobotPose start, std::vector<Vec2> subgoals, RenderConfig render_cfg,
            KinematicsConfig kin, RewardConfig rew, EpisodeConfig cfg = {});

    struct Outcome {
        double reward = 0.0;
        bool done = false;
        bool success = false;    // final sub-goal reached
        bool truncated = false;  // leg step cap hit
        StepEvent event = StepEvent::kNone;
    };

    Outcome apply(Action action);

    const RobotPose& pose() const { return pose_; }
    const Vec2& active_subgoal() const { return subgoals_[leg_]; }
    const Vec2& final_goal() const { return subgoals_.back(); }
    SubGoalPolar polar() const { return subgoal_polar(pose_, subgoals_[leg_ < static_cast<int>(subgoals_.size()) ? leg_ : subgoals_.size() - 1]); }
    SemanticFrame frame() const { return render(pose_, *map_, render_cfg_); }
    bool done() const { return done_; }
    bool success() const { return success_; }
    int total_steps() const { return total_steps_; }
    double distance_to_final_goal() const { return dist({pose_.x, pose_.y}, subgoals_.back()); }

private:
    const WorldMap* map_;
    RobotPose pose_;
    std::vector<Vec2> subgoals_;
    RenderConfig render_cfg_;
    KinematicsConfig kin_;
    RewardConfig rew_;
    EpisodeConfig cfg_;
    int leg_ = 0;
    int steps_in_leg_ = 0;
    int total_steps_ = 0;
    bool done_ = false;
    bool success_ = false;
};

}  // namespace attnav
