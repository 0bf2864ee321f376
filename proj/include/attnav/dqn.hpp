#pragma once

#include <iosfwd>
#include <vector>

#include "attnav/config.hpp"
#include "attnav/dqn_network.hpp"
#include "attnav/env.hpp"
#include "attnav/optim.hpp"
#include "attnav/planner.hpp"

namespace attnav {

struct Transition {
    SemanticFrame state;
    SubGoalPolar subgoal;
    uint8_t action = 0;
    float reward = 0.0f;
    SemanticFrame next_state;
    SubGoalPolar next_subgoal;
    bool done = false;  // no bootstrap target beyond this transition
};

// FIFO ring buffer with uniform without-replacement batch sampling.
class ReplayBuffer {
public:
    explicit ReplayBuffer(int capacity);

    void push(Transition t);
    int size() const { return static_cast<int>(full_ ? cap_ : buf_.size()); }
    int capacity() const { return static_cast<int>(cap_); }

    // Logical index: 0 = oldest surviving transition.
    const Transition& at(int i) const;

    std::vector<int> sample_indices(int batch, Rng& rng) const;

private:
    std::vector<Transition> buf_;
    size_t cap_;
    size_t head_ = 0;
    bool full_ = false;
};

// Linear exploration anneal from epsilon_start at episode 0 to epsilon_end
// at epsilon_anneal_episodes, constant afterwards.
double epsilon_at(const RunConfig::Dqn& cfg, int episode);

// Epsilon-greedy with lowest-index argmax tie-break.
int select_action(const std::array<float, kNumActions>& q, double epsilon, Rng& rng);

// y = r for terminal transitions, else r + gamma * max_next.
inline float td_target(float reward, bool done, float max_next, float gamma) {
    return done ? reward : reward + gamma * max_next;
}

// One-step TD trainer with target network and RMSProp. Batch gradients are
// accumulated in a fixed number of worker groups and reduced in group order,
// so results do not depend on the thread count.
class DqnTrainer {
public:
    DqnTrainer(DqnNetwork& net, const RunConfig::Dqn& cfg);

    // Samples a batch and applies one optimizer step; returns mean Huber loss.
    double train_step(const ReplayBuffer& buffer, Rng& rng);

    void sync_target();
    int steps_taken() const { return steps_; }
    const DqnNetwork& target() const { return target_; }

private:
    static constexpr int kGradGroups = 8;

    DqnNetwork& net_;
    DqnNetwork target_;
    RunConfig::Dqn cfg_;
    RmsProp opt_;
    std::vector<DqnNetwork> workers_;
    std::vector<DqnNetwork> target_workers_;
    int steps_ = 0;
};

struct EpisodeLogRow {
    int episode = 0;
    double episode_return = 0.0;
    int steps = 0;
    bool success = false;
    double epsilon = 0.0;
    double td_loss_mean = 0.0;
    bool skipped = false;  // planner infeasible
};

struct TrainingOutput {
    DqnNetwork net;
    std::vector<EpisodeLogRow> log;
    int total_env_steps = 0;
    int total_train_steps = 0;
};

// Stage-1 training: per episode, sample start/goal, plan sub-goals, roll out
// epsilon-greedy, store transitions, train once the buffer is warm. Fully
// reproducible from cfg.seed. Planner-infeasible episodes are skipped and
// logged.
TrainingOutput run_training(const WorldMap& map, const RunConfig& cfg, std::ostream* progress = nullptr);

std::string training_log_csv(const std::vector<EpisodeLogRow>& log);

// Shared helpers for rollouts elsewhere in the pipeline.
RenderConfig render_config_from(const RunConfig& cfg);
KinematicsConfig kinematics_from(const RunConfig& cfg);
RewardConfig reward_config_from(const RunConfig& cfg);
PlannerConfig planner_config_from(const RunConfig& cfg);

// Samples a start pose and a goal at least min_start_goal_dist away (best
// effort), then plans. Returns false when the planner fails. goal_out is
// optional and receives the sampled goal coordinate.
bool plan_episode(const WorldMap& map, const RunConfig& cfg, Rng& sim_rng, Rng& plan_rng,
                  RobotPose* start, std::vector<Vec2>* subgoals, Vec2* goal_out = nullptr);

}  // namespace attnav
