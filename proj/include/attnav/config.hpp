#pragma once

#include <cstdint>
#include <string>

namespace attnav {

// Whole-pipeline configuration, INI-style on disk. Defaults follow the
// bundled room setup and the published hyperparameters; desk-scale runs
// override the episode counts and anneal horizon.
struct RunConfig {
    uint64_t seed = 1;

    struct Sim {
        std::string map_file = "maps/room8x8.map";
        int frame_size = 64;
        double fov_deg = 90.0;
        double step_length_m = 0.2;
        double turn_deg = 15.0;
        double robot_radius_m = 0.25;
        double goal_radius_m = 0.5;
        double r_goal = 30.0;
        double r_crash = -5.0;
        double progress_scale = 1.0;
        int max_steps_per_leg = 300;
        double render_height_scale = 48.0;
        bool operator==(const Sim&) const = default;
    } sim;

    struct Planner {
        int max_iterations = 5000;
        double steer_step_m = 0.5;
        double goal_bias = 0.05;
        double goal_tolerance_m = 0.3;
        double clearance_margin_m = 0.1;
        double subgoal_spacing_m = 1.5;
        double rewire_gamma = 0.0;  // 0 = derived from map area
        bool operator==(const Planner&) const = default;
    } planner;

    struct Dqn {
        int episodes = 20000;
        double gamma = 0.99;
        int replay_capacity = 10000;
        int batch_size = 32;
        int train_every = 4;
        int warmup_transitions = 1000;
        int target_sync_steps = 1000;
        double learning_rate = 2.5e-4;
        double rms_decay = 0.95;
        double rms_epsilon = 0.01;
        double epsilon_start = 0.9;
        double epsilon_end = 0.1;
        int epsilon_anneal_episodes = 80000;
        double subgoal_distance_max_m = 5.0;
        double min_start_goal_dist_m = 3.0;
        int threads = 0;  // 0 = hardware default
        bool operator==(const Dqn&) const = default;
    } dqn;

    struct Branch {
        int epochs = 100;
        int batch_size = 64;
        double learning_rate = 0.1;
        double momentum = 0.9;
        int lr_drop1_epoch = 50;
        int lr_drop2_epoch = 75;
        int harvest_episodes = 500;
        double harvest_epsilon = 0.05;
        double holdout_fraction = 0.1;
        bool operator==(const Branch&) const = default;
    } branch;

    struct Eval {
        int trials = 50;
        int states = 1000;
        int curve_steps = 50;
        int explain_states = 6;
        bool operator==(const Eval&) const = default;
    } eval;

    bool operator==(const RunConfig&) const = default;
};

// Parses INI text: `[section]` headers, `key = value` lines, `#` comments.
// Unknown sections/keys and malformed lines are rejected with the line
// number; out-of-range values are rejected by validate().
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");
RunConfig load_config(const std::string& path);
std::string render_config(const RunConfig& cfg);
void validate_config(const RunConfig& cfg);

}  // namespace attnav
