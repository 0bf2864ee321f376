#pragma once

#include <array>
#include <string>
#include <vector>

#include "attnav/branch.hpp"

namespace attnav {

enum class SaliencySource { kBranch, kVisualBackProp, kRandom };
std::string to_string(SaliencySource s);

struct EvalState {
    SemanticFrame frame;
    SubGoalPolar subgoal;
};

// States sampled from greedy rollouts of the trained trunk; the shared
// evaluation set for paired saliency comparisons.
std::vector<EvalState> collect_eval_states(DqnNetwork& net, const WorldMap& map, int count,
                                           const RunConfig& cfg, const std::string& stream_name);

// Bottom-up baseline: deepest conv activation mean, repeatedly upsampled and
// multiplied with the shallower layers' channel means, then normalized at
// input resolution.
Tensor visual_backprop(DqnNetwork& trunk, const SemanticFrame& frame, const SubGoalPolar& sg);

Tensor random_saliency(int h, int w, Rng& rng);

struct MetricCurve {
    std::vector<double> fractions;  // 0 .. 1 inclusive
    std::vector<double> accuracy;   // agreement with the unmodified-state action
    double auc = 0.0;               // trapezoidal
};

// Deletion: paint the top-f saliency-ranked pixels with the floor class and
// measure how often the trunk still picks the reference action. Ties in the
// ranking break by raster order.
MetricCurve deletion_curve(DqnNetwork& trunk, const std::vector<EvalState>& states,
                           const std::vector<Tensor>& saliency, int steps, int threads = 0);

// Insertion: reveal the top-f pixels of the original into an all-floor frame.
MetricCurve insertion_curve(DqnNetwork& trunk, const std::vector<EvalState>& states,
                            const std::vector<Tensor>& saliency, int steps, int threads = 0);

struct ActionAverages {
    std::array<int, kNumActions> counts{};
    std::array<Tensor, kNumActions> mean_frames;      // [3,H,W] one-hot means
    std::array<Tensor, kNumActions> mean_attention;   // [H,W]
    std::array<double, kNumActions> mean_mass_column{};  // averaged per-state statistic
};

// Partitions states by the trunk's greedy action and averages one-hot frames
// and attention maps per partition. Empty partitions have count 0.
ActionAverages averaged_attention_per_action(DqnNetwork& trunk, AttentionBranch& branch,
                                             const std::vector<EvalState>& states);

// Attention maps for the same frame under artificial sub-goal angles at a
// fixed distance (published probe: 0, +pi/4, -pi/4 at 1.0 m).
std::vector<Tensor> angle_sweep(DqnNetwork& trunk, AttentionBranch& branch, const SemanticFrame& frame,
                                const std::vector<double>& angles_rad = {0.0, std::numbers::pi / 4,
                                                                         -std::numbers::pi / 4},
                                double distance_m = 1.0);

struct NavStats {
    int successes = 0;
    int trials = 0;
    int collisions = 0;
    int skipped = 0;  // planner infeasible
    double avg_final_distance = 0.0;
};

// Greedy-policy navigation trials with per-trial planner sub-goals; success
// iff the final distance to the goal is below the goal radius.
NavStats evaluate_navigation(DqnNetwork& net, const WorldMap& map, int trials, const RunConfig& cfg);

std::string nav_stats_csv(const NavStats& s);
std::string curves_csv(const std::vector<double>& fractions,
                       const std::vector<std::pair<std::string, std::vector<double>>>& columns);

}  // namespace attnav
