#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "attnav/branch_network.hpp"
#include "attnav/config.hpp"
#include "attnav/dqn.hpp"

namespace attnav {

// One-hot vector at the argmax of a Q-value vector (lowest index wins ties).
std::array<float, kNumActions> one_hot_from_q(const std::array<float, kNumActions>& q);

struct DistillRecord {
    SemanticFrame frame;
    SubGoalPolar subgoal;
    uint8_t label = 0;  // argmax of the frozen DQN's Q-values
};

struct DistillDataset {
    std::vector<DistillRecord> train;
    std::vector<DistillRecord> holdout;
};

// Rolls out the frozen DQN mostly greedily (small epsilon jitter for state
// diversity) and records (state, sub-goal, DQN action) tuples, split 90/10.
DistillDataset harvest_dataset(DqnNetwork& net, const WorldMap& map, const RunConfig& cfg);

// Cross-entropy between the branch output and the one-hot of the frozen
// DQN's action for the same input. Rejects an unfrozen trunk.
double branch_loss(const SemanticFrame& frame, const SubGoalPolar& sg, DqnNetwork& trunk,
                   AttentionBranch& branch);

struct EpochStat {
    int epoch = 0;
    double learning_rate = 0.0;
    double loss_mean = 0.0;
    double train_agreement = 0.0;
    double holdout_agreement = 0.0;
};

struct FinetuneLog {
    std::vector<EpochStat> epochs;
    double final_holdout_agreement = 0.0;
};

double branch_lr_at(const RunConfig::Branch& cfg, int epoch);

// Stage-2 training: SGD with momentum over the distill dataset, learning
// rate divided by 10 at the two drop epochs. The trunk must be frozen; its
// parameters are never touched (feature maps are precomputed once).
FinetuneLog finetune(AttentionBranch& branch, DqnNetwork& trunk, const DistillDataset& dataset,
                     const RunConfig& cfg, std::ostream* progress = nullptr);

std::string finetune_log_csv(const FinetuneLog& log);

// One forward pass yielding Q-values, branch probabilities, and the
// normalized full-resolution attention map.
struct ExplainOutput {
    std::array<float, kNumActions> q{};
    std::array<float, kNumActions> p{};
    Tensor attention;  // [frame,frame] in [0,1]
};

ExplainOutput explain_forward(DqnNetwork& trunk, AttentionBranch& branch, const SemanticFrame& frame,
                              const SubGoalPolar& sg);

// Channel-mean map -> bilinear upsample -> min-max normalize (constant maps
// become all zeros).
Tensor attention_map_from_raw(const Tensor& raw, int out_h, int out_w);

}  // namespace attnav
