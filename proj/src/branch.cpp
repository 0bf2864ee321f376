#include "attnav/branch.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "attnav/common.hpp"
#include "attnav/imageops.hpp"
#include "attnav/losses.hpp"

namespace attnav {

std::array<float, kNumActions> one_hot_from_q(const std::array<float, kNumActions>& q) {
    for (float v : q) require(std::isfinite(v), "one_hot_from_q: non-finite Q-value");
    std::array<float, kNumActions> out{};
    out[argmax3(q)] = 1.0f;
    return out;
}

DistillDataset harvest_dataset(DqnNetwork& net, const WorldMap& map, const RunConfig& cfg) {
    Rng root(cfg.seed);
    Rng harvest = root.derive("harvest");
    Rng sim_rng = harvest.derive("sim");
    Rng agent_rng = harvest.derive("agent");
    Rng plan_rng = harvest.derive("planner");
    Rng split_rng = harvest.derive("split");

    RenderConfig render_cfg = render_config_from(cfg);
    KinematicsConfig kin = kinematics_from(cfg);
    RewardConfig rew = reward_config_from(cfg);
    EpisodeConfig ep_cfg{cfg.sim.max_steps_per_leg};

    std::vector<DistillRecord> records;
    for (int ep = 0; ep < cfg.branch.harvest_episodes; ++ep) {
        Rng ep_sim = sim_rng.derive(static_cast<uint64_t>(ep));
        Rng ep_agent = agent_rng.derive(static_cast<uint64_t>(ep));
        Rng ep_plan = plan_rng.derive(static_cast<uint64_t>(ep));

        RobotPose start;
        std::vector<Vec2> subgoals;
        if (!plan_episode(map, cfg, ep_sim, ep_plan, &start, &subgoals)) continue;

        Episode epi(&map, start, subgoals, render_cfg, kin, rew, ep_cfg);
        while (!epi.done()) {
            SemanticFrame frame = epi.frame();
            SubGoalPolar polar = epi.polar();
            auto q = net.forward_q(encode_frame<float>(frame), polar);
            int greedy = argmax3(q);
            records.push_back({frame, polar, static_cast<uint8_t>(greedy)});
            // jittered action for diversity; the stored label stays greedy
            int a = select_action(q, cfg.branch.harvest_epsilon, ep_agent);
            epi.apply(static_cast<Action>(a));
        }
    }
    require(!records.empty(), "harvest: no states collected");

    std::vector<int> order(records.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    split_rng.shuffle(order);
    size_t holdout_n = std::max<size_t>(1, static_cast<size_t>(records.size() * cfg.branch.holdout_fraction));

    DistillDataset ds;
    for (size_t i = 0; i < order.size(); ++i) {
        if (i < holdout_n)
            ds.holdout.push_back(std::move(records[order[i]]));
        else
            ds.train.push_back(std::move(records[order[i]]));
    }
    return ds;
}

double branch_loss(const SemanticFrame& frame, const SubGoalPolar& sg, DqnNetwork& trunk,
                   AttentionBranch& branch) {
    require(trunk.frozen(), "branch_loss: trunk must be frozen before stage 2");
    auto q = trunk.forward_q(encode_frame<float>(frame), sg);
    auto p = branch.forward(trunk.feature_map());
    auto target = one_hot_from_q(q);
    return cross_entropy(std::vector<float>(p.begin(), p.end()),
                         std::vector<float>(target.begin(), target.end()));
}

double branch_lr_at(const RunConfig::Branch& cfg, int epoch) {
    double lr = cfg.learning_rate;
    if (epoch >= cfg.lr_drop1_epoch) lr /= 10.0;
    if (epoch >= cfg.lr_drop2_epoch) lr /= 10.0;
    return lr;
}

namespace {

struct PreparedSet {
    std::vector<Tensor> features;  // trunk F per record
    std::vector<uint8_t> labels;
};

PreparedSet precompute_features(DqnNetwork& trunk, const std::vector<DistillRecord>& records) {
    PreparedSet out;
    out.features.resize(records.size());
    out.labels.resize(records.size());
    for (size_t i = 0; i < records.size(); ++i) {
        trunk.forward_q(encode_frame<float>(records[i].frame), records[i].subgoal);
        out.features[i] = trunk.feature_map();
        out.labels[i] = records[i].label;
    }
    return out;
}

double agreement(AttentionBranch& branch, const PreparedSet& set) {
    int hits = 0;
    for (size_t i = 0; i < set.features.size(); ++i) {
        auto p = branch.forward(set.features[i]);
        if (argmax3(p) == set.labels[i]) ++hits;
    }
    return set.features.empty() ? 0.0 : static_cast<double>(hits) / set.features.size();
}

}  // namespace

FinetuneLog finetune(AttentionBranch& branch, DqnNetwork& trunk, const DistillDataset& dataset,
                     const RunConfig& cfg, std::ostream* progress) {
    require(trunk.frozen(), "finetune: trunk must be frozen before stage 2");
    require(!dataset.train.empty(), "finetune: empty dataset");

    Rng root(cfg.seed);
    Rng order_rng = root.derive("branch.order");

    PreparedSet train = precompute_features(trunk, dataset.train);
    PreparedSet holdout = precompute_features(trunk, dataset.holdout);

    SgdMomentum opt(cfg.branch.learning_rate, cfg.branch.momentum);
    auto params = branch.parameters();

    FinetuneLog log;
    std::vector<int> order(train.features.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

    for (int epoch = 0; epoch < cfg.branch.epochs; ++epoch) {
        double lr = branch_lr_at(cfg.branch, epoch);
        opt.set_learning_rate(lr);
        order_rng.shuffle(order);

        double loss_sum = 0.0;
        int loss_count = 0;
        for (size_t b = 0; b < order.size(); b += cfg.branch.batch_size) {
            size_t end = std::min(order.size(), b + cfg.branch.batch_size);
            int n = static_cast<int>(end - b);
            branch.zero_grads();
            for (size_t k = b; k < end; ++k) {
                int idx = order[k];
                auto p = branch.forward(train.features[idx]);
                std::array<float, kNumActions> target{};
                target[train.labels[idx]] = 1.0f;
                loss_sum += cross_entropy(std::vector<float>(p.begin(), p.end()),
                                          std::vector<float>(target.begin(), target.end()));
                ++loss_count;
                std::array<float, kNumActions> dlogits;
                for (int i = 0; i < kNumActions; ++i) dlogits[i] = (p[i] - target[i]) / n;
                branch.backward_from_logits(dlogits);
            }
            opt.step(params);
        }

        EpochStat stat;
        stat.epoch = epoch;
        stat.learning_rate = lr;
        stat.loss_mean = loss_count ? loss_sum / loss_count : 0.0;
        stat.train_agreement = agreement(branch, train);
        stat.holdout_agreement = agreement(branch, holdout);
        log.epochs.push_back(stat);
        if (progress && ((epoch + 1) % 10 == 0 || epoch + 1 == cfg.branch.epochs)) {
            *progress << "epoch " << (epoch + 1) << "/" << cfg.branch.epochs << " lr=" << lr
                      << " loss=" << stat.loss_mean << " train=" << stat.train_agreement
                      << " holdout=" << stat.holdout_agreement << "\n";
            progress->flush();
        }
    }
    log.final_holdout_agreement = log.epochs.empty() ? 0.0 : log.epochs.back().holdout_agreement;
    return log;
}

std::string finetune_log_csv(const FinetuneLog& log) {
    std::ostringstream os;
    os.precision(9);
    os << "epoch,lr,loss_mean,train_agreement,holdout_agreement\n";
    for (const auto& e : log.epochs)
        os << e.epoch << "," << e.learning_rate << "," << e.loss_mean << "," << e.train_agreement
           << "," << e.holdout_agreement << "\n";
    return os.str();
}

Tensor attention_map_from_raw(const Tensor& raw, int out_h, int out_w) {
    return minmax_normalize(bilinear_resize(raw, out_h, out_w));
}

ExplainOutput explain_forward(DqnNetwork& trunk, AttentionBranch& branch, const SemanticFrame& frame,
                              const SubGoalPolar& sg) {
    ExplainOutput out;
    out.q = trunk.forward_q(encode_frame<float>(frame), sg);
    out.p = branch.forward(trunk.feature_map());
    out.attention = attention_map_from_raw(branch.attention_raw(), frame.height, frame.width);
    return out;
}

}  // namespace attnav
