#include "attnav/dqn.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "attnav/losses.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "attnav/common.hpp"

namespace attnav {

ReplayBuffer::ReplayBuffer(int capacity) : cap_(static_cast<size_t>(capacity)) {
    require(capacity > 0, "replay: capacity must be positive");
    buf_.reserve(cap_);
}

void ReplayBuffer::push(Transition t) {
    if (!full_) {
        buf_.push_back(std::move(t));
        head_ = buf_.size() % cap_;
        if (buf_.size() == cap_) full_ = true;
    } else {
        buf_[head_] = std::move(t);
        head_ = (head_ + 1) % cap_;
    }
}

const Transition& ReplayBuffer::at(int i) const {
    require(i >= 0 && i < size(), str("replay: index ", i, " out of range"));
    if (!full_) return buf_[i];
    return buf_[(head_ + static_cast<size_t>(i)) % cap_];
}

std::vector<int> ReplayBuffer::sample_indices(int batch, Rng& rng) const {
    require(batch <= size(), str("replay: batch ", batch, " exceeds buffer size ", size()));
    std::vector<int> picked;
    picked.reserve(batch);
    while (static_cast<int>(picked.size()) < batch) {
        int idx = rng.uniform_int(size());
        if (std::find(picked.begin(), picked.end(), idx) == picked.end()) picked.push_back(idx);
    }
    return picked;
}

double epsilon_at(const RunConfig::Dqn& cfg, int episode) {
    require(episode >= 0, "epsilon_at: negative episode");
    double frac = std::min(1.0, static_cast<double>(episode) / cfg.epsilon_anneal_episodes);
    return cfg.epsilon_start + (cfg.epsilon_end - cfg.epsilon_start) * frac;
}

int select_action(const std::array<float, kNumActions>& q, double epsilon, Rng& rng) {
    require(epsilon >= 0.0 && epsilon <= 1.0, "select_action: epsilon outside [0,1]");
    if (rng.uniform() < epsilon) return rng.uniform_int(kNumActions);
    return argmax3(q);
}

DqnTrainer::DqnTrainer(DqnNetwork& net, const RunConfig::Dqn& cfg)
    : net_(net), target_(net), cfg_(cfg), opt_(cfg.learning_rate, cfg.rms_decay, cfg.rms_epsilon) {
    for (int g = 0; g < kGradGroups; ++g) {
        workers_.push_back(net);
        target_workers_.push_back(target_);
    }
}

void DqnTrainer::sync_target() {
    target_.copy_parameters_from(net_);
    for (auto& w : target_workers_) w.copy_parameters_from(target_);
}

double DqnTrainer::train_step(const ReplayBuffer& buffer, Rng& rng) {
    require(!net_.frozen(), "dqn: train_step on a frozen network");
    std::vector<int> batch = buffer.sample_indices(cfg_.batch_size, rng);
    const int n = static_cast<int>(batch.size());

    for (auto& w : workers_) {
        w.copy_parameters_from(net_);
        w.zero_grads();
    }

    // fixed sample->group assignment keeps the gradient reduction order
    // independent of the thread count
    std::array<double, kGradGroups> group_loss{};
    int per_group = (n + kGradGroups - 1) / kGradGroups;
#ifdef _OPENMP
    int nt = cfg_.threads > 0 ? cfg_.threads : omp_get_max_threads();
#pragma omp parallel for num_threads(std::min(nt, kGradGroups)) schedule(static, 1)
#endif
    for (int g = 0; g < kGradGroups; ++g) {
        DqnNetwork& worker = workers_[g];
        DqnNetwork& target = target_workers_[g];
        for (int k = g * per_group; k < std::min(n, (g + 1) * per_group); ++k) {
            const Transition& tr = buffer.at(batch[k]);
            float max_next = 0.0f;
            if (!tr.done) {
                auto qn = target.forward_q(encode_frame<float>(tr.next_state), tr.next_subgoal);
                max_next = *std::max_element(qn.begin(), qn.end());
            }
            float y = td_target(tr.reward, tr.done, max_next, static_cast<float>(cfg_.gamma));
            auto q = worker.forward_q(encode_frame<float>(tr.state), tr.subgoal);
            float residual = q[tr.action] - y;
            group_loss[g] += huber(residual);
            std::array<float, kNumActions> dq{};
            dq[tr.action] = huber_grad(residual) / static_cast<float>(n);
            worker.backward_from_q(dq);
        }
    }

    // reduce gradients in group order
    net_.zero_grads();
    auto main_params = net_.parameters();
    for (int g = 0; g < kGradGroups; ++g) {
        auto wp = workers_[g].parameters();
        for (size_t i = 0; i < main_params.size(); ++i) {
            const auto& src = wp[i].tensor->grad;
            auto& dst = main_params[i].tensor->grad;
            for (size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
        }
    }

    opt_.step(main_params);
    ++steps_;
    if (steps_ % cfg_.target_sync_steps == 0) sync_target();

    double loss = 0.0;
    for (double l : group_loss) loss += l;
    return loss / n;
}

RenderConfig render_config_from(const RunConfig& cfg) {
    RenderConfig r;
    r.width = cfg.sim.frame_size;
    r.height = cfg.sim.frame_size;
    r.fov_rad = cfg.sim.fov_deg * std::numbers::pi / 180.0;
    r.height_scale = cfg.sim.render_height_scale;
    return r;
}

KinematicsConfig kinematics_from(const RunConfig& cfg) {
    KinematicsConfig k;
    k.step_length = cfg.sim.step_length_m;
    k.turn_rad = cfg.sim.turn_deg * std::numbers::pi / 180.0;
    k.robot_radius = cfg.sim.robot_radius_m;
    return k;
}

RewardConfig reward_config_from(const RunConfig& cfg) {
    RewardConfig r;
    r.r_goal = cfg.sim.r_goal;
    r.r_crash = cfg.sim.r_crash;
    r.progress_scale = cfg.sim.progress_scale;
    r.goal_radius = cfg.sim.goal_radius_m;
    return r;
}

PlannerConfig planner_config_from(const RunConfig& cfg) {
    PlannerConfig p;
    p.max_iterations = cfg.planner.max_iterations;
    p.steer_step = cfg.planner.steer_step_m;
    p.goal_bias = cfg.planner.goal_bias;
    p.goal_tolerance = cfg.planner.goal_tolerance_m;
    p.robot_radius = cfg.sim.robot_radius_m;
    p.clearance_margin = cfg.planner.clearance_margin_m;
    p.rewire_gamma = cfg.planner.rewire_gamma;
    return p;
}

bool plan_episode(const WorldMap& map, const RunConfig& cfg, Rng& sim_rng, Rng& plan_rng,
                  RobotPose* start, std::vector<Vec2>* subgoals, Vec2* goal_out) {
    *start = sample_free_pose(map, map.bounds, cfg.sim.robot_radius_m, sim_rng);
    Vec2 goal{};
    bool found = false;
    for (int attempt = 0; attempt < 100; ++attempt) {
        RobotPose g = sample_free_pose(map, map.bounds, cfg.sim.robot_radius_m, sim_rng);
        goal = {g.x, g.y};
        if (dist({start->x, start->y}, goal) >= cfg.dqn.min_start_goal_dist_m) {
            found = true;
            break;
        }
    }
    if (!found) return false;
    PlanResult res = plan({start->x, start->y}, goal, map, planner_config_from(cfg), plan_rng);
    if (!res.feasible) return false;
    *subgoals = extract_subgoals(res.path, cfg.planner.subgoal_spacing_m);
    if (goal_out) *goal_out = goal;
    return true;
}

TrainingOutput run_training(const WorldMap& map, const RunConfig& cfg, std::ostream* progress) {
    Rng root(cfg.seed);
    Rng init_rng = root.derive("init");
    Rng sim_rng = root.derive("sim");
    Rng agent_rng = root.derive("agent");
    Rng plan_rng = root.derive("planner");

    TrainingOutput out{DqnNetwork(cfg.dqn.subgoal_distance_max_m), {}, 0, 0};
    out.net.init_weights(init_rng);
    DqnTrainer trainer(out.net, cfg.dqn);
    ReplayBuffer buffer(cfg.dqn.replay_capacity);

    RenderConfig render_cfg = render_config_from(cfg);
    KinematicsConfig kin = kinematics_from(cfg);
    RewardConfig rew = reward_config_from(cfg);
    EpisodeConfig ep_cfg{cfg.sim.max_steps_per_leg};

    for (int ep = 0; ep < cfg.dqn.episodes; ++ep) {
        Rng ep_sim = sim_rng.derive(static_cast<uint64_t>(ep));
        Rng ep_agent = agent_rng.derive(static_cast<uint64_t>(ep));
        Rng ep_plan = plan_rng.derive(static_cast<uint64_t>(ep));
        double eps = epsilon_at(cfg.dqn, ep);

        EpisodeLogRow row;
        row.episode = ep;
        row.epsilon = eps;

        RobotPose start;
        std::vector<Vec2> subgoals;
        if (!plan_episode(map, cfg, ep_sim, ep_plan, &start, &subgoals)) {
            row.skipped = true;
            out.log.push_back(row);
            continue;
        }

        Episode epi(&map, start, subgoals, render_cfg, kin, rew, ep_cfg);
        SemanticFrame frame = epi.frame();
        SubGoalPolar polar = epi.polar();
        double loss_sum = 0.0;
        int loss_count = 0;
        while (!epi.done()) {
            auto q = out.net.forward_q(encode_frame<float>(frame), polar);
            int a = select_action(q, eps, ep_agent);
            Episode::Outcome o = epi.apply(static_cast<Action>(a));
            SemanticFrame next_frame = epi.frame();
            SubGoalPolar next_polar = epi.polar();

            Transition tr;
            tr.state = frame;
            tr.subgoal = polar;
            tr.action = static_cast<uint8_t>(a);
            tr.reward = static_cast<float>(o.reward);
            tr.next_state = next_frame;
            tr.next_subgoal = next_polar;
            tr.done = o.done && !o.truncated;
            buffer.push(std::move(tr));

            row.episode_return += o.reward;
            ++row.steps;
            ++out.total_env_steps;

            if (buffer.size() >= std::max(cfg.dqn.warmup_transitions, cfg.dqn.batch_size) &&
                out.total_env_steps % cfg.dqn.train_every == 0) {
                loss_sum += trainer.train_step(buffer, agent_rng);
                ++loss_count;
                ++out.total_train_steps;
            }
            frame = std::move(next_frame);
            polar = next_polar;
        }
        row.success = epi.success();
        row.td_loss_mean = loss_count ? loss_sum / loss_count : 0.0;
        out.log.push_back(row);

        if (progress && ((ep + 1) % 200 == 0 || ep + 1 == cfg.dqn.episodes)) {
            int window = std::min<int>(200, out.log.size());
            double succ = 0.0;
            for (int i = static_cast<int>(out.log.size()) - window; i < static_cast<int>(out.log.size()); ++i)
                succ += out.log[i].success ? 1.0 : 0.0;
            *progress << "episode " << (ep + 1) << "/" << cfg.dqn.episodes << " eps=" << eps
                      << " success(last " << window << ")=" << succ / window
                      << " train_steps=" << out.total_train_steps << "\n";
            progress->flush();
        }
    }
    return out;
}

std::string training_log_csv(const std::vector<EpisodeLogRow>& log) {
    std::ostringstream os;
    os.precision(9);
    os << "episode,return,steps,success,epsilon,td_loss_mean\n";
    for (const auto& r : log) {
        if (r.skipped) {
            os << r.episode << ",skipped,0,0," << r.epsilon << ",0\n";
            continue;
        }
        os << r.episode << "," << r.episode_return << "," << r.steps << "," << (r.success ? 1 : 0)
           << "," << r.epsilon << "," << r.td_loss_mean << "\n";
    }
    return os.str();
}

}  // namespace attnav
