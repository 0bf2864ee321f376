#include "attnav/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "attnav/common.hpp"
#include "attnav/imageops.hpp"

namespace attnav {

std::string to_string(SaliencySource s) {
    switch (s) {
        case SaliencySource::kBranch: return "branch";
        case SaliencySource::kVisualBackProp: return "visualbackprop";
        case SaliencySource::kRandom: return "random";
    }
    return "?";
}

std::vector<EvalState> collect_eval_states(DqnNetwork& net, const WorldMap& map, int count,
                                           const RunConfig& cfg, const std::string& stream_name) {
    Rng root(cfg.seed);
    Rng stream = root.derive(stream_name);
    Rng sim_rng = stream.derive("sim");
    Rng plan_rng = stream.derive("planner");
    Rng pick_rng = stream.derive("pick");

    RenderConfig render_cfg = render_config_from(cfg);
    KinematicsConfig kin = kinematics_from(cfg);
    RewardConfig rew = reward_config_from(cfg);
    EpisodeConfig ep_cfg{cfg.sim.max_steps_per_leg};

    std::vector<EvalState> pool;
    uint64_t ep = 0;
    while (static_cast<int>(pool.size()) < count * 2 && ep < 4000) {
        Rng ep_sim = sim_rng.derive(ep);
        Rng ep_plan = plan_rng.derive(ep);
        ++ep;
        RobotPose start;
        std::vector<Vec2> subgoals;
        if (!plan_episode(map, cfg, ep_sim, ep_plan, &start, &subgoals)) continue;
        Episode epi(&map, start, subgoals, render_cfg, kin, rew, ep_cfg);
        while (!epi.done()) {
            SemanticFrame frame = epi.frame();
            SubGoalPolar polar = epi.polar();
            pool.push_back({frame, polar});
            auto q = net.forward_q(encode_frame<float>(frame), polar);
            epi.apply(static_cast<Action>(argmax3(q)));
        }
    }
    require(static_cast<int>(pool.size()) >= count,
            str("collect_eval_states: only ", pool.size(), " states for requested ", count));

    // uniform thinning keeps states from many episodes
    std::vector<int> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    pick_rng.shuffle(order);
    std::vector<EvalState> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(std::move(pool[order[i]]));
    return out;
}

namespace {

Tensor channel_mean(const Tensor& t) {
    require(t.shape.size() == 3, "channel_mean: expected [C,H,W]");
    Tensor out({t.shape[1], t.shape[2]});
    int hw = t.shape[1] * t.shape[2];
    for (int c = 0; c < t.shape[0]; ++c)
        for (int i = 0; i < hw; ++i) out.data[i] += t.data[static_cast<size_t>(c) * hw + i];
    for (auto& v : out.data) v /= static_cast<float>(t.shape[0]);
    return out;
}

}  // namespace

Tensor visual_backprop(DqnNetwork& trunk, const SemanticFrame& frame, const SubGoalPolar& sg) {
    trunk.forward_q(encode_frame<float>(frame), sg);
    Tensor m3 = channel_mean(trunk.feature_map());
    Tensor m2 = channel_mean(trunk.relu2_out());
    Tensor m1 = channel_mean(trunk.relu1_out());

    Tensor cur = m3;
    cur = bilinear_resize(cur, m2.shape[0], m2.shape[1]);
    for (size_t i = 0; i < cur.data.size(); ++i) cur.data[i] *= m2.data[i];
    cur = bilinear_resize(cur, m1.shape[0], m1.shape[1]);
    for (size_t i = 0; i < cur.data.size(); ++i) cur.data[i] *= m1.data[i];
    cur = bilinear_resize(cur, frame.height, frame.width);
    return minmax_normalize(cur);
}

Tensor random_saliency(int h, int w, Rng& rng) {
    Tensor t({h, w});
    for (auto& v : t.data) v = static_cast<float>(rng.uniform());
    return minmax_normalize(t);
}

namespace {

// Pixel indices ordered by descending saliency; ties break by raster order.
std::vector<int> saliency_ranking(const Tensor& map) {
    std::vector<int> idx(map.data.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return map.data[a] > map.data[b]; });
    return idx;
}

MetricCurve run_curve(DqnNetwork& trunk, const std::vector<EvalState>& states,
                      const std::vector<Tensor>& saliency, int steps, int threads, bool deletion) {
    require(states.size() == saliency.size(), "curve: states/saliency size mismatch");
    require(steps >= 1, "curve: steps must be >= 1");
    const int n = static_cast<int>(states.size());
    for (int i = 0; i < n; ++i)
        require(saliency[i].shape == std::vector<int>({states[i].frame.height, states[i].frame.width}),
                str("curve: saliency shape ", shape_str(saliency[i].shape), " does not match frame"));

    std::vector<std::vector<uint8_t>> agree(n, std::vector<uint8_t>(steps + 1, 0));

#ifdef _OPENMP
    int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nt)
#endif
    {
        DqnNetwork worker(trunk.subgoal_distance_max());
        worker.copy_parameters_from(trunk);
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 4)
#endif
        for (int s = 0; s < n; ++s) {
            const SemanticFrame& original = states[s].frame;
            const SubGoalPolar& sg = states[s].subgoal;
            int total = original.width * original.height;
            auto ranking = saliency_ranking(saliency[s]);

            int reference = argmax3(worker.forward_q(encode_frame<float>(original), sg));

            SemanticFrame work = deletion ? original : SemanticFrame(original.width, original.height);
            int painted = 0;
            for (int f = 0; f <= steps; ++f) {
                int want = static_cast<int>(std::lround(static_cast<double>(f) / steps * total));
                for (; painted < want; ++painted) {
                    int px = ranking[painted];
                    work.classes[px] = deletion ? kFloor : original.classes[px];
                }
                int a = argmax3(worker.forward_q(encode_frame<float>(work), sg));
                agree[s][f] = (a == reference) ? 1 : 0;
            }
        }
    }

    MetricCurve curve;
    curve.fractions.resize(steps + 1);
    curve.accuracy.assign(steps + 1, 0.0);
    for (int f = 0; f <= steps; ++f) {
        curve.fractions[f] = static_cast<double>(f) / steps;
        for (int s = 0; s < n; ++s) curve.accuracy[f] += agree[s][f];
        curve.accuracy[f] /= n;
    }
    for (int f = 0; f < steps; ++f)
        curve.auc += (curve.fractions[f + 1] - curve.fractions[f]) *
                     (curve.accuracy[f] + curve.accuracy[f + 1]) / 2.0;
    return curve;
}

}  // namespace

MetricCurve deletion_curve(DqnNetwork& trunk, const std::vector<EvalState>& states,
                           const std::vector<Tensor>& saliency, int steps, int threads) {
    return run_curve(trunk, states, saliency, steps, threads, true);
}

MetricCurve insertion_curve(DqnNetwork& trunk, const std::vector<EvalState>& states,
                            const std::vector<Tensor>& saliency, int steps, int threads) {
    return run_curve(trunk, states, saliency, steps, threads, false);
}

ActionAverages averaged_attention_per_action(DqnNetwork& trunk, AttentionBranch& branch,
                                             const std::vector<EvalState>& states) {
    ActionAverages out;
    int h = states.empty() ? 0 : states[0].frame.height;
    int w = states.empty() ? 0 : states[0].frame.width;
    for (int a = 0; a < kNumActions; ++a) {
        out.mean_frames[a] = Tensor({kNumClasses, std::max(h, 1), std::max(w, 1)});
        out.mean_attention[a] = Tensor({std::max(h, 1), std::max(w, 1)});
    }
    for (const auto& st : states) {
        ExplainOutput eo = explain_forward(trunk, branch, st.frame, st.subgoal);
        int a = argmax3(eo.q);
        Tensor onehot = encode_frame<float>(st.frame);
        for (size_t i = 0; i < onehot.data.size(); ++i) out.mean_frames[a].data[i] += onehot.data[i];
        for (size_t i = 0; i < eo.attention.data.size(); ++i)
            out.mean_attention[a].data[i] += eo.attention.data[i];
        out.mean_mass_column[a] += mean_mass_column(eo.attention);
        ++out.counts[a];
    }
    for (int a = 0; a < kNumActions; ++a) {
        if (out.counts[a] == 0) continue;
        for (auto& v : out.mean_frames[a].data) v /= static_cast<float>(out.counts[a]);
        for (auto& v : out.mean_attention[a].data) v /= static_cast<float>(out.counts[a]);
        out.mean_mass_column[a] /= out.counts[a];
    }
    return out;
}

std::vector<Tensor> angle_sweep(DqnNetwork& trunk, AttentionBranch& branch, const SemanticFrame& frame,
                                const std::vector<double>& angles_rad, double distance_m) {
    std::vector<Tensor> maps;
    for (double a : angles_rad) {
        ExplainOutput eo = explain_forward(trunk, branch, frame, {a, distance_m});
        maps.push_back(std::move(eo.attention));
    }
    return maps;
}

NavStats evaluate_navigation(DqnNetwork& net, const WorldMap& map, int trials, const RunConfig& cfg) {
    Rng root(cfg.seed);
    Rng eval = root.derive("eval");
    Rng sim_rng = eval.derive("sim");
    Rng plan_rng = eval.derive("planner");

    RenderConfig render_cfg = render_config_from(cfg);
    KinematicsConfig kin = kinematics_from(cfg);
    RewardConfig rew = reward_config_from(cfg);
    EpisodeConfig ep_cfg{cfg.sim.max_steps_per_leg};

    NavStats stats;
    double dist_sum = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        Rng t_sim = sim_rng.derive(static_cast<uint64_t>(trial));
        Rng t_plan = plan_rng.derive(static_cast<uint64_t>(trial));
        RobotPose start;
        std::vector<Vec2> subgoals;
        Vec2 goal;
        if (!plan_episode(map, cfg, t_sim, t_plan, &start, &subgoals, &goal)) {
            ++stats.skipped;
            continue;
        }
        Episode epi(&map, start, subgoals, render_cfg, kin, rew, ep_cfg);
        bool crashed = false;
        while (!epi.done()) {
            auto q = net.forward_q(encode_frame<float>(epi.frame()), epi.polar());
            Episode::Outcome o = epi.apply(static_cast<Action>(argmax3(q)));
            if (o.event == StepEvent::kCrash) crashed = true;
        }
        ++stats.trials;
        if (crashed) ++stats.collisions;
        double final_dist = dist({epi.pose().x, epi.pose().y}, goal);
        dist_sum += final_dist;
        if (!crashed && final_dist < rew.goal_radius) ++stats.successes;
    }
    stats.avg_final_distance = stats.trials ? dist_sum / stats.trials : 0.0;
    return stats;
}

std::string nav_stats_csv(const NavStats& s) {
    std::ostringstream os;
    os.precision(9);
    os << "successes,trials,avg_dist_to_goal_m,collisions,skipped\n";
    os << s.successes << "," << s.trials << "," << s.avg_final_distance << "," << s.collisions << ","
       << s.skipped << "\n";
    return os.str();
}

std::string curves_csv(const std::vector<double>& fractions,
                       const std::vector<std::pair<std::string, std::vector<double>>>& columns) {
    std::ostringstream os;
    os.precision(9);
    os << "fraction";
    for (const auto& [name, _] : columns) os << "," << name;
    os << "\n";
    for (size_t i = 0; i < fractions.size(); ++i) {
        os << fractions[i];
        for (const auto& [_, col] : columns) os << "," << col[i];
        os << "\n";
    }
    return os.str();
}

}  // namespace attnav
