#include "attnav/cli.hpp"

#include <filesystem>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "attnav/branch.hpp"
#include "attnav/checkpoint.hpp"
#include "attnav/config.hpp"
#include "attnav/dqn.hpp"
#include "attnav/fsutil.hpp"
#include "attnav/ppm.hpp"
#include "attnav/saliency.hpp"

namespace attnav {

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    int64_t seed_override = -1;
};

RunConfig load_effective_config(const CommonOpts& opts) {
    RunConfig cfg = opts.config_path.empty() ? RunConfig{} : load_config(opts.config_path);
    if (opts.seed_override >= 0) cfg.seed = static_cast<uint64_t>(opts.seed_override);
    validate_config(cfg);
    return cfg;
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
    return (fs::path(opts.out_dir) / name).string();
}

DqnNetwork load_trunk(const std::string& path, const RunConfig& cfg, bool require_frozen) {
    require(fs::exists(path), str("missing trunk checkpoint ", path, "; run `train` first"));
    DqnNetwork net(cfg.dqn.subgoal_distance_max_m);
    auto params = net.parameters();
    CheckpointInfo info = load_checkpoint(path, params);
    if (require_frozen)
        require(info.frozen, str("trunk checkpoint ", path, " is not frozen; refusing stage 2"));
    net.set_frozen(info.frozen);
    return net;
}

AttentionBranch load_branch(const std::string& path) {
    require(fs::exists(path), str("missing branch checkpoint ", path, "; run `distill` first"));
    AttentionBranch branch;
    auto params = branch.parameters();
    load_checkpoint(path, params);
    return branch;
}

int cmd_train(const CommonOpts& opts) {
    RunConfig cfg = load_effective_config(opts);
    WorldMap map = load_map(cfg.sim.map_file);
    map.validate(cfg.sim.robot_radius_m);

    TrainingOutput result = run_training(map, cfg, &std::cerr);
    // stage 1 complete: the trunk is frozen from here on
    result.net.set_frozen(true);
    save_checkpoint(out_path(opts, "dqn_trunk.ckpt"), result.net.parameters(), true);
    atomic_write_file(out_path(opts, "train_log.csv"), training_log_csv(result.log));
    std::cerr << "trained " << cfg.dqn.episodes << " episodes, " << result.total_train_steps
              << " updates -> " << out_path(opts, "dqn_trunk.ckpt") << "\n";
    return 0;
}

int cmd_distill(const CommonOpts& opts, const std::string& trunk_path) {
    RunConfig cfg = load_effective_config(opts);
    WorldMap map = load_map(cfg.sim.map_file);
    map.validate(cfg.sim.robot_radius_m);

    std::string trunk_file = trunk_path.empty() ? out_path(opts, "dqn_trunk.ckpt") : trunk_path;
    DqnNetwork trunk = load_trunk(trunk_file, cfg, /*require_frozen=*/true);

    DistillDataset dataset = harvest_dataset(trunk, map, cfg);
    std::cerr << "harvested " << dataset.train.size() << " train / " << dataset.holdout.size()
              << " holdout states\n";

    AttentionBranch branch;
    Rng init = Rng(cfg.seed).derive("branch.init");
    branch.init_weights(init);
    FinetuneLog log = finetune(branch, trunk, dataset, cfg, &std::cerr);

    save_checkpoint(out_path(opts, "branch.ckpt"), branch.parameters(), false);
    atomic_write_file(out_path(opts, "distill_log.csv"), finetune_log_csv(log));
    std::cerr << "holdout agreement " << log.final_holdout_agreement << " -> "
              << out_path(opts, "branch.ckpt") << "\n";
    return 0;
}

int cmd_eval_nav(const CommonOpts& opts, const std::string& trunk_path, int trials) {
    RunConfig cfg = load_effective_config(opts);
    WorldMap map = load_map(cfg.sim.map_file);
    map.validate(cfg.sim.robot_radius_m);

    std::string trunk_file = trunk_path.empty() ? out_path(opts, "dqn_trunk.ckpt") : trunk_path;
    DqnNetwork trunk = load_trunk(trunk_file, cfg, /*require_frozen=*/false);

    NavStats stats = evaluate_navigation(trunk, map, trials > 0 ? trials : cfg.eval.trials, cfg);
    atomic_write_file(out_path(opts, "nav_stats.csv"), nav_stats_csv(stats));
    std::cout << nav_stats_csv(stats);
    return 0;
}

int cmd_explain(const CommonOpts& opts, const std::string& trunk_path, const std::string& branch_path,
                int states) {
    RunConfig cfg = load_effective_config(opts);
    WorldMap map = load_map(cfg.sim.map_file);
    map.validate(cfg.sim.robot_radius_m);

    DqnNetwork trunk =
        load_trunk(trunk_path.empty() ? out_path(opts, "dqn_trunk.ckpt") : trunk_path, cfg, false);
    AttentionBranch branch =
        load_branch(branch_path.empty() ? out_path(opts, "branch.ckpt") : branch_path);

    int n = states > 0 ? states : cfg.eval.explain_states;
    std::vector<EvalState> probes = collect_eval_states(trunk, map, n, cfg, "explain");

    const std::vector<double> angles = {0.0, std::numbers::pi / 4, -std::numbers::pi / 4};
    const char* angle_names[3] = {"front", "left45", "right45"};
    for (int i = 0; i < n; ++i) {
        fs::path dir = fs::path(opts.out_dir) / "explain" / str("state_", i);
        const auto& st = probes[i];
        ExplainOutput eo = explain_forward(trunk, branch, st.frame, st.subgoal);
        write_ppm((dir / "frame.ppm").string(), palette_image(st.frame));
        write_ppm((dir / "attention.ppm").string(), gray_image(eo.attention));
        write_ppm((dir / "attention_overlay.ppm").string(), overlay_image(st.frame, eo.attention));
        Tensor vbp = visual_backprop(trunk, st.frame, st.subgoal);
        write_ppm((dir / "visualbackprop.ppm").string(), gray_image(vbp));
        write_ppm((dir / "visualbackprop_overlay.ppm").string(), overlay_image(st.frame, vbp));
        auto sweep = angle_sweep(trunk, branch, st.frame, angles, 1.0);
        for (size_t a = 0; a < sweep.size(); ++a) {
            write_ppm((dir / str("angle_", angle_names[a], ".ppm")).string(), gray_image(sweep[a]));
            write_ppm((dir / str("angle_", angle_names[a], "_overlay.ppm")).string(),
                      overlay_image(st.frame, sweep[a]));
        }
    }

    // per-action averages over a larger shared state set
    std::vector<EvalState> avg_states =
        collect_eval_states(trunk, map, cfg.eval.states, cfg, "evalstates");
    ActionAverages avg = averaged_attention_per_action(trunk, branch, avg_states);
    const char* action_names[kNumActions] = {"forward", "turn_left", "turn_right"};
    std::ostringstream summary;
    summary.precision(9);
    summary << "action,count,mean_mass_column\n";
    for (int a = 0; a < kNumActions; ++a) {
        summary << action_names[a] << "," << avg.counts[a] << ","
                << (avg.counts[a] ? avg.mean_mass_column[a] : -1.0) << "\n";
        if (avg.counts[a] == 0) continue;
        fs::path dir = fs::path(opts.out_dir) / "explain";
        write_ppm((dir / str("avg_", action_names[a], "_frame.ppm")).string(),
                  palette_image(avg.mean_frames[a]));
        write_ppm((dir / str("avg_", action_names[a], "_attention.ppm")).string(),
                  gray_image(avg.mean_attention[a]));
    }
    atomic_write_file(out_path(opts, "explain/action_summary.csv"), summary.str());
    std::cerr << "explain artifacts under " << (fs::path(opts.out_dir) / "explain").string() << "\n";
    return 0;
}

int cmd_metrics(const CommonOpts& opts, const std::string& trunk_path, const std::string& branch_path,
                int states) {
    RunConfig cfg = load_effective_config(opts);
    WorldMap map = load_map(cfg.sim.map_file);
    map.validate(cfg.sim.robot_radius_m);

    DqnNetwork trunk =
        load_trunk(trunk_path.empty() ? out_path(opts, "dqn_trunk.ckpt") : trunk_path, cfg, false);
    AttentionBranch branch =
        load_branch(branch_path.empty() ? out_path(opts, "branch.ckpt") : branch_path);

    int n = states > 0 ? states : cfg.eval.states;
    std::vector<EvalState> eval_states = collect_eval_states(trunk, map, n, cfg, "evalstates");

    std::vector<Tensor> branch_sal, vbp_sal, rand_sal;
    Rng rand_rng = Rng(cfg.seed).derive("randsal");
    for (int i = 0; i < n; ++i) {
        const auto& st = eval_states[i];
        branch_sal.push_back(explain_forward(trunk, branch, st.frame, st.subgoal).attention);
        vbp_sal.push_back(visual_backprop(trunk, st.frame, st.subgoal));
        Rng r = rand_rng.derive(static_cast<uint64_t>(i));
        rand_sal.push_back(random_saliency(st.frame.height, st.frame.width, r));
    }

    int steps = cfg.eval.curve_steps;
    int threads = cfg.dqn.threads;
    MetricCurve del_branch = deletion_curve(trunk, eval_states, branch_sal, steps, threads);
    MetricCurve del_vbp = deletion_curve(trunk, eval_states, vbp_sal, steps, threads);
    MetricCurve del_rand = deletion_curve(trunk, eval_states, rand_sal, steps, threads);
    MetricCurve ins_branch = insertion_curve(trunk, eval_states, branch_sal, steps, threads);
    MetricCurve ins_vbp = insertion_curve(trunk, eval_states, vbp_sal, steps, threads);
    MetricCurve ins_rand = insertion_curve(trunk, eval_states, rand_sal, steps, threads);

    atomic_write_file(out_path(opts, "deletion.csv"),
                      curves_csv(del_branch.fractions, {{"branch", del_branch.accuracy},
                                                        {"visualbackprop", del_vbp.accuracy},
                                                        {"random", del_rand.accuracy}}));
    atomic_write_file(out_path(opts, "insertion.csv"),
                      curves_csv(ins_branch.fractions, {{"branch", ins_branch.accuracy},
                                                        {"visualbackprop", ins_vbp.accuracy},
                                                        {"random", ins_rand.accuracy}}));
    std::ostringstream auc;
    auc.precision(9);
    auc << "metric,source,auc\n";
    auc << "deletion,branch," << del_branch.auc << "\n";
    auc << "deletion,visualbackprop," << del_vbp.auc << "\n";
    auc << "deletion,random," << del_rand.auc << "\n";
    auc << "insertion,branch," << ins_branch.auc << "\n";
    auc << "insertion,visualbackprop," << ins_vbp.auc << "\n";
    auc << "insertion,random," << ins_rand.auc << "\n";
    atomic_write_file(out_path(opts, "auc_summary.csv"), auc.str());
    std::cout << auc.str();
    return 0;
}

int cmd_plan_debug(const CommonOpts& opts) {
    RunConfig cfg = load_effective_config(opts);
    WorldMap map = load_map(cfg.sim.map_file);
    map.validate(cfg.sim.robot_radius_m);

    Rng root(cfg.seed);
    Rng sim_rng = root.derive("plandebug.sim");
    Rng plan_rng = root.derive("plandebug.planner");
    RobotPose start = sample_free_pose(map, map.bounds, cfg.sim.robot_radius_m, sim_rng);
    RobotPose goal_pose = sample_free_pose(map, map.bounds, cfg.sim.robot_radius_m, sim_rng);
    Vec2 goal{goal_pose.x, goal_pose.y};

    PlanResult res = plan({start.x, start.y}, goal, map, planner_config_from(cfg), plan_rng);
    std::ostringstream tree;
    tree.precision(17);
    tree << "# x y parent cost\n";
    for (size_t i = 0; i < res.tree.nodes.size(); ++i)
        tree << res.tree.nodes[i].x << " " << res.tree.nodes[i].y << " " << res.tree.parent[i] << " "
             << res.tree.cost[i] << "\n";
    atomic_write_file(out_path(opts, "plan_tree.txt"), tree.str());

    std::ostringstream path;
    path.precision(17);
    path << "# x y\n";
    for (const auto& p : res.path) path << p.x << " " << p.y << "\n";
    atomic_write_file(out_path(opts, "plan_path.txt"), path.str());

    std::cout << (res.feasible ? str("feasible, cost ", res.cost, ", ", res.path.size(), " waypoints")
                               : std::string("infeasible"))
              << "\n";
    return 0;
}

}  // namespace

int run_subcommand(const std::vector<std::string>& args) {
    CLI::App app{"top-down attention explanations for DQN navigation"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string trunk_path, branch_path;
    int trials = 0, states = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config_path, "config file (INI)");
        sub->add_option("--seed", opts.seed_override, "override config seed");
        sub->add_option("--out", opts.out_dir, "artifact directory");
    };

    CLI::App* train = app.add_subcommand("train", "stage 1: train the DQN");
    add_common(train);

    CLI::App* distill = app.add_subcommand("distill", "stage 2: fit the attention branch");
    add_common(distill);
    distill->add_option("--checkpoint", trunk_path, "trunk checkpoint (default <out>/dqn_trunk.ckpt)");

    CLI::App* eval_nav = app.add_subcommand("eval-nav", "greedy navigation trials");
    add_common(eval_nav);
    eval_nav->add_option("--checkpoint", trunk_path, "trunk checkpoint");
    eval_nav->add_option("--trials", trials, "number of trials");

    CLI::App* explain = app.add_subcommand("explain", "export attention/saliency images");
    add_common(explain);
    explain->add_option("--checkpoint", trunk_path, "trunk checkpoint");
    explain->add_option("--branch", branch_path, "branch checkpoint");
    explain->add_option("--states", states, "number of probe states");

    CLI::App* metrics = app.add_subcommand("metrics", "deletion/insertion curves and AUC");
    add_common(metrics);
    metrics->add_option("--checkpoint", trunk_path, "trunk checkpoint");
    metrics->add_option("--branch", branch_path, "branch checkpoint");
    metrics->add_option("--states", states, "number of evaluation states");

    CLI::App* plan_debug = app.add_subcommand("plan-debug", "dump a planner tree and path");
    add_common(plan_debug);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (train->parsed()) return cmd_train(opts);
        if (distill->parsed()) return cmd_distill(opts, trunk_path);
        if (eval_nav->parsed()) return cmd_eval_nav(opts, trunk_path, trials);
        if (explain->parsed()) return cmd_explain(opts, trunk_path, branch_path, states);
        if (metrics->parsed()) return cmd_metrics(opts, trunk_path, branch_path, states);
        if (plan_debug->parsed()) return cmd_plan_debug(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace attnav
