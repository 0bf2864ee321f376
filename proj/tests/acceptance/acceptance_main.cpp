// Acceptance suite: runs every release criterion end to end against the
// bundled room, reusing cached artifacts in the work directory when present
// (pass --fresh to retrain). Prints one PASS/FAIL line per criterion and
// exits nonzero if any fail.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include "attnav/branch.hpp"
#include "attnav/checkpoint.hpp"
#include "attnav/cli.hpp"
#include "attnav/config.hpp"
#include "attnav/dqn.hpp"
#include "attnav/fsutil.hpp"
#include "attnav/gradcheck.hpp"
#include "attnav/imageops.hpp"
#include "attnav/saliency.hpp"
#include "attnav/sha256.hpp"

using namespace attnav;
namespace fs = std::filesystem;

namespace {

struct CriterionResult {
    int id;
    bool pass;
    std::string detail;
};

std::vector<CriterionResult> g_results;

void report(int id, bool pass, const std::string& detail) {
    g_results.push_back({id, pass, detail});
    std::cout << "CRITERION " << id << ": " << (pass ? "PASS" : "FAIL") << " — " << detail << "\n";
    std::cout.flush();
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- criterion 1: gradient correctness over every layer kind ----

template <typename LayerT>
struct LayerHarness {
    LayerT& layer;
    TensorD input;
    TensorD readout;

    LayerHarness(LayerT& l, TensorD in, Rng& rng) : layer(l), input(std::move(in)) {
        readout = TensorD(layer.out_shape(input.shape));
        for (auto& v : readout.data) v = rng.uniform(-1.0, 1.0);
    }
    std::vector<ParamRef<double>> parameters() {
        std::vector<ParamRef<double>> ps;
        if constexpr (requires { layer.parameters(); })
            for (auto& p : layer.parameters()) ps.push_back(p);
        ps.push_back({"input", &input});
        return ps;
    }
    double loss() {
        TensorD y = layer.forward(input);
        double s = 0.0;
        for (size_t i = 0; i < y.data.size(); ++i) s += y.data[i] * readout.data[i];
        return s;
    }
    void grads() {
        for (auto& p : parameters()) p.tensor->zero_grad();
        layer.forward(input);
        input.grad = layer.backward(readout).data;
    }
};

struct ConcatHarness {
    ConcatChannels<double>& layer;
    TensorD a, b, readout;
    std::vector<ParamRef<double>> parameters() { return {{"a", &a}, {"b", &b}}; }
    double loss() {
        TensorD y = layer.forward(a, b);
        double s = 0;
        for (size_t i = 0; i < y.data.size(); ++i) s += y.data[i] * readout.data[i];
        return s;
    }
    void grads() {
        a.zero_grad();
        b.zero_grad();
        layer.forward(a, b);
        auto [da, db] = layer.backward(readout);
        a.grad = da.data;
        b.grad = db.data;
    }
};

struct TrunkHarness {
    DqnNetworkT<double>& net;
    TensorD frame;
    SubGoalPolar sg;
    std::array<double, 3> readout;
    std::vector<ParamRef<double>> parameters() { return net.parameters(); }
    double loss() {
        auto q = net.forward_q(frame, sg);
        return q[0] * readout[0] + q[1] * readout[1] + q[2] * readout[2];
    }
    void grads() {
        net.zero_grads();
        net.forward_q(frame, sg);
        net.backward_from_q(readout);
    }
};

TensorD random_tensor(std::vector<int> shape, Rng& rng, double away_from_zero = 0.0) {
    TensorD t(std::move(shape));
    for (auto& v : t.data) {
        do {
            v = rng.uniform(-1.0, 1.0);
        } while (std::abs(v) < away_from_zero);
    }
    return t;
}

void criterion_1_gradients() {
    auto start = std::chrono::steady_clock::now();
    Rng rng(1001);
    const double tol = 1e-3;
    double worst = 0.0;
    std::string worst_kind;
    int total_checked = 0;

    auto track = [&](const char* kind, const GradCheckReport& rep) {
        total_checked += rep.checked;
        if (rep.max_rel_err > worst) {
            worst = rep.max_rel_err;
            worst_kind = kind;
        }
    };

    {
        Conv2d<double> c("conv", 3, 8, 5, 2, 1);
        c.init_weights(rng);
        LayerHarness h(c, random_tensor({3, 16, 16}, rng), rng);
        track("conv2d", gradcheck<double>(h, rng, 120));
    }
    {
        FullyConnected<double> fc("fc", 40, 20);
        fc.init_weights(rng);
        LayerHarness h(fc, random_tensor({40}, rng), rng);
        track("fullyconnected", gradcheck<double>(h, rng, 120));
    }
    {
        Relu<double> r("relu");
        LayerHarness h(r, random_tensor({200}, rng, 0.05), rng);
        track("relu", gradcheck<double>(h, rng, 100));
    }
    {
        Sigmoid<double> s("sigmoid");
        LayerHarness h(s, random_tensor({200}, rng), rng);
        track("sigmoid", gradcheck<double>(h, rng, 100));
    }
    {
        Softmax<double> s("softmax");
        LayerHarness h(s, random_tensor({128}, rng), rng);
        track("softmax", gradcheck<double>(h, rng, 100));
    }
    {
        GlobalAvgPool<double> g("gap");
        LayerHarness h(g, random_tensor({4, 6, 6}, rng), rng);
        track("globalavgpool", gradcheck<double>(h, rng, 100));
    }
    {
        ConcatChannels<double> cat("cat");
        ConcatHarness h{cat, random_tensor({3, 6, 6}, rng), random_tensor({2, 6, 6}, rng),
                        random_tensor({5, 6, 6}, rng)};
        track("concat-channels", gradcheck<double>(h, rng, 100));
    }
    {
        BroadcastScalars<double> b("bc", 12, 12);
        LayerHarness h(b, random_tensor({2}, rng), rng);
        track("broadcast-scalars", gradcheck<double>(h, rng, 100));
    }
    {
        DqnNetworkT<double> net;
        net.init_weights(rng);
        SemanticFrame f(64, 64);
        for (auto& c : f.classes) c = static_cast<uint8_t>(rng.uniform_int(3));
        TrunkHarness h{net, encode_frame<double>(f), {0.5, 1.7},
                       {rng.uniform(), rng.uniform(), rng.uniform()}};
        track("dqn-trunk", gradcheck<double>(h, rng, 150));
    }

    double secs = elapsed_s(start);
    bool pass = worst < tol && secs < 60.0;
    report(1, pass, str("max rel err ", worst, " (", worst_kind, ") over ", total_checked,
                        " sampled parameters, 64-bit shadow mode, ", secs, " s"));
}

// ---- criterion 2: Eq. 2 rewards ----

void criterion_2_rewards() {
    WorldMap m;
    m.bounds = {0, 0, 10, 10};
    KinematicsConfig kin;
    RewardConfig rew;

    StepResult reach = step({5, 5, 0}, Action::kForward, {5.6, 5.0}, m, kin, rew);
    bool goal_ok = reach.reward == 30.0 && reach.event == StepEvent::kSubgoalReached;

    WorldMap blocked = m;
    blocked.furniture.push_back({5.3, 4.0, 6.0, 6.0});
    StepResult crash = step({5, 5, 0}, Action::kForward, {9, 5}, blocked, kin, rew);
    bool crash_ok = crash.reward == -5.0 && crash.terminal && crash.event == StepEvent::kCrash;

    StepResult fwd = step({5, 5, 0}, Action::kForward, {7, 5}, m, kin, rew);
    bool progress_ok = std::abs(fwd.reward - 0.2) < 1e-12;

    StepResult tl = step({5, 5, 0}, Action::kTurnLeft, {7, 5}, m, kin, rew);
    StepResult tr = step({5, 5, 0}, Action::kTurnRight, {7, 5}, m, kin, rew);
    bool turn_ok = tl.reward == 0.0 && tr.reward == 0.0;

    report(2, goal_ok && crash_ok && progress_ok && turn_ok,
           str("reach=+", reach.reward, " crash=", crash.reward, " progress=", fwd.reward,
               " turns=", tl.reward, "/", tr.reward));
}

// ---- criterion 3: schedules ----

void criterion_3_schedules() {
    RunConfig cfg;
    bool eps_ok = epsilon_at(cfg.dqn, 0) == 0.9 && std::abs(epsilon_at(cfg.dqn, 40000) - 0.5) < 1e-12 &&
                  std::abs(epsilon_at(cfg.dqn, 80000) - 0.1) < 1e-12;
    bool lr_ok = branch_lr_at(cfg.branch, 0) == 0.1 && branch_lr_at(cfg.branch, 50) == 0.01 &&
                 std::abs(branch_lr_at(cfg.branch, 75) - 0.001) < 1e-15;
    report(3, eps_ok && lr_ok,
           str("eps(0)=", epsilon_at(cfg.dqn, 0), " eps(4e4)=", epsilon_at(cfg.dqn, 40000),
               " eps(8e4)=", epsilon_at(cfg.dqn, 80000), "; lr(0/50/75)=", branch_lr_at(cfg.branch, 0),
               "/", branch_lr_at(cfg.branch, 50), "/", branch_lr_at(cfg.branch, 75)));
}

// ---- shared pipeline state ----

struct Pipeline {
    fs::path repo, work;
    RunConfig cfg;
    std::string cfg_path;
    WorldMap map;
    std::string sha_pre_distill;
};

bool ensure_artifacts(Pipeline& p, bool fresh) {
    fs::create_directories(p.work);
    std::string trunk_path = (p.work / "dqn_trunk.ckpt").string();
    std::string branch_path = (p.work / "branch.ckpt").string();
    std::string sha_path = (p.work / "trunk_sha_pre_distill.txt").string();

    if (fresh || !fs::exists(trunk_path)) {
        std::cout << "[pipeline] training stage 1 (" << p.cfg.dqn.episodes << " episodes)...\n";
        if (run_subcommand({"train", "--config", p.cfg_path, "--out", p.work.string()}) != 0)
            return false;
        fs::remove(branch_path);  // stale stage-2 artifact, if any
        fs::remove(sha_path);
    }

    if (!fs::exists(branch_path) || !fs::exists(sha_path)) {
        DqnNetwork probe(p.cfg.dqn.subgoal_distance_max_m);
        auto params = probe.parameters();
        load_checkpoint(trunk_path, params);
        atomic_write_file(sha_path, sha256_hex(parameter_bytes(params)));
        std::cout << "[pipeline] distilling the attention branch (" << p.cfg.branch.epochs
                  << " epochs)...\n";
        if (run_subcommand({"distill", "--config", p.cfg_path, "--out", p.work.string()}) != 0)
            return false;
    }
    auto sha_bytes = read_file_bytes(sha_path);
    p.sha_pre_distill.assign(sha_bytes.begin(), sha_bytes.end());
    return true;
}

// ---- criteria 4-10 ----

void criterion_4_frozen(Pipeline& p) {
    DqnNetwork trunk(p.cfg.dqn.subgoal_distance_max_m);
    auto params = trunk.parameters();
    CheckpointInfo info = load_checkpoint((p.work / "dqn_trunk.ckpt").string(), params);
    std::string sha_now = sha256_hex(parameter_bytes(params));
    bool pass = info.frozen && sha_now == p.sha_pre_distill;
    report(4, pass, str("sha256(theta_rl) pre-distill ", p.sha_pre_distill.substr(0, 16), "..., now ",
                        sha_now.substr(0, 16), "..., frozen flag ", info.frozen ? "set" : "MISSING"));
}

void criterion_5_navigation(Pipeline& p, DqnNetwork& trunk) {
    auto start = std::chrono::steady_clock::now();
    NavStats stats = evaluate_navigation(trunk, p.map, 50, p.cfg);
    bool pass = stats.successes >= 40 && stats.collisions <= 5 && stats.trials + stats.skipped == 50;
    report(5, pass,
           str(stats.successes, "/50 successes, ", stats.collisions, " collisions, avg dist ",
               stats.avg_final_distance, " m, ", stats.skipped, " skipped, ", elapsed_s(start), " s"));
}

void criterion_6_distillation(Pipeline& p) {
    auto log_bytes = read_file_bytes((p.work / "distill_log.csv").string());
    std::string text(log_bytes.begin(), log_bytes.end());
    // last row, column 5 = holdout agreement
    double holdout = -1.0;
    std::istringstream in(text);
    std::string line, last;
    std::getline(in, line);  // header
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    if (!last.empty()) {
        size_t pos = last.rfind(',');
        holdout = std::stod(last.substr(pos + 1));
    }
    report(6, holdout >= 0.90, str("held-out agreement ", holdout, " after ", p.cfg.branch.epochs,
                                   "-epoch schedule (chance 0.33)"));
}

struct SaliencySets {
    std::vector<EvalState> states;
    std::vector<Tensor> branch, vbp, random;
};

SaliencySets build_saliencies(Pipeline& p, DqnNetwork& trunk, AttentionBranch& branch, int n) {
    SaliencySets s;
    s.states = collect_eval_states(trunk, p.map, n, p.cfg, "evalstates");
    Rng rand_rng = Rng(p.cfg.seed).derive("randsal");
    for (int i = 0; i < n; ++i) {
        const auto& st = s.states[i];
        s.branch.push_back(explain_forward(trunk, branch, st.frame, st.subgoal).attention);
        s.vbp.push_back(visual_backprop(trunk, st.frame, st.subgoal));
        Rng r = rand_rng.derive(static_cast<uint64_t>(i));
        s.random.push_back(random_saliency(st.frame.height, st.frame.width, r));
    }
    return s;
}

void criterion_7_8_curves(Pipeline& p, DqnNetwork& trunk, AttentionBranch& branch) {
    auto start = std::chrono::steady_clock::now();
    SaliencySets s = build_saliencies(p, trunk, branch, p.cfg.eval.states);
    int steps = p.cfg.eval.curve_steps;

    MetricCurve del_b = deletion_curve(trunk, s.states, s.branch, steps);
    MetricCurve del_v = deletion_curve(trunk, s.states, s.vbp, steps);
    MetricCurve del_r = deletion_curve(trunk, s.states, s.random, steps);
    MetricCurve ins_b = insertion_curve(trunk, s.states, s.branch, steps);
    MetricCurve ins_v = insertion_curve(trunk, s.states, s.vbp, steps);
    MetricCurve ins_r = insertion_curve(trunk, s.states, s.random, steps);

    bool margin_del = del_b.auc <= del_r.auc - 0.03;
    bool margin_ins = ins_b.auc >= ins_r.auc + 0.03;
    bool beats_vbp = (del_b.auc < del_v.auc) || (ins_b.auc > ins_v.auc);
    report(7, margin_del && margin_ins && beats_vbp,
           str("deletion auc b/v/r = ", del_b.auc, "/", del_v.auc, "/", del_r.auc,
               "; insertion auc b/v/r = ", ins_b.auc, "/", ins_v.auc, "/", ins_r.auc, "; ",
               elapsed_s(start), " s over ", p.cfg.eval.states, " states"));

    // criterion 8 on a subset: anchors are exact, ranking invariance under squaring
    int subset = std::min<int>(250, static_cast<int>(s.states.size()));
    std::vector<EvalState> sub_states(s.states.begin(), s.states.begin() + subset);
    std::vector<Tensor> sub_sal(s.branch.begin(), s.branch.begin() + subset);
    std::vector<Tensor> squared = sub_sal;
    for (auto& m : squared)
        for (auto& v : m.data) v = v * v;

    MetricCurve d1 = deletion_curve(trunk, sub_states, sub_sal, steps);
    MetricCurve d2 = deletion_curve(trunk, sub_states, squared, steps);
    MetricCurve i1 = insertion_curve(trunk, sub_states, sub_sal, steps);
    MetricCurve i2 = insertion_curve(trunk, sub_states, squared, steps);

    bool anchors = del_b.accuracy.front() == 1.0 && del_v.accuracy.front() == 1.0 &&
                   del_r.accuracy.front() == 1.0 && ins_b.accuracy.back() == 1.0 &&
                   ins_v.accuracy.back() == 1.0 && ins_r.accuracy.back() == 1.0 &&
                   d1.accuracy.front() == 1.0 && i1.accuracy.back() == 1.0;
    bool invariant = d1.accuracy == d2.accuracy && i1.accuracy == i2.accuracy;
    report(8, anchors && invariant,
           str("deletion f=0 accuracy 1.0: ", anchors ? "yes" : "no",
               "; squared-map curves identical: ", invariant ? "yes" : "no"));
}

void criterion_9_angle_sensitivity(Pipeline& p, DqnNetwork& trunk, AttentionBranch& branch) {
    auto start = std::chrono::steady_clock::now();
    std::vector<EvalState> probes = collect_eval_states(trunk, p.map, 100, p.cfg, "probes");
    int differing = 0;
    double col_delta_sum = 0.0;
    for (const auto& st : probes) {
        auto maps = angle_sweep(trunk, branch, st.frame,
                                {std::numbers::pi / 4, -std::numbers::pi / 4}, 1.0);
        if (mean_abs_diff(maps[0], maps[1]) > 0.01) ++differing;
        col_delta_sum += mean_mass_column(maps[0]) - mean_mass_column(maps[1]);
    }
    double avg_delta = col_delta_sum / probes.size();
    bool pass = differing >= 80 && avg_delta >= 0.0;
    report(9, pass,
           str(differing, "/100 probes differ (L1 > 0.01); mean-column(+pi/4) - mean-column(-pi/4) = ",
               avg_delta, " (>= 0 required); ", elapsed_s(start), " s"));
}

void criterion_10_lateralization(Pipeline& p, DqnNetwork& trunk, AttentionBranch& branch) {
    auto start = std::chrono::steady_clock::now();
    std::vector<EvalState> states = collect_eval_states(trunk, p.map, p.cfg.eval.states, p.cfg,
                                                        "evalstates");
    ActionAverages avg = averaged_attention_per_action(trunk, branch, states);
    int left = static_cast<int>(Action::kTurnLeft), right = static_cast<int>(Action::kTurnRight);
    bool have_both = avg.counts[left] > 0 && avg.counts[right] > 0;
    bool pass = have_both && avg.mean_mass_column[left] < avg.mean_mass_column[right];
    report(10, pass,
           str("mean attention column: turn_left=", avg.mean_mass_column[left], " (n=",
               avg.counts[left], "), turn_right=", avg.mean_mass_column[right], " (n=",
               avg.counts[right], "), forward n=", avg.counts[0], "; ", elapsed_s(start), " s"));
}

// ---- criterion 11: planner ----

void criterion_11_planner() {
    auto start = std::chrono::steady_clock::now();
    WorldMap empty;
    empty.bounds = {0, 0, 10, 10};
    PlannerConfig cfg;
    cfg.max_iterations = 5000;

    std::vector<double> costs;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(9000 + seed);
        PlanResult res = plan({1, 1}, {9, 9}, empty, cfg, rng);
        if (res.feasible) costs.push_back(res.cost);
    }
    bool all_feasible = costs.size() == 20;
    std::sort(costs.begin(), costs.end());
    double median = all_feasible ? (costs[9] + costs[10]) / 2.0 : 1e9;
    double bound = 1.05 * std::sqrt(128.0);

    WorldMap blocked = empty;
    blocked.furniture.push_back({0, 4.5, 10, 5.5});
    Rng brng(17);
    bool blocked_infeasible = !plan({5, 1}, {5, 9}, blocked, cfg, brng).feasible;

    WorldMap audit_map = empty;
    audit_map.furniture.push_back({3, 3, 7, 4});
    PlannerConfig audit_cfg;
    audit_cfg.max_iterations = 500;
    audit_cfg.audit_costs = true;
    bool audit_ok = true;
    std::string audit_msg;
    try {
        Rng arng(23);
        plan({1, 1}, {9, 9}, audit_map, audit_cfg, arng);
    } catch (const std::exception& e) {
        audit_ok = false;
        audit_msg = e.what();
    }

    bool pass = all_feasible && median <= bound && blocked_infeasible && audit_ok;
    report(11, pass,
           str("20-seed median cost ", median, " vs bound ", bound, " (Euclid ", std::sqrt(128.0),
               "); blocked infeasible: ", blocked_infeasible ? "yes" : "no",
               "; 500-iteration audit: ", audit_ok ? "clean" : audit_msg, "; ", elapsed_s(start), " s"));
}

// ---- criterion 12: determinism ----

void criterion_12_determinism(Pipeline& p) {
    auto start = std::chrono::steady_clock::now();
    RunConfig det = p.cfg;
    det.dqn.episodes = 500;
    det.branch.epochs = 5;
    det.branch.harvest_episodes = 60;
    det.eval.states = 50;
    std::string det_cfg = (p.work / "determinism.ini").string();
    atomic_write_file(det_cfg, render_config(det));

    auto run_pipeline = [&](const std::string& out) -> bool {
        fs::remove_all(out);
        return run_subcommand({"train", "--config", det_cfg, "--out", out}) == 0 &&
               run_subcommand({"distill", "--config", det_cfg, "--out", out}) == 0 &&
               run_subcommand({"metrics", "--config", det_cfg, "--out", out}) == 0;
    };

    std::string a = (p.work / "det_a").string();
    std::string b = (p.work / "det_b").string();
    bool ran = run_pipeline(a) && run_pipeline(b);

    std::vector<std::string> artifacts = {"dqn_trunk.ckpt", "train_log.csv",   "branch.ckpt",
                                          "distill_log.csv", "deletion.csv",   "insertion.csv",
                                          "auc_summary.csv"};
    std::string mismatch;
    if (ran) {
        for (const auto& f : artifacts) {
            if (read_file_bytes(a + "/" + f) != read_file_bytes(b + "/" + f)) {
                mismatch += " " + f;
            }
        }
    }
    bool pass = ran && mismatch.empty();
    report(12, pass,
           str("two train(500)->distill(5)->metrics(50) runs, ", artifacts.size(),
               " artifacts compared", ran ? (mismatch.empty() ? ", all bitwise identical" :
                                             ", MISMATCH:" + mismatch)
                                          : ", pipeline failed",
               "; ", elapsed_s(start), " s"));
}

}  // namespace

int main(int argc, char** argv) {
    fs::path repo = ".";
    fs::path work = "acceptance_work";
    bool fresh = false;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--repo" && i + 1 < argc)
            repo = argv[++i];
        else if (arg == "--work" && i + 1 < argc)
            work = argv[++i];
        else if (arg == "--fresh")
            fresh = true;
        else {
            std::cerr << "usage: acceptance [--repo DIR] [--work DIR] [--fresh]\n";
            return 2;
        }
    }

    criterion_1_gradients();
    criterion_2_rewards();
    criterion_3_schedules();

    Pipeline p;
    p.repo = repo;
    p.work = work;
    p.cfg = load_config((repo / "configs" / "desk.ini").string());
    p.cfg.sim.map_file = (repo / "maps" / "room8x8.map").string();
    fs::create_directories(work);
    p.cfg_path = (work / "desk.ini").string();
    atomic_write_file(p.cfg_path, render_config(p.cfg));
    p.map = load_map(p.cfg.sim.map_file);
    p.map.validate(p.cfg.sim.robot_radius_m);

    if (!ensure_artifacts(p, fresh)) {
        std::cout << "PIPELINE FAILED — criteria 4-10,12 not evaluated\n";
        for (int id : {4, 5, 6, 7, 8, 9, 10}) report(id, false, "pipeline failed");
        criterion_11_planner();
        report(12, false, "pipeline failed");
    } else {
        DqnNetwork trunk(p.cfg.dqn.subgoal_distance_max_m);
        {
            auto params = trunk.parameters();
            CheckpointInfo info = load_checkpoint((p.work / "dqn_trunk.ckpt").string(), params);
            trunk.set_frozen(info.frozen);
        }
        AttentionBranch branch;
        {
            auto params = branch.parameters();
            load_checkpoint((p.work / "branch.ckpt").string(), params);
        }

        criterion_4_frozen(p);
        criterion_5_navigation(p, trunk);
        criterion_6_distillation(p);
        criterion_7_8_curves(p, trunk, branch);
        criterion_9_angle_sensitivity(p, trunk, branch);
        criterion_10_lateralization(p, trunk, branch);
        criterion_11_planner();
        criterion_12_determinism(p);
    }

    int failed = 0;
    std::ostringstream summary;
    for (const auto& r : g_results) {
        if (!r.pass) ++failed;
        summary << "CRITERION " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << " — " << r.detail
                << "\n";
    }
    atomic_write_file((work / "acceptance_report.txt").string(), summary.str());
    std::cout << (failed == 0 ? "ALL CRITERIA PASS" : str(failed, " CRITERIA FAILED")) << "\n";
    return failed == 0 ? 0 : 1;
}
