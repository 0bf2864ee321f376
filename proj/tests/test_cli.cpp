#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "attnav/cli.hpp"
#include "attnav/config.hpp"
#include "attnav/fsutil.hpp"

using namespace attnav;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("attnav_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

// tiny end-to-end config: minutes of compute, not hours
std::string tiny_config(const TempDir& tmp) {
    RunConfig cfg;
    cfg.seed = 4;
    cfg.sim.map_file = std::string(ATTNAV_REPO_DIR) + "/maps/room8x8.map";
    cfg.planner.max_iterations = 300;
    cfg.dqn.episodes = 6;
    cfg.dqn.warmup_transitions = 60;
    cfg.dqn.batch_size = 8;
    cfg.branch.epochs = 2;
    cfg.branch.harvest_episodes = 4;
    cfg.eval.states = 12;
    cfg.eval.curve_steps = 10;
    cfg.eval.explain_states = 1;
    cfg.eval.trials = 3;
    std::string path = tmp.file("tiny.ini");
    atomic_write_file(path, render_config(cfg));
    return path;
}

}  // namespace

TEST_CASE("unknown subcommands and missing checkpoints fail cleanly") {
    CHECK(run_subcommand({"frobnicate"}) != 0);
    CHECK(run_subcommand({}) != 0);

    TempDir tmp;
    std::string cfg = tiny_config(tmp);
    // distill before train: refused because the trunk checkpoint is missing
    CHECK(run_subcommand({"distill", "--config", cfg, "--out", tmp.file("out")}) != 0);
    CHECK(run_subcommand({"metrics", "--config", cfg, "--out", tmp.file("out")}) != 0);
}

TEST_CASE("malformed config is rejected with its location") {
    TempDir tmp;
    atomic_write_file(tmp.file("bad.ini"), std::string("[dqn]\nepisodes = many\n"));
    CHECK(run_subcommand({"train", "--config", tmp.file("bad.ini"), "--out", tmp.file("out")}) != 0);
}

TEST_CASE("pipeline subcommands produce their artifacts") {
    TempDir tmp;
    std::string cfg = tiny_config(tmp);
    std::string out = tmp.file("out");

    REQUIRE(run_subcommand({"train", "--config", cfg, "--out", out}) == 0);
    CHECK(fs::exists(fs::path(out) / "dqn_trunk.ckpt"));
    CHECK(fs::exists(fs::path(out) / "train_log.csv"));

    REQUIRE(run_subcommand({"distill", "--config", cfg, "--out", out}) == 0);
    CHECK(fs::exists(fs::path(out) / "branch.ckpt"));
    CHECK(fs::exists(fs::path(out) / "distill_log.csv"));

    REQUIRE(run_subcommand({"eval-nav", "--config", cfg, "--out", out, "--trials", "2"}) == 0);
    CHECK(fs::exists(fs::path(out) / "nav_stats.csv"));

    REQUIRE(run_subcommand({"metrics", "--config", cfg, "--out", out, "--states", "8"}) == 0);
    CHECK(fs::exists(fs::path(out) / "deletion.csv"));
    CHECK(fs::exists(fs::path(out) / "insertion.csv"));
    CHECK(fs::exists(fs::path(out) / "auc_summary.csv"));

    auto auc = read_file_bytes((fs::path(out) / "auc_summary.csv").string());
    std::string auc_text(auc.begin(), auc.end());
    CHECK(auc_text.find("deletion,branch") != std::string::npos);
    CHECK(auc_text.find("insertion,random") != std::string::npos);
    CHECK(auc_text.find("visualbackprop") != std::string::npos);

    REQUIRE(run_subcommand({"explain", "--config", cfg, "--out", out, "--states", "1"}) == 0);
    CHECK(fs::exists(fs::path(out) / "explain" / "state_0" / "attention.ppm"));
    CHECK(fs::exists(fs::path(out) / "explain" / "state_0" / "angle_front.ppm"));
    CHECK(fs::exists(fs::path(out) / "explain" / "action_summary.csv"));

    REQUIRE(run_subcommand({"plan-debug", "--config", cfg, "--out", out}) == 0);
    CHECK(fs::exists(fs::path(out) / "plan_tree.txt"));
    CHECK(fs::exists(fs::path(out) / "plan_path.txt"));
}

TEST_CASE("seed override changes artifacts, same seed reproduces them") {
    TempDir tmp;
    std::string cfg = tiny_config(tmp);

    REQUIRE(run_subcommand({"train", "--config", cfg, "--out", tmp.file("a"), "--seed", "11"}) == 0);
    REQUIRE(run_subcommand({"train", "--config", cfg, "--out", tmp.file("b"), "--seed", "11"}) == 0);
    REQUIRE(run_subcommand({"train", "--config", cfg, "--out", tmp.file("c"), "--seed", "12"}) == 0);

    auto a = read_file_bytes(tmp.file("a") + "/dqn_trunk.ckpt");
    auto b = read_file_bytes(tmp.file("b") + "/dqn_trunk.ckpt");
    auto c = read_file_bytes(tmp.file("c") + "/dqn_trunk.ckpt");
    CHECK(a == b);
    CHECK(a != c);
}
