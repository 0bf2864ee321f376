#include "attnav/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <variant>
#include <vector>

#include "attnav/common.hpp"

namespace attnav {

namespace {

struct Binding {
    std::string section;  // "" = top level
    std::string key;
    std::variant<int*, double*, uint64_t*, std::string*> target;
};

std::vector<Binding> bindings(RunConfig& c) {
    return {
        {"", "seed", &c.seed},
        {"sim", "map_file", &c.sim.map_file},
        {"sim", "frame_size", &c.sim.frame_size},
        {"sim", "fov_deg", &c.sim.fov_deg},
        {"sim", "step_length_m", &c.sim.step_length_m},
        {"sim", "turn_deg", &c.sim.turn_deg},
        {"sim", "robot_radius_m", &c.sim.robot_radius_m},
        {"sim", "goal_radius_m", &c.sim.goal_radius_m},
        {"sim", "r_goal", &c.sim.r_goal},
        {"sim", "r_crash", &c.sim.r_crash},
        {"sim", "progress_scale", &c.sim.progress_scale},
        {"sim", "max_steps_per_leg", &c.sim.max_steps_per_leg},
        {"sim", "render_height_scale", &c.sim.render_height_scale},
        {"planner", "max_iterations", &c.planner.max_iterations},
        {"planner", "steer_step_m", &c.planner.steer_step_m},
        {"planner", "goal_bias", &c.planner.goal_bias},
        {"planner", "goal_tolerance_m", &c.planner.goal_tolerance_m},
        {"planner", "clearance_margin_m", &c.planner.clearance_margin_m},
        {"planner", "subgoal_spacing_m", &c.planner.subgoal_spacing_m},
        {"planner", "rewire_gamma", &c.planner.rewire_gamma},
        {"dqn", "episodes", &c.dqn.episodes},
        {"dqn", "gamma", &c.dqn.gamma},
        {"dqn", "replay_capacity", &c.dqn.replay_capacity},
        {"dqn", "batch_size", &c.dqn.batch_size},
        {"dqn", "train_every", &c.dqn.train_every},
        {"dqn", "warmup_transitions", &c.dqn.warmup_transitions},
        {"dqn", "target_sync_steps", &c.dqn.target_sync_steps},
        {"dqn", "learning_rate", &c.dqn.learning_rate},
        {"dqn", "rms_decay", &c.dqn.rms_decay},
        {"dqn", "rms_epsilon", &c.dqn.rms_epsilon},
        {"dqn", "epsilon_start", &c.dqn.epsilon_start},
        {"dqn", "epsilon_end", &c.dqn.epsilon_end},
        {"dqn", "epsilon_anneal_episodes", &c.dqn.epsilon_anneal_episodes},
        {"dqn", "subgoal_distance_max_m", &c.dqn.subgoal_distance_max_m},
        {"dqn", "min_start_goal_dist_m", &c.dqn.min_start_goal_dist_m},
        {"dqn", "threads", &c.dqn.threads},
        {"branch", "epochs", &c.branch.epochs},
        {"branch", "batch_size", &c.branch.batch_size},
        {"branch", "learning_rate", &c.branch.learning_rate},
        {"branch", "momentum", &c.branch.momentum},
        {"branch", "lr_drop1_epoch", &c.branch.lr_drop1_epoch},
        {"branch", "lr_drop2_epoch", &c.branch.lr_drop2_epoch},
        {"branch", "harvest_episodes", &c.branch.harvest_episodes},
        {"branch", "harvest_epsilon", &c.branch.harvest_epsilon},
        {"branch", "holdout_fraction", &c.branch.holdout_fraction},
        {"eval", "trials", &c.eval.trials},
        {"eval", "states", &c.eval.states},
        {"eval", "curve_steps", &c.eval.curve_steps},
        {"eval", "explain_states", &c.eval.explain_states},
    };
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

void assign(const Binding& b, const std::string& value, const std::string& where) {
    try {
        if (std::holds_alternative<int*>(b.target)) {
            size_t pos = 0;
            int v = std::stoi(value, &pos);
            require(pos == value.size(), "trailing characters");
            *std::get<int*>(b.target) = v;
        } else if (std::holds_alternative<double*>(b.target)) {
            size_t pos = 0;
            double v = std::stod(value, &pos);
            require(pos == value.size() && std::isfinite(v), "not a finite number");
            *std::get<double*>(b.target) = v;
        } else if (std::holds_alternative<uint64_t*>(b.target)) {
            size_t pos = 0;
            unsigned long long v = std::stoull(value, &pos);
            require(pos == value.size(), "trailing characters");
            *std::get<uint64_t*>(b.target) = v;
        } else {
            *std::get<std::string*>(b.target) = value;
        }
    } catch (const std::exception&) {
        throw std::runtime_error(str(where, ": invalid value `", value, "` for ", b.key));
    }
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    auto binds = bindings(cfg);
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::string where = str(origin, ":", lineno);
        if (line.front() == '[') {
            require(line.back() == ']', str(where, ": malformed section header"));
            section = trim(line.substr(1, line.size() - 2));
            bool known = false;
            for (const auto& b : binds) known = known || b.section == section;
            require(known, str(where, ": unknown section [", section, "]"));
            continue;
        }
        auto eq = line.find('=');
        require(eq != std::string::npos, str(where, ": expected `key = value`"));
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        require(!key.empty() && !value.empty(), str(where, ": expected `key = value`"));
        bool matched = false;
        for (const auto& b : binds) {
            if (b.section == section && b.key == key) {
                assign(b, value, where);
                matched = true;
                break;
            }
        }
        require(matched, str(where, ": unknown key `", key, "` in section [",
                             section.empty() ? "<top>" : section, "]"));
    }
    validate_config(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), str("config: cannot open ", path));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

std::string render_config(const RunConfig& cfg) {
    RunConfig copy = cfg;
    auto binds = bindings(copy);
    std::ostringstream os;
    os.precision(17);
    std::string section;
    for (const auto& b : binds) {
        if (b.section != section) {
            section = b.section;
            os << "[" << section << "]\n";
        }
        os << b.key << " = ";
        if (std::holds_alternative<int*>(b.target))
            os << *std::get<int*>(b.target);
        else if (std::holds_alternative<double*>(b.target))
            os << *std::get<double*>(b.target);
        else if (std::holds_alternative<uint64_t*>(b.target))
            os << *std::get<uint64_t*>(b.target);
        else
            os << *std::get<std::string*>(b.target);
        os << "\n";
    }
    return os.str();
}

void validate_config(const RunConfig& c) {
    require(c.sim.frame_size > 0, "config: sim.frame_size must be positive");
    require(c.sim.fov_deg > 0 && c.sim.fov_deg < 180, "config: sim.fov_deg must be in (0,180)");
    require(c.sim.step_length_m > 0, "config: sim.step_length_m must be positive");
    require(c.sim.robot_radius_m > 0, "config: sim.robot_radius_m must be positive");
    require(c.sim.goal_radius_m > 0, "config: sim.goal_radius_m must be positive");
    require(c.sim.r_goal > 0 && c.sim.r_crash < 0, "config: rewards must satisfy r_goal > 0 > r_crash");
    require(c.sim.max_steps_per_leg > 0, "config: sim.max_steps_per_leg must be positive");
    require(c.planner.max_iterations > 0, "config: planner.max_iterations must be positive");
    require(c.planner.steer_step_m > 0, "config: planner.steer_step_m must be positive");
    require(c.planner.goal_bias >= 0 && c.planner.goal_bias < 1,
            "config: planner.goal_bias must be in [0,1)");
    require(c.planner.subgoal_spacing_m > 0, "config: planner.subgoal_spacing_m must be positive");
    require(c.dqn.gamma > 0 && c.dqn.gamma < 1, "config: dqn.gamma must be in (0,1)");
    require(c.dqn.replay_capacity > 0, "config: dqn.replay_capacity must be positive");
    require(c.dqn.batch_size > 0, "config: dqn.batch_size must be positive");
    require(c.dqn.train_every > 0, "config: dqn.train_every must be positive");
    require(c.dqn.learning_rate > 0, "config: dqn.learning_rate must be positive");
    require(c.dqn.epsilon_start >= 0 && c.dqn.epsilon_start <= 1 && c.dqn.epsilon_end >= 0 &&
                c.dqn.epsilon_end <= 1,
            "config: dqn epsilon endpoints must be in [0,1]");
    require(c.dqn.epsilon_anneal_episodes > 0, "config: dqn.epsilon_anneal_episodes must be positive");
    require(c.dqn.subgoal_distance_max_m > 0, "config: dqn.subgoal_distance_max_m must be positive");
    require(c.branch.epochs > 0, "config: branch.epochs must be positive");
    require(c.branch.batch_size > 0, "config: branch.batch_size must be positive");
    require(c.branch.learning_rate > 0, "config: branch.learning_rate must be positive");
    require(c.branch.holdout_fraction > 0 && c.branch.holdout_fraction < 1,
            "config: branch.holdout_fraction must be in (0,1)");
    require(c.branch.harvest_episodes > 0, "config: branch.harvest_episodes must be positive");
    require(c.eval.trials > 0 && c.eval.states > 0, "config: eval counts must be positive");
    require(c.eval.curve_steps > 1, "config: eval.curve_steps must exceed 1");
}

}  // namespace attnav
