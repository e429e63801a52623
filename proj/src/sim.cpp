#include "navbench/sim.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "navbench/errors.hpp"
#include "navbench/policy.hpp"

namespace navbench {

std::string to_string(Action action) {
    switch (action) {
        case Action::MoveForward: return "MOVE_FORWARD";
        case Action::TurnLeft: return "TURN_LEFT";
        case Action::TurnRight: return "TURN_RIGHT";
        case Action::Stop: return "STOP";
    }
    return "STOP";
}

Action action_from_string(const std::string& name) {
    if (name == "MOVE_FORWARD") return Action::MoveForward;
    if (name == "TURN_LEFT") return Action::TurnLeft;
    if (name == "TURN_RIGHT") return Action::TurnRight;
    if (name == "STOP") return Action::Stop;
    throw ProtocolError("unknown action '" + name + "'");
}

std::string to_string(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::TargetReached: return "TARGET_REACHED";
        case TerminationReason::EarlyStopGoalVisible: return "EARLY_STOP_GOAL_VISIBLE";
        case TerminationReason::EarlyStopGoalNotVisible: return "EARLY_STOP_GOAL_NOT_VISIBLE";
        case TerminationReason::MaxStepsReached: return "MAX_STEPS_REACHED";
    }
    return "MAX_STEPS_REACHED";
}

TerminationReason termination_from_string(const std::string& name) {
    if (name == "TARGET_REACHED") return TerminationReason::TargetReached;
    if (name == "EARLY_STOP_GOAL_VISIBLE") return TerminationReason::EarlyStopGoalVisible;
    if (name == "EARLY_STOP_GOAL_NOT_VISIBLE") return TerminationReason::EarlyStopGoalNotVisible;
    if (name == "MAX_STEPS_REACHED") return TerminationReason::MaxStepsReached;
    throw ParseError("unknown termination reason '" + name + "'");
}

bool RewardParams::is_default() const {
    const RewardParams def;
    return success_weight == def.success_weight && angle_weight == def.angle_weight &&
           goal_radius == def.goal_radius && goal_angle_rad == def.goal_angle_rad &&
           slack == def.slack && collision_penalty == def.collision_penalty;
}

RewardBreakdown compute_reward(const StepContext& ctx, const RewardParams& params) {
    RewardBreakdown r;
    const bool stop = ctx.action == Action::Stop;
    if (stop && ctx.d_cur < params.goal_radius) r.success = params.success_weight;
    if (stop && ctx.theta_cur < params.goal_angle_rad) r.angle = params.angle_weight;
    r.angle_shaping = ctx.theta_hat_prev - ctx.theta_hat_cur;
    r.distance_shaping = ctx.d_prev - ctx.d_cur;
    r.slack = -params.slack;
    if (ctx.collided) r.collision = -params.collision_penalty;
    return r;
}

TerminationReason classify_termination(const SimState& state, bool stopped,
                                       const Episode& episode, const TriangleBvh& bvh,
                                       const Embodiment& embodiment) {
    if (state.success) return TerminationReason::TargetReached;
    if (stopped) {
        const Vec3d eye = state.position + Vec3d{0.0, embodiment.camera_height, 0.0};
        const Vec3d goal_eye = episode.goal_position + Vec3d{0.0, embodiment.camera_height, 0.0};
        return bvh.line_of_sight(eye, goal_eye) ? TerminationReason::EarlyStopGoalVisible
                                                : TerminationReason::EarlyStopGoalNotVisible;
    }
    return TerminationReason::MaxStepsReached;
}

SceneAssets::SceneAssets(Mesh mesh_in, NavGrid grid_in)
    : mesh(std::move(mesh_in)), grid(std::move(grid_in)),
      bvh(std::make_unique<TriangleBvh>(mesh)) {}

Simulator::Simulator(const SceneAssets& assets, const Embodiment& embodiment,
                     const RewardParams& reward, int max_steps)
    : assets_(assets), embodiment_(embodiment), reward_(reward), max_steps_(max_steps),
      intrinsics_(camera_intrinsics(embodiment)) {
    if (max_steps_ < 1) throw DomainError("simulator: max_steps must be >= 1");
}

const SimState& Simulator::reset(const Episode& episode) {
    const auto start_cell = snap(assets_.grid, episode.start_position);
    const auto goal_cell = snap(assets_.grid, episode.goal_position);
    if (!start_cell || !goal_cell)
        throw DomainError("reset: episode does not lie on this scene's walkable area");
    const uint16_t start_island =
        assets_.grid.island_id[assets_.grid.index(start_cell->ix, start_cell->iz)];
    const uint16_t goal_island =
        assets_.grid.island_id[assets_.grid.index(goal_cell->ix, goal_cell->iz)];
    if (start_island != 0 || goal_island != 0)
        throw DomainError("reset: episode endpoints are off the largest island");

    episode_ = episode;
    distance_field_.emplace(assets_.grid, episode.goal_position);

    state_ = SimState{};
    state_.position = episode.start_position;
    state_.yaw = wrap_angle(episode.start_yaw);
    state_.distance_to_goal = distance_field_->distance(state_.position);

    const double theta0 = std::abs(wrap_angle(state_.yaw - episode.goal_yaw));
    theta_hat_prev_ = state_.distance_to_goal < reward_.goal_radius ? theta0 : 0.0;
    last_action_.reset();
    return state_;
}

StepOutcome Simulator::step(Action action) {
    if (!episode_) throw DomainError("step: reset an episode first");
    if (state_.done) throw DomainError("step: episode already done");

    const double d_prev = state_.distance_to_goal;
    bool collided = false;

    switch (action) {
        case Action::TurnLeft:
            state_.yaw = wrap_angle(state_.yaw + embodiment_.turn_angle_rad());
            break;
        case Action::TurnRight:
            state_.yaw = wrap_angle(state_.yaw - embodiment_.turn_angle_rad());
            break;
        case Action::MoveForward: {
            const Vec3d target = state_.position + heading(state_.yaw) * embodiment_.forward_step;
            if (segment_on_island(assets_.grid, state_.position, target, 0)) {
                const auto floor_y = floor_height_on_island(assets_.grid, target, 0);
                state_.position = Vec3d{target.x, *floor_y, target.z};
            } else {
                collided = true;
            }
            break;
        }
        case Action::Stop:
            break;
    }

    state_.step_index += 1;
    state_.collided_last = collided;

    const double d_cur = distance_field_->distance(state_.position);
    const double theta_cur = std::abs(wrap_angle(state_.yaw - episode_->goal_yaw));
    const double theta_hat_cur = d_cur < reward_.goal_radius ? theta_cur : 0.0;

    StepContext ctx;
    ctx.d_prev = d_prev;
    ctx.d_cur = d_cur;
    ctx.theta_cur = theta_cur;
    ctx.theta_hat_prev = theta_hat_prev_;
    ctx.theta_hat_cur = theta_hat_cur;
    ctx.action = action;
    ctx.collided = collided;

    StepOutcome outcome;
    outcome.reward_terms = compute_reward(ctx, reward_);
    outcome.reward = outcome.reward_terms.total();
    outcome.collided = collided;

    state_.distance_to_goal = d_cur;
    state_.cumulative_reward += outcome.reward;
    state_.success = action == Action::Stop && d_cur <= reward_.goal_radius;
    state_.done = action == Action::Stop || state_.step_index >= max_steps_;
    theta_hat_prev_ = theta_hat_cur;
    last_action_ = action;

    outcome.done = state_.done;
    outcome.success = state_.success;
    outcome.distance_to_goal = d_cur;
    outcome.steps = state_.step_index;
    return outcome;
}

const Episode& Simulator::episode() const {
    if (!episode_) throw DomainError("simulator: no episode loaded");
    return *episode_;
}

TerminationReason Simulator::termination() const {
    if (!state_.done) throw DomainError("termination: episode not done");
    const bool stopped = last_action_ && *last_action_ == Action::Stop;
    return classify_termination(state_, stopped, *episode_, *assets_.bvh, embodiment_);
}

Pose Simulator::camera_pose(const Vec3d& position, double yaw) const {
    return Pose{position + Vec3d{0.0, embodiment_.camera_height, 0.0}, yaw};
}

Frame Simulator::observation() const {
    if (!episode_) throw DomainError("observation: reset an episode first");
    return render_frame(assets_.mesh, camera_pose(state_.position, state_.yaw), intrinsics_);
}

Frame Simulator::goal_frame() const {
    if (!episode_) throw DomainError("goal_frame: reset an episode first");
    return render_frame(assets_.mesh, camera_pose(episode_->goal_position, episode_->goal_yaw),
                        intrinsics_);
}

double Simulator::distance_to_goal(const Vec3d& position) const {
    if (!distance_field_) throw DomainError("distance_to_goal: reset an episode first");
    return distance_field_->distance(position);
}

namespace {

void log_step(std::ostream& out, const StepOutcome& outcome, Action action,
              const SimState& state) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "{\"step\":%d,\"action\":\"%s\",\"position\":[%.9g,%.9g,%.9g],"
                  "\"yaw\":%.9g,\"reward\":%.12g,\"collided\":%s}\n",
                  outcome.steps, to_string(action).c_str(), state.position.x, state.position.y,
                  state.position.z, state.yaw, outcome.reward,
                  outcome.collided ? "true" : "false");
    out << buf;
}

}  // namespace

EpisodeResult run_episode(const SceneAssets& assets, const Episode& episode,
                          const Embodiment& embodiment, PolicyInterface& policy,
                          const RewardParams& reward, int max_steps,
                          std::ostream* trajectory_log) {
    Simulator sim(assets, embodiment, reward, max_steps);
    EpisodeResult result;
    result.episode_id = episode.episode_id;

    const bool frames = policy.needs_observation_frames();
    const Frame empty;
    try {
        sim.reset(episode);
        policy.reset(frames ? sim.goal_frame() : empty);
        while (!sim.state().done) {
            const bool collided_before = sim.state().collided_last;
            const Action action =
                policy.act(frames ? sim.observation() : empty, collided_before);
            const StepOutcome outcome = sim.step(action);
            if (trajectory_log) log_step(*trajectory_log, outcome, action, sim.state());
        }
    } catch (const PolicyError& e) {
        result.aborted = true;
        result.error = e.what();
    } catch (const ProtocolError& e) {
        result.aborted = true;
        result.error = e.what();
    }

    result.steps = sim.state().step_index;
    result.dist_to_goal_m = sim.state().distance_to_goal;
    result.reward = sim.state().cumulative_reward;
    result.success = sim.state().success;
    if (!result.aborted && sim.state().done) result.termination = sim.termination();
    return result;
}

std::vector<EpisodeResult> run_episodes(const SceneAssets& assets,
                                        const std::vector<Episode>& episodes,
                                        const Embodiment& embodiment,
                                        const PolicyFactory& make_policy,
                                        const RewardParams& reward, int max_steps, int jobs,
                                        std::ostream* trajectory_log) {
    std::vector<EpisodeResult> results(episodes.size());
    if (episodes.empty()) return results;
    jobs = std::max(1, jobs);

    auto run_one = [&](size_t i, std::ostream* log) {
        try {
            auto policy = make_policy(episodes[i]);
            results[i] =
                run_episode(assets, episodes[i], embodiment, *policy, reward, max_steps, log);
        } catch (const PolicyError& e) {
            results[i].episode_id = episodes[i].episode_id;
            results[i].aborted = true;
            results[i].error = e.what();
        } catch (const ProtocolError& e) {
            results[i].episode_id = episodes[i].episode_id;
            results[i].aborted = true;
            results[i].error = e.what();
        }
    };

    if (jobs == 1) {
        for (size_t i = 0; i < episodes.size(); ++i) run_one(i, trajectory_log);
        return results;
    }

    // Per-episode buffers keep the combined log in episode order.
    std::vector<std::ostringstream> logs(trajectory_log ? episodes.size() : 0);
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= episodes.size()) return;
            try {
                run_one(i, trajectory_log ? &logs[i] : nullptr);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    const size_t thread_count = std::min<size_t>(static_cast<size_t>(jobs), episodes.size());
    pool.reserve(thread_count);
    for (size_t t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    if (trajectory_log)
        for (const auto& log : logs) *trajectory_log << log.str();
    return results;
}

void write_results_csv(const std::vector<EpisodeResult>& results, const std::string& path,
                       const RewardParams& reward) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open " + path + " for writing");
    if (!reward.is_default()) {
        char buf[320];
        std::snprintf(buf, sizeof(buf),
                      "# reward-overrides: success_weight=%.12g angle_weight=%.12g "
                      "goal_radius=%.12g goal_angle_rad=%.12g slack=%.12g "
                      "collision_penalty=%.12g\n",
                      reward.success_weight, reward.angle_weight, reward.goal_radius,
                      reward.goal_angle_rad, reward.slack, reward.collision_penalty);
        out << buf;
    }
    out << "episode_id,success,steps,dist_to_goal_m,termination,reward\n";
    for (const auto& r : results) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%lld,%d,%d,%.9g,%s,%.12g\n",
                      static_cast<long long>(r.episode_id), r.success ? 1 : 0, r.steps,
                      r.dist_to_goal_m,
                      r.aborted ? "ABORTED" : to_string(r.termination).c_str(), r.reward);
        out << buf;
    }
    if (!out) throw DomainError("failed writing " + path);
}

std::vector<EpisodeResult> read_results_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("results csv: cannot open " + path);

    std::vector<EpisodeResult> results;
    std::string line;
    bool header_seen = false;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "episode_id,success,steps,dist_to_goal_m,termination,reward")
                throw ParseError("results csv: unexpected header at line " +
                                 std::to_string(line_no) + " in " + path);
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 6)
            throw ParseError("results csv: expected 6 fields at line " +
                             std::to_string(line_no) + " in " + path);
        EpisodeResult r;
        try {
            r.episode_id = std::stoll(fields[0]);
            r.success = std::stoi(fields[1]) != 0;
            r.steps = std::stoi(fields[2]);
            r.dist_to_goal_m = std::stod(fields[3]);
            if (fields[4] == "ABORTED")
                r.aborted = true;
            else
                r.termination = termination_from_string(fields[4]);
            r.reward = std::stod(fields[5]);
        } catch (const std::invalid_argument&) {
            throw ParseError("results csv: bad field at line " + std::to_string(line_no) +
                             " in " + path);
        }
        results.push_back(std::move(r));
    }
    if (!header_seen) throw ParseError("results csv: missing header in " + path);
    return results;
}

}  // namespace navbench
