#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "navbench/bvh.hpp"
#include "navbench/embodiment.hpp"
#include "navbench/episodes.hpp"
#include "navbench/navgrid.hpp"
#include "navbench/render.hpp"

namespace navbench {

enum class Action { MoveForward, TurnLeft, TurnRight, Stop };

std::string to_string(Action action);
Action action_from_string(const std::string& name);

struct RewardParams {
    double success_weight = 5.0;       // on STOP inside the goal radius
    double angle_weight = 5.0;         // on STOP inside the goal angle
    double goal_radius = 1.0;          // meters
    double goal_angle_rad = deg_to_rad(25.0);
    double slack = 0.01;               // per-step penalty
    double collision_penalty = 0.03;

    bool is_default() const;
};

struct StepContext {
    double d_prev = 0.0;           // geodesic distance to goal before the step
    double d_cur = 0.0;            // and after
    double theta_cur = 0.0;        // |wrapped(yaw - goal_yaw)|, [0, pi]
    double theta_hat_prev = 0.0;   // gated angle shaping value before the step
    double theta_hat_cur = 0.0;    // and after
    Action action = Action::Stop;
    bool collided = false;
};

struct RewardBreakdown {
    double success = 0.0;
    double angle = 0.0;
    double angle_shaping = 0.0;
    double distance_shaping = 0.0;
    double slack = 0.0;        // stored negative
    double collision = 0.0;    // stored negative

    double total() const {
        return success + angle + angle_shaping + distance_shaping + slack + collision;
    }
};

RewardBreakdown compute_reward(const StepContext& ctx, const RewardParams& params);

enum class TerminationReason {
    TargetReached,
    EarlyStopGoalVisible,
    EarlyStopGoalNotVisible,
    MaxStepsReached,
};

std::string to_string(TerminationReason reason);
TerminationReason termination_from_string(const std::string& name);

struct SimState {
    Vec3d position;
    double yaw = 0.0;
    int step_index = 0;
    double cumulative_reward = 0.0;
    bool collided_last = false;
    bool done = false;
    bool success = false;
    double distance_to_goal = 0.0;
};

// Success wins; otherwise an explicit STOP is classified by goal visibility
// (line of sight between the two camera points), else the step cap was hit.
TerminationReason classify_termination(const SimState& state, bool stopped,
                                       const Episode& episode, const TriangleBvh& bvh,
                                       const Embodiment& embodiment);

struct StepOutcome {
    RewardBreakdown reward_terms;
    double reward = 0.0;
    bool done = false;
    bool success = false;
    bool collided = false;
    double distance_to_goal = 0.0;
    int steps = 0;
};

struct EpisodeResult {
    int64_t episode_id = 0;
    bool success = false;
    int steps = 0;
    double dist_to_goal_m = 0.0;
    TerminationReason termination = TerminationReason::MaxStepsReached;
    double reward = 0.0;       // cumulative
    bool aborted = false;      // policy failure; excluded from success rates
    std::string error;
};

inline constexpr int kMaxStepsSim = 1000;
inline constexpr int kMaxStepsReal = 100;

// Immutable per-scene data shared by simulator instances. Pinned in place:
// the BVH references the mesh member.
struct SceneAssets {
    Mesh mesh;  // y-up
    NavGrid grid;
    std::unique_ptr<TriangleBvh> bvh;

    SceneAssets(Mesh mesh_in, NavGrid grid_in);
    SceneAssets(const SceneAssets&) = delete;
    SceneAssets& operator=(const SceneAssets&) = delete;
    SceneAssets(SceneAssets&&) = delete;
    SceneAssets& operator=(SceneAssets&&) = delete;
};

// Discrete-action simulator for one episode at a time. Holds references to
// the scene assets; one instance per concurrent episode.
class Simulator {
  public:
    Simulator(const SceneAssets& assets, const Embodiment& embodiment,
              const RewardParams& reward = RewardParams{}, int max_steps = kMaxStepsSim);

    // Places the agent at the episode start and prepares goal distances.
    const SimState& reset(const Episode& episode);

    StepOutcome step(Action action);

    const SimState& state() const { return state_; }
    const Episode& episode() const;
    TerminationReason termination() const;  // valid once done

    // Rendered observation at the current pose (camera at camera_height).
    Frame observation() const;
    // Rendered frame at the goal pose; identical parameters to observation.
    Frame goal_frame() const;

    double distance_to_goal(const Vec3d& position) const;

  private:
    Pose camera_pose(const Vec3d& position, double yaw) const;

    const SceneAssets& assets_;
    Embodiment embodiment_;
    RewardParams reward_;
    int max_steps_;
    Intrinsics intrinsics_;

    std::optional<Episode> episode_;
    std::optional<DistanceField> distance_field_;
    SimState state_;
    double theta_hat_prev_ = 0.0;
    std::optional<Action> last_action_;
};

// Policy interface lives in policy.hpp; forward declaration keeps the sim
// loop decoupled from concrete policies.
class PolicyInterface;

EpisodeResult run_episode(const SceneAssets& assets, const Episode& episode,
                          const Embodiment& embodiment, PolicyInterface& policy,
                          const RewardParams& reward = RewardParams{},
                          int max_steps = kMaxStepsSim,
                          std::ostream* trajectory_log = nullptr);

using PolicyFactory = std::function<std::unique_ptr<PolicyInterface>(const Episode&)>;

// Worker-pool episode runner; results keep episode order regardless of jobs.
std::vector<EpisodeResult> run_episodes(const SceneAssets& assets,
                                        const std::vector<Episode>& episodes,
                                        const Embodiment& embodiment,
                                        const PolicyFactory& make_policy,
                                        const RewardParams& reward = RewardParams{},
                                        int max_steps = kMaxStepsSim, int jobs = 1,
                                        std::ostream* trajectory_log = nullptr);

void write_results_csv(const std::vector<EpisodeResult>& results, const std::string& path,
                       const RewardParams& reward = RewardParams{});
std::vector<EpisodeResult> read_results_csv(const std::string& path);

}  // namespace navbench
