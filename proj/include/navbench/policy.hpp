#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "navbench/embodiment.hpp"
#include "navbench/episodes.hpp"
#include "navbench/navgrid.hpp"
#include "navbench/render.hpp"
#include "navbench/rng.hpp"
#include "navbench/sim.hpp"

namespace navbench {

// An episode policy: reset once with the goal frame, then act per step.
class PolicyInterface {
  public:
    virtual ~PolicyInterface() = default;

    virtual void reset(const Frame& goal) = 0;
    virtual Action act(const Frame& observation, bool collided) = 0;

    // Policies that ignore pixels let the harness skip rendering.
    virtual bool needs_observation_frames() const { return true; }
};

// Geodesic-descent planner over the navgrid. Tracks its own pose by dead
// reckoning from the actions it issued and the collided flag, so it needs no
// frames and no privileged simulator state beyond the grid and episode. Each
// step it scores one forward move along every reachable quantized heading by
// the remaining goal distance and steers toward the best landing; forwards
// are gated by the environment's own walkability test, so an issued move is
// always accepted.
class OraclePolicy : public PolicyInterface {
  public:
    OraclePolicy(const NavGrid& grid, const Episode& episode, const Embodiment& embodiment);

    void reset(const Frame& goal) override;
    Action act(const Frame& observation, bool collided) override;
    bool needs_observation_frames() const override { return false; }

  private:
    const NavGrid& grid_;
    Episode episode_;
    Embodiment embodiment_;
    std::optional<DistanceField> field_;  // empty when the goal fails to snap
    Vec3d position_;
    double yaw_ = 0.0;
    Action last_action_ = Action::Stop;
};

// Uniform over the four actions, deterministic per seed.
class RandomPolicy : public PolicyInterface {
  public:
    explicit RandomPolicy(uint64_t seed) : rng_(seed) {}

    void reset(const Frame&) override {}
    Action act(const Frame&, bool) override {
        return static_cast<Action>(rng_.next_u64() & 3);
    }
    bool needs_observation_frames() const override { return false; }

  private:
    Rng rng_;
};

}  // namespace navbench
