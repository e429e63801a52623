#include "navbench/policy.hpp"

#include <cmath>
#include <limits>

#include "navbench/errors.hpp"

namespace navbench {

namespace {
constexpr double kStopFraction = 0.8;  // of the success radius
}

OraclePolicy::OraclePolicy(const NavGrid& grid, const Episode& episode,
                           const Embodiment& embodiment)
    : grid_(grid), episode_(episode), embodiment_(embodiment),
      position_(episode.start_position), yaw_(wrap_angle(episode.start_yaw)) {
    try {
        field_.emplace(grid_, episode_.goal_position);
    } catch (const DomainError&) {
        // Unsnappable goal: reported as a policy failure on the first act.
    }
}

void OraclePolicy::reset(const Frame&) {
    position_ = episode_.start_position;
    yaw_ = wrap_angle(episode_.start_yaw);
    last_action_ = Action::Stop;
}

Action OraclePolicy::act(const Frame&, bool collided) {
    // Dead reckoning: replay the previous action's effect with the same
    // arithmetic the environment applies. A collided forward left the agent
    // in place; an accepted one lands on the local floor height.
    switch (last_action_) {
        case Action::TurnLeft:
            yaw_ = wrap_angle(yaw_ + embodiment_.turn_angle_rad());
            break;
        case Action::TurnRight:
            yaw_ = wrap_angle(yaw_ - embodiment_.turn_angle_rad());
            break;
        case Action::MoveForward:
            if (!collided) {
                const Vec3d target = position_ + heading(yaw_) * embodiment_.forward_step;
                const auto floor_y = floor_height_on_island(grid_, target, 0);
                position_ = Vec3d{target.x, floor_y ? *floor_y : position_.y, target.z};
            }
            break;
        case Action::Stop:
            break;
    }

    constexpr double kInf = std::numeric_limits<double>::infinity();
    const double here = field_ ? field_->distance(position_) : kInf;
    if (here == kInf)
        throw PolicyError("oracle policy: goal unreachable from the current position");

    if (here <= kStopFraction * embodiment_.success_radius) {
        last_action_ = Action::Stop;
        return last_action_;
    }

    // One forward step is possible along twelve quantized headings; score
    // each admissible landing by the remaining geodesic distance and steer
    // toward the best, preferring fewer turns on ties.
    const double turn = embodiment_.turn_angle_rad();
    int best_k = 0;
    double best_d = kInf;
    int best_turns = std::numeric_limits<int>::max();
    for (int k = -5; k <= 6; ++k) {
        const Vec3d target =
            position_ + heading(yaw_ + k * turn) * embodiment_.forward_step;
        if (!segment_on_island(grid_, position_, target, 0)) continue;
        const double d = field_->distance(target);
        const int turns = std::abs(k);
        if (d < best_d || (d == best_d && turns < best_turns)) {
            best_d = d;
            best_k = k;
            best_turns = turns;
        }
    }

    if (best_d == kInf) {
        // Boxed in (cannot happen on a walkable cell wider than the step):
        // rotate and rescan.
        last_action_ = Action::TurnLeft;
    } else if (best_k == 0) {
        last_action_ = Action::MoveForward;
    } else {
        last_action_ = best_k > 0 ? Action::TurnLeft : Action::TurnRight;
    }
    return last_action_;
}

}  // namespace navbench
