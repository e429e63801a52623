#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "navbench/embodiment.hpp"
#include "navbench/math.hpp"
#include "navbench/navgrid.hpp"

namespace navbench {

struct Episode {
    int64_t episode_id = 0;
    std::string scene_id;
    Vec3d start_position;
    double start_yaw = 0.0;  // radians, [-pi, pi)
    Vec3d goal_position;
    double goal_yaw = 0.0;   // radians, sampled uniformly
    double geodesic_length = 0.0;
};

struct EpisodeSet {
    std::string scene_id;
    std::string split = "train";  // train|val
    uint64_t seed = 0;
    Embodiment embodiment;
    std::vector<Episode> episodes;
};

struct EpisodeStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    size_t count = 0;
};

// Samples n start/goal pairs uniformly over the largest island with in-cell
// jitter, rejecting pairs that are unreachable or closer than the success
// radius along the geodesic. Deterministic per seed.
EpisodeSet generate_episodes(const NavGrid& grid, const Embodiment& embodiment, size_t n,
                             uint64_t seed, const std::string& scene_id = "scene",
                             const std::string& split = "train");

EpisodeStats episode_stats(const EpisodeSet& set);

void save_episodes(const EpisodeSet& set, const std::string& path);
EpisodeSet load_episodes(const std::string& path);

}  // namespace navbench
