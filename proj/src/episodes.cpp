#include "navbench/episodes.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "navbench/errors.hpp"
#include "navbench/rng.hpp"

namespace navbench {

namespace {

constexpr size_t kAttemptBudget = 100000;
constexpr double kMinIslandRadius = 2.0;

using nlohmann::json;

json embodiment_to_json(const Embodiment& e) {
    return json{{"height", e.height},
                {"radius", e.radius},
                {"camera_height", e.camera_height},
                {"hfov_deg", e.hfov_deg},
                {"image_width", e.image_width},
                {"image_height", e.image_height},
                {"forward_step", e.forward_step},
                {"turn_angle_deg", e.turn_angle_deg},
                {"success_radius", e.success_radius},
                {"angle_success_deg", e.angle_success_deg}};
}

template <typename T>
T require_field(const json& obj, const char* field, const std::string& where) {
    const auto it = obj.find(field);
    if (it == obj.end())
        throw ParseError("episode file: missing field '" + std::string(field) + "' in " + where);
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw ParseError("episode file: field '" + std::string(field) + "' has wrong type in " +
                         where);
    }
}

void warn_unknown_fields(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find_if(known.begin(), known.end(),
                         [&](const char* k) { return key == k; }) == known.end())
            std::cerr << "warning: episode file: ignoring unknown field '" << key << "' in "
                      << where << "\n";
    }
}

Vec3d position_from_json(const json& arr, const char* field, const std::string& where) {
    if (!arr.is_array() || arr.size() != 3)
        throw ParseError("episode file: field '" + std::string(field) +
                         "' must be a 3-element array in " + where);
    return Vec3d{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
}

}  // namespace

EpisodeSet generate_episodes(const NavGrid& grid, const Embodiment& embodiment, size_t n,
                             uint64_t seed, const std::string& scene_id,
                             const std::string& split) {
    embodiment.validate();
    if (split != "train" && split != "val")
        throw DomainError("generate_episodes: split must be 'train' or 'val'");

    const auto island_list = islands(grid);
    if (island_list.empty()) throw DomainError("generate_episodes: grid has no islands");
    const Island& largest = island_list.front();
    if (!(largest.enclosing_radius > kMinIslandRadius))
        throw DomainError("generate_episodes: largest island radius " +
                          std::to_string(largest.enclosing_radius) + " m does not exceed 2 m");

    std::vector<Cell> cells;
    cells.reserve(largest.cell_count);
    for (int32_t iz = 0; iz < static_cast<int32_t>(grid.nz); ++iz)
        for (int32_t ix = 0; ix < static_cast<int32_t>(grid.nx); ++ix)
            if (grid.island_id[grid.index(ix, iz)] == largest.id) cells.push_back(Cell{ix, iz});

    EpisodeSet set;
    set.scene_id = scene_id;
    set.split = split;
    set.seed = seed;
    set.embodiment = embodiment;
    set.episodes.reserve(n);

    Rng rng(seed);
    const double cell = grid.cell_size;
    auto sample_point = [&]() {
        const Cell c = cells[rng.uniform_index(cells.size())];
        Vec3d p = grid.cell_center(c);
        p.x += rng.uniform(-0.5, 0.5) * cell;
        p.z += rng.uniform(-0.5, 0.5) * cell;
        return p;
    };
    auto sample_yaw = [&]() { return rng.uniform(-kPi, kPi); };

    for (size_t id = 0; id < n; ++id) {
        bool placed = false;
        for (size_t attempt = 0; attempt < kAttemptBudget; ++attempt) {
            Episode ep;
            ep.episode_id = static_cast<int64_t>(id);
            ep.scene_id = scene_id;
            ep.start_position = sample_point();
            ep.start_yaw = sample_yaw();
            ep.goal_position = sample_point();
            ep.goal_yaw = sample_yaw();

            const auto path = shortest_path(grid, ep.start_position, ep.goal_position);
            if (!path) continue;  // unreachable (cannot happen within one island)
            if (!(path->geodesic_length > embodiment.success_radius)) continue;
            ep.geodesic_length = path->geodesic_length;
            set.episodes.push_back(std::move(ep));
            placed = true;
            break;
        }
        if (!placed)
            throw DomainError("generate_episodes: rejection budget exceeded (" +
                              std::to_string(kAttemptBudget) + " attempts) for episode " +
                              std::to_string(id));
    }
    return set;
}

EpisodeStats episode_stats(const EpisodeSet& set) {
    if (set.episodes.empty()) throw DomainError("episode_stats: empty episode set");
    EpisodeStats stats;
    stats.count = set.episodes.size();
    stats.min = std::numeric_limits<double>::infinity();
    stats.max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const auto& ep : set.episodes) {
        stats.min = std::min(stats.min, ep.geodesic_length);
        stats.max = std::max(stats.max, ep.geodesic_length);
        sum += ep.geodesic_length;
    }
    stats.mean = sum / static_cast<double>(stats.count);
    return stats;
}

void save_episodes(const EpisodeSet& set, const std::string& path) {
    json root;
    root["scene_id"] = set.scene_id;
    root["split"] = set.split;
    root["seed"] = set.seed;
    root["embodiment"] = embodiment_to_json(set.embodiment);
    json eps = json::array();
    for (const auto& ep : set.episodes) {
        eps.push_back(json{{"episode_id", ep.episode_id},
                           {"start_position", {ep.start_position.x, ep.start_position.y,
                                               ep.start_position.z}},
                           {"start_yaw", ep.start_yaw},
                           {"goal_position", {ep.goal_position.x, ep.goal_position.y,
                                              ep.goal_position.z}},
                           {"goal_yaw", ep.goal_yaw},
                           {"geodesic_length", ep.geodesic_length}});
    }
    root["episodes"] = std::move(eps);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open " + path + " for writing");
    out << root.dump(2) << "\n";
    if (!out) throw DomainError("failed writing " + path);
}

EpisodeSet load_episodes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("episode file: cannot open " + path);
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw ParseError("episode file: invalid JSON in " + path + ": " + e.what());
    }
    if (!root.is_object()) throw ParseError("episode file: top level must be an object in " + path);

    warn_unknown_fields(root, {"scene_id", "split", "seed", "embodiment", "episodes"}, path);

    EpisodeSet set;
    set.scene_id = require_field<std::string>(root, "scene_id", path);
    set.split = require_field<std::string>(root, "split", path);
    if (set.split != "train" && set.split != "val")
        throw ParseError("episode file: field 'split' must be 'train' or 'val' in " + path);
    set.seed = require_field<uint64_t>(root, "seed", path);

    const auto emb = root.find("embodiment");
    if (emb == root.end())
        throw ParseError("episode file: missing field 'embodiment' in " + path);
    warn_unknown_fields(*emb,
                        {"height", "radius", "camera_height", "hfov_deg", "image_width",
                         "image_height", "forward_step", "turn_angle_deg", "success_radius",
                         "angle_success_deg"},
                        path + " (embodiment)");
    const std::string ew = path + " (embodiment)";
    set.embodiment.height = require_field<double>(*emb, "height", ew);
    set.embodiment.radius = require_field<double>(*emb, "radius", ew);
    set.embodiment.camera_height = require_field<double>(*emb, "camera_height", ew);
    set.embodiment.hfov_deg = require_field<double>(*emb, "hfov_deg", ew);
    set.embodiment.image_width = require_field<int>(*emb, "image_width", ew);
    set.embodiment.image_height = require_field<int>(*emb, "image_height", ew);
    set.embodiment.forward_step = require_field<double>(*emb, "forward_step", ew);
    set.embodiment.turn_angle_deg = require_field<double>(*emb, "turn_angle_deg", ew);
    set.embodiment.success_radius = require_field<double>(*emb, "success_radius", ew);
    set.embodiment.angle_success_deg = require_field<double>(*emb, "angle_success_deg", ew);
    set.embodiment.validate();

    const auto eps = root.find("episodes");
    if (eps == root.end()) throw ParseError("episode file: missing field 'episodes' in " + path);
    if (!eps->is_array())
        throw ParseError("episode file: field 'episodes' must be an array in " + path);

    for (size_t i = 0; i < eps->size(); ++i) {
        const json& e = (*eps)[i];
        const std::string where = path + " (episode " + std::to_string(i) + ")";
        warn_unknown_fields(e,
                            {"episode_id", "start_position", "start_yaw", "goal_position",
                             "goal_yaw", "geodesic_length"},
                            where);
        Episode ep;
        ep.episode_id = require_field<int64_t>(e, "episode_id", where);
        ep.scene_id = set.scene_id;
        const auto sp = e.find("start_position");
        if (sp == e.end())
            throw ParseError("episode file: missing field 'start_position' in " + where);
        ep.start_position = position_from_json(*sp, "start_position", where);
        ep.start_yaw = require_field<double>(e, "start_yaw", where);
        const auto gp = e.find("goal_position");
        if (gp == e.end())
            throw ParseError("episode file: missing field 'goal_position' in " + where);
        ep.goal_position = position_from_json(*gp, "goal_position", where);
        ep.goal_yaw = require_field<double>(e, "goal_yaw", where);
        ep.geodesic_length = require_field<double>(e, "geodesic_length", where);
        set.episodes.push_back(std::move(ep));
    }
    return set;
}

}  // namespace navbench
