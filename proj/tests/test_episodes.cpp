#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "navbench/embodiment.hpp"
#include "navbench/episodes.hpp"
#include "navbench/errors.hpp"
#include "navbench/navgrid.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace navbench;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), {});
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

bool episodes_equal(const Episode& a, const Episode& b) {
    return a.episode_id == b.episode_id && a.scene_id == b.scene_id &&
           a.start_position.x == b.start_position.x && a.start_position.y == b.start_position.y &&
           a.start_position.z == b.start_position.z && a.start_yaw == b.start_yaw &&
           a.goal_position.x == b.goal_position.x && a.goal_position.y == b.goal_position.y &&
           a.goal_position.z == b.goal_position.z && a.goal_yaw == b.goal_yaw &&
           a.geodesic_length == b.geodesic_length;
}

}  // namespace

TEST_CASE("generated episodes pass an independent validity audit") {
    const NavGrid grid = build_navgrid(fixtures::flat_room(10.0, 6.0), Embodiment{});
    const Embodiment emb;
    const EpisodeSet set = generate_episodes(grid, emb, 100, 42, "room", "train");

    REQUIRE(set.episodes.size() == 100);
    CHECK(set.scene_id == "room");
    CHECK(set.split == "train");
    CHECK(set.seed == 42);

    const auto isl = islands(grid);
    const uint16_t largest = isl.front().id;
    // Octile diameter of the eroded 9.45 x 5.45 m area plus in-cell slack.
    const double octile_diameter = (9.45 - 5.45) + 5.45 * std::sqrt(2.0) + 4 * 0.05;

    int64_t expected_id = 0;
    for (const auto& ep : set.episodes) {
        CHECK(ep.episode_id == expected_id++);  // dense ids in order

        // Both endpoints sit on the largest island.
        const Cell sc = grid.containing_cell(ep.start_position);
        const Cell gc = grid.containing_cell(ep.goal_position);
        REQUIRE(grid.is_walkable(sc.ix, sc.iz));
        REQUIRE(grid.is_walkable(gc.ix, gc.iz));
        CHECK(grid.island_id[grid.index(sc.ix, sc.iz)] == largest);
        CHECK(grid.island_id[grid.index(gc.ix, gc.iz)] == largest);

        // Reachable, recorded length matches an independent replan, and the
        // pair is farther apart than the success radius.
        const auto path = shortest_path(grid, ep.start_position, ep.goal_position);
        REQUIRE(path.has_value());
        CHECK(ep.geodesic_length == path->geodesic_length);
        CHECK(ep.geodesic_length > emb.success_radius);
        CHECK(ep.geodesic_length <= octile_diameter);

        CHECK(ep.start_yaw >= -kPi);
        CHECK(ep.start_yaw < kPi);
        CHECK(ep.goal_yaw >= -kPi);
        CHECK(ep.goal_yaw < kPi);
    }
    // The straight-line room diameter bounds nearly every draw; verify the
    // whole batch stays under it for this seed.
    double max_len = 0.0;
    for (const auto& ep : set.episodes) max_len = std::max(max_len, ep.geodesic_length);
    CHECK(max_len <= 11.66);
}

TEST_CASE("generation is deterministic per seed and varies across seeds") {
    const NavGrid grid = build_navgrid(fixtures::flat_room(), Embodiment{});
    fixtures::TempDir tmp("episodes");
    const EpisodeSet a = generate_episodes(grid, Embodiment{}, 50, 7);
    const EpisodeSet b = generate_episodes(grid, Embodiment{}, 50, 7);
    save_episodes(a, tmp.file("a.json"));
    save_episodes(b, tmp.file("b.json"));
    CHECK(read_file(tmp.file("a.json")) == read_file(tmp.file("b.json")));

    const EpisodeSet c = generate_episodes(grid, Embodiment{}, 50, 8);
    CHECK(c.episodes[0].start_position.x != a.episodes[0].start_position.x);
}

TEST_CASE("undersized islands are refused") {
    const NavGrid grid = build_navgrid(fixtures::bare_floor(1.5, 1.5), Embodiment{});
    const auto msg = fixtures::thrown_message<DomainError>(
        [&] { generate_episodes(grid, Embodiment{}, 10, 1); });
    CHECK(fixtures::contains(msg, "does not exceed 2 m"));
}

TEST_CASE("split must name a known partition") {
    const NavGrid grid = build_navgrid(fixtures::flat_room(), Embodiment{});
    const auto msg = fixtures::thrown_message<DomainError>(
        [&] { generate_episodes(grid, Embodiment{}, 5, 1, "room", "test"); });
    CHECK(fixtures::contains(msg, "split"));
}

TEST_CASE("episode stats are exact order statistics") {
    EpisodeSet set;
    Episode ep;
    ep.geodesic_length = 5.0;
    set.episodes.push_back(ep);
    auto stats = episode_stats(set);
    CHECK(stats.min == 5.0);
    CHECK(stats.max == 5.0);
    CHECK(stats.mean == 5.0);
    CHECK(stats.count == 1);

    set.episodes.clear();
    for (double len : {2.0, 4.0, 6.0}) {
        Episode e;
        e.geodesic_length = len;
        set.episodes.push_back(e);
    }
    stats = episode_stats(set);
    CHECK(stats.min == 2.0);
    CHECK(stats.max == 6.0);
    CHECK(stats.mean == 4.0);
    CHECK(stats.count == 3);

    set.episodes.clear();
    const auto msg =
        fixtures::thrown_message<DomainError>([&] { episode_stats(set); });
    CHECK(fixtures::contains(msg, "empty"));
}

TEST_CASE("stats over a generated batch match a direct recomputation") {
    const NavGrid grid = build_navgrid(fixtures::flat_room(), Embodiment{});
    const EpisodeSet set = generate_episodes(grid, Embodiment{}, 300, 99);
    const EpisodeStats stats = episode_stats(set);

    double lo = set.episodes[0].geodesic_length, hi = lo, sum = 0.0;
    for (const auto& ep : set.episodes) {
        lo = std::min(lo, ep.geodesic_length);
        hi = std::max(hi, ep.geodesic_length);
        sum += ep.geodesic_length;
    }
    CHECK(stats.min == lo);
    CHECK(stats.max == hi);
    CHECK(stats.mean == doctest::Approx(sum / 300.0).epsilon(1e-15));
    CHECK(stats.count == 300);
    CHECK(stats.min <= stats.mean);
    CHECK(stats.mean <= stats.max);
}

TEST_CASE("episode files round-trip losslessly") {
    const NavGrid grid = build_navgrid(fixtures::flat_room(), Embodiment{});
    Embodiment emb;
    emb.forward_step = 0.2;  // non-default value must survive the trip
    const EpisodeSet set = generate_episodes(grid, emb, 20, 3, "lounge", "val");

    fixtures::TempDir tmp("episodes");
    const std::string path = tmp.file("set.json");
    save_episodes(set, path);
    const EpisodeSet back = load_episodes(path);

    CHECK(back.scene_id == set.scene_id);
    CHECK(back.split == set.split);
    CHECK(back.seed == set.seed);
    CHECK(back.embodiment.forward_step == 0.2);
    CHECK(back.embodiment.height == emb.height);
    CHECK(back.embodiment.success_radius == emb.success_radius);
    REQUIRE(back.episodes.size() == set.episodes.size());
    for (size_t i = 0; i < set.episodes.size(); ++i)
        REQUIRE(episodes_equal(back.episodes[i], set.episodes[i]));
}

TEST_CASE("episode files with schema problems are rejected by name") {
    const NavGrid grid = build_navgrid(fixtures::flat_room(), Embodiment{});
    const EpisodeSet set = generate_episodes(grid, Embodiment{}, 3, 11);
    fixtures::TempDir tmp("episodes");
    const std::string path = tmp.file("set.json");
    save_episodes(set, path);

    SUBCASE("missing geodesic_length") {
        auto root = nlohmann::json::parse(read_file(path));
        root["episodes"][1].erase("geodesic_length");
        write_file(path, root.dump(2));
        const auto msg =
            fixtures::thrown_message<ParseError>([&] { load_episodes(path); });
        CHECK(fixtures::contains(msg, "geodesic_length"));
    }
    SUBCASE("missing embodiment") {
        auto root = nlohmann::json::parse(read_file(path));
        root.erase("embodiment");
        write_file(path, root.dump(2));
        const auto msg =
            fixtures::thrown_message<ParseError>([&] { load_episodes(path); });
        CHECK(fixtures::contains(msg, "embodiment"));
    }
    SUBCASE("unknown split value") {
        auto root = nlohmann::json::parse(read_file(path));
        root["split"] = "test";
        write_file(path, root.dump(2));
        const auto msg =
            fixtures::thrown_message<ParseError>([&] { load_episodes(path); });
        CHECK(fixtures::contains(msg, "split"));
    }
    SUBCASE("wrong field type") {
        auto root = nlohmann::json::parse(read_file(path));
        root["episodes"][0]["start_yaw"] = "north";
        write_file(path, root.dump(2));
        const auto msg =
            fixtures::thrown_message<ParseError>([&] { load_episodes(path); });
        CHECK(fixtures::contains(msg, "start_yaw"));
    }
    SUBCASE("invalid JSON") {
        write_file(path, "{not json");
        const auto msg =
            fixtures::thrown_message<ParseError>([&] { load_episodes(path); });
        CHECK(fixtures::contains(msg, "invalid JSON"));
    }
    SUBCASE("missing file") {
        const auto msg = fixtures::thrown_message<ParseError>(
            [&] { load_episodes(tmp.file("absent.json")); });
        CHECK(fixtures::contains(msg, "cannot open"));
    }
}

TEST_CASE("unknown extra fields load with a warning") {
    const NavGrid grid = build_navgrid(fixtures::flat_room(), Embodiment{});
    const EpisodeSet set = generate_episodes(grid, Embodiment{}, 2, 5);
    fixtures::TempDir tmp("episodes");
    const std::string path = tmp.file("set.json");
    save_episodes(set, path);

    auto root = nlohmann::json::parse(read_file(path));
    root["weather"] = "sunny";
    root["episodes"][0]["mood"] = 3;
    write_file(path, root.dump(2));

    std::stringstream captured;
    auto* old = std::cerr.rdbuf(captured.rdbuf());
    const EpisodeSet back = load_episodes(path);
    std::cerr.rdbuf(old);

    CHECK(fixtures::contains(captured.str(), "unknown field"));
    CHECK(fixtures::contains(captured.str(), "weather"));
    REQUIRE(back.episodes.size() == 2);
    CHECK(episodes_equal(back.episodes[0], set.episodes[0]));
}

TEST_CASE("start cells are sampled uniformly over the island") {
    // Coarse grid keeps ten thousand replans cheap; the chi-square threshold
    // is the 0.99 quantile at 39 degrees of freedom.
    const NavGrid grid = build_navgrid(fixtures::bare_floor(10.0, 6.0), Embodiment{}, 0.1);
    const auto isl = islands(grid);
    REQUIRE(isl.front().enclosing_radius > 2.0);

    std::vector<Cell> cells;
    for (int32_t iz = 0; iz < static_cast<int32_t>(grid.nz); ++iz)
        for (int32_t ix = 0; ix < static_cast<int32_t>(grid.nx); ++ix)
            if (grid.island_id[grid.index(ix, iz)] == isl.front().id)
                cells.push_back(Cell{ix, iz});
    const size_t m = cells.size();
    REQUIRE(m > 1000);

    const size_t n = 10000;
    const EpisodeSet set = generate_episodes(grid, Embodiment{}, n, 2718, "uniform");

    // Rank each start cell in the island enumeration, then pool ranks into 40
    // near-equal contiguous bins.
    std::vector<size_t> rank(static_cast<size_t>(grid.nx) * grid.nz, SIZE_MAX);
    for (size_t i = 0; i < m; ++i) rank[grid.index(cells[i].ix, cells[i].iz)] = i;

    const size_t bins = 40;
    std::vector<double> observed(bins, 0.0), expected(bins, 0.0);
    for (size_t b = 0; b < bins; ++b) {
        const size_t lo = b * m / bins, hi = (b + 1) * m / bins;
        expected[b] = static_cast<double>(n) * (hi - lo) / static_cast<double>(m);
    }
    for (const auto& ep : set.episodes) {
        const Cell c = grid.containing_cell(ep.start_position);
        const size_t r = rank[grid.index(c.ix, c.iz)];
        REQUIRE(r != SIZE_MAX);
        observed[r * bins / m] += 1.0;
    }
    const double stat = oracles::chi_square(observed, expected);
    CHECK(stat < oracles::kChi2Crit99Dof39);
}
