#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "navbench/embodiment.hpp"
#include "navbench/math.hpp"
#include "navbench/mesh.hpp"

namespace navbench {

inline constexpr uint16_t kNoIsland = 0xFFFF;
inline constexpr double kDefaultCellSize = 0.05;

struct Cell {
    int32_t ix = 0;
    int32_t iz = 0;
    bool operator==(const Cell&) const = default;
};

// Regular grid over the floor plane marking where the cylinder agent can
// stand. Row-major storage, index = iz * nx + ix.
struct NavGrid {
    Vec3f origin;       // min corner of the grid in world space
    float cell_size = static_cast<float>(kDefaultCellSize);
    uint32_t nx = 0;
    uint32_t nz = 0;
    std::vector<uint8_t> walkable;      // 0/1 per cell
    std::vector<float> floor_height;    // valid where walkable
    std::vector<uint16_t> island_id;    // dense 0..count-1 where walkable, else kNoIsland

    size_t index(int32_t ix, int32_t iz) const {
        return static_cast<size_t>(iz) * nx + static_cast<size_t>(ix);
    }
    bool in_bounds(int32_t ix, int32_t iz) const {
        return ix >= 0 && iz >= 0 && ix < static_cast<int32_t>(nx) && iz < static_cast<int32_t>(nz);
    }
    bool is_walkable(int32_t ix, int32_t iz) const {
        return in_bounds(ix, iz) && walkable[index(ix, iz)] != 0;
    }
    Vec3d cell_center(Cell c) const {
        return Vec3d{origin.x + (c.ix + 0.5) * static_cast<double>(cell_size),
                     static_cast<double>(floor_height[index(c.ix, c.iz)]),
                     origin.z + (c.iz + 0.5) * static_cast<double>(cell_size)};
    }
    // Cell containing the planar point (ignores walkability).
    Cell containing_cell(const Vec3d& p) const {
        return Cell{static_cast<int32_t>(std::floor((p.x - origin.x) / cell_size)),
                    static_cast<int32_t>(std::floor((p.z - origin.z) / cell_size))};
    }
    size_t walkable_count() const;
    uint16_t island_count() const;
};

struct Island {
    uint16_t id = 0;
    size_t cell_count = 0;
    double area = 0.0;              // cell_count * cell_size^2
    double enclosing_radius = 0.0;  // smallest enclosing circle of cell centers
};

struct Path {
    std::vector<Vec3d> waypoints;
    double geodesic_length = 0.0;
    // Planar cost over cell centers: straight moves cost cell_size, diagonal
    // moves cell_size*sqrt(2), accumulated from exact move counts.
    double grid_cost = 0.0;
};

// Rasterizes the walkable area of a Y-up mesh: a cell is walkable when it has
// a supporting surface within 45 degrees of horizontal, clearance above it of
// at least the agent height, and survives erosion by the agent radius.
NavGrid build_navgrid(const Mesh& mesh, const Embodiment& embodiment,
                      double cell_size = kDefaultCellSize);

// Connected components of the walkable area, largest first. island 0 is
// always the largest by construction of build_navgrid.
std::vector<Island> islands(const NavGrid& grid);

// Recomputes island labels from the walkable bitset (4-connected, dense ids,
// largest island first). build_navgrid calls this; hand-assembled grids need
// it before path queries.
void compute_islands(NavGrid& grid);

// Nearest walkable cell within 0.5 m horizontally and 0.5 m vertically.
std::optional<Cell> snap(const NavGrid& grid, const Vec3d& point);

// A* over 8-connected walkable cells (no corner cutting). Throws when either
// endpoint fails to snap; empty optional when the endpoints are on different
// islands (unreachable).
std::optional<Path> shortest_path(const NavGrid& grid, const Vec3d& start, const Vec3d& goal);

// Geodesic distance from every walkable cell to a fixed goal, for O(1)
// distance queries during simulation.
class DistanceField {
  public:
    DistanceField(const NavGrid& grid, const Vec3d& goal);

    // Geodesic distance from p to the goal; infinity when p does not snap or
    // the goal is unreachable from p.
    double distance(const Vec3d& p) const;

    const Vec3d& goal() const { return goal_; }

  private:
    const NavGrid& grid_;
    Vec3d goal_;
    Cell goal_cell_;
    double goal_tail_ = 0.0;  // planar offset of the goal inside its cell
    std::vector<double> dist_;
};

// True when every cell touched by the straight segment from a to b is
// walkable and on the given island. Samples at half-cell increments.
bool segment_on_island(const NavGrid& grid, const Vec3d& a, const Vec3d& b, uint16_t island);

// Floor height under a planar position, if its containing cell is walkable on
// the given island.
std::optional<double> floor_height_on_island(const NavGrid& grid, const Vec3d& p, uint16_t island);

// Binary cache (magic "NAVG"), little-endian.
void save_navgrid(const NavGrid& grid, const std::string& path);
NavGrid load_navgrid(const std::string& path);

}  // namespace navbench
