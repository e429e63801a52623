#include "navbench/navgrid.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <queue>

#include "navbench/bvh.hpp"
#include "navbench/errors.hpp"
#include "navbench/rng.hpp"

namespace navbench {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSnapRange = 0.5;  // meters, horizontal and vertical
const double kWalkableNormalCos = std::cos(deg_to_rad(45.0));

struct Circle {
    double cx = 0.0;
    double cz = 0.0;
    double r = 0.0;
};

bool circle_contains(const Circle& c, double x, double z) {
    const double dx = x - c.cx;
    const double dz = z - c.cz;
    return dx * dx + dz * dz <= c.r * c.r + 1e-10 + 1e-12 * c.r * c.r;
}

Circle circle_from_two(double ax, double az, double bx, double bz) {
    Circle c;
    c.cx = 0.5 * (ax + bx);
    c.cz = 0.5 * (az + bz);
    c.r = 0.5 * std::hypot(bx - ax, bz - az);
    return c;
}

Circle circle_from_three(double ax, double az, double bx, double bz, double px, double pz) {
    const double bxr = bx - ax, bzr = bz - az;
    const double pxr = px - ax, pzr = pz - az;
    const double d = 2.0 * (bxr * pzr - bzr * pxr);
    if (std::abs(d) < 1e-12) {
        // collinear: widest pair wins
        Circle best = circle_from_two(ax, az, bx, bz);
        const Circle c2 = circle_from_two(ax, az, px, pz);
        if (c2.r > best.r) best = c2;
        const Circle c3 = circle_from_two(bx, bz, px, pz);
        if (c3.r > best.r) best = c3;
        return best;
    }
    const double b2 = bxr * bxr + bzr * bzr;
    const double p2 = pxr * pxr + pzr * pzr;
    const double ux = (pzr * b2 - bzr * p2) / d;
    const double uz = (bxr * p2 - pxr * b2) / d;
    Circle c;
    c.cx = ax + ux;
    c.cz = az + uz;
    c.r = std::hypot(ux, uz);
    return c;
}

// Smallest enclosing circle, incremental Welzl with a deterministic shuffle.
Circle smallest_enclosing_circle(std::vector<std::pair<double, double>> pts) {
    if (pts.empty()) return Circle{};
    Rng rng(0x5ECC19C1ull);
    for (size_t i = pts.size() - 1; i > 0; --i)
        std::swap(pts[i], pts[rng.uniform_index(i + 1)]);

    Circle c{pts[0].first, pts[0].second, 0.0};
    for (size_t i = 1; i < pts.size(); ++i) {
        if (circle_contains(c, pts[i].first, pts[i].second)) continue;
        c = Circle{pts[i].first, pts[i].second, 0.0};
        for (size_t j = 0; j < i; ++j) {
            if (circle_contains(c, pts[j].first, pts[j].second)) continue;
            c = circle_from_two(pts[i].first, pts[i].second, pts[j].first, pts[j].second);
            for (size_t k = 0; k < j; ++k) {
                if (circle_contains(c, pts[k].first, pts[k].second)) continue;
                c = circle_from_three(pts[i].first, pts[i].second, pts[j].first, pts[j].second,
                                      pts[k].first, pts[k].second);
            }
        }
    }
    return c;
}

void label_islands(NavGrid& grid) {
    const size_t n = static_cast<size_t>(grid.nx) * grid.nz;
    std::vector<uint16_t> raw(n, kNoIsland);
    std::vector<std::pair<size_t, size_t>> components;  // (cell count, seed index)

    std::vector<size_t> stack;
    uint32_t next_id = 0;
    for (size_t seed = 0; seed < n; ++seed) {
        if (!grid.walkable[seed] || raw[seed] != kNoIsland) continue;
        if (next_id >= kNoIsland) throw DomainError("navgrid: too many islands");
        const auto id = static_cast<uint16_t>(next_id++);
        size_t count = 0;
        stack.push_back(seed);
        raw[seed] = id;
        while (!stack.empty()) {
            const size_t cur = stack.back();
            stack.pop_back();
            ++count;
            const auto ix = static_cast<int32_t>(cur % grid.nx);
            const auto iz = static_cast<int32_t>(cur / grid.nx);
            const int32_t moves[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (const auto& m : moves) {
                const int32_t jx = ix + m[0], jz = iz + m[1];
                if (!grid.is_walkable(jx, jz)) continue;
                const size_t next = grid.index(jx, jz);
                if (raw[next] != kNoIsland) continue;
                raw[next] = id;
                stack.push_back(next);
            }
        }
        components.emplace_back(count, seed);
    }

    // Relabel so island 0 is the largest; ties break on first cell index.
    std::vector<size_t> order(components.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (components[a].first != components[b].first)
            return components[a].first > components[b].first;
        return components[a].second < components[b].second;
    });
    std::vector<uint16_t> remap(components.size());
    for (size_t rank = 0; rank < order.size(); ++rank)
        remap[order[rank]] = static_cast<uint16_t>(rank);

    grid.island_id.assign(n, kNoIsland);
    for (size_t i = 0; i < n; ++i)
        if (raw[i] != kNoIsland) grid.island_id[i] = remap[raw[i]];
}

}  // namespace

size_t NavGrid::walkable_count() const {
    size_t n = 0;
    for (uint8_t w : walkable) n += w;
    return n;
}

uint16_t NavGrid::island_count() const {
    uint16_t count = 0;
    for (uint16_t id : island_id)
        if (id != kNoIsland) count = std::max(count, static_cast<uint16_t>(id + 1));
    return count;
}

NavGrid build_navgrid(const Mesh& mesh, const Embodiment& embodiment, double cell_size) {
    embodiment.validate();
    if (cell_size < 0.01 || cell_size > 0.5)
        throw DomainError("navgrid: cell_size must be within [0.01, 0.5] m");
    if (mesh.up_axis != UpAxis::YUp)
        throw DomainError("navgrid: mesh must be y-up (convert axes first)");
    if (mesh.triangles.empty()) throw DomainError("navgrid: mesh has no triangles");

    const AABB bounds = compute_bounds(mesh);
    const Vec3d extent = bounds.extent();

    NavGrid grid;
    grid.origin = to_vec3f(bounds.min);
    grid.cell_size = static_cast<float>(cell_size);
    grid.nx = std::max<uint32_t>(1, static_cast<uint32_t>(std::ceil(extent.x / cell_size)));
    grid.nz = std::max<uint32_t>(1, static_cast<uint32_t>(std::ceil(extent.z / cell_size)));
    const size_t n = static_cast<size_t>(grid.nx) * grid.nz;
    grid.walkable.assign(n, 0);
    grid.floor_height.assign(n, 0.0f);

    const TriangleBvh bvh(mesh);
    const double ray_top = bounds.max.y + 1.0;

    for (uint32_t iz = 0; iz < grid.nz; ++iz) {
        for (uint32_t ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.origin.x + (ix + 0.5) * cell_size;
            const double z = grid.origin.z + (iz + 0.5) * cell_size;
            const auto hits = bvh.vertical_hits(x, z, ray_top);
            if (hits.empty()) continue;

            // Lowest hit facing within 45 degrees of +Y supports the agent.
            double floor_y = 0.0;
            bool found = false;
            for (auto it = hits.rbegin(); it != hits.rend(); ++it) {
                const Vec3d normal = normalized(mesh.triangle_normal(it->triangle));
                if (std::abs(normal.y) >= kWalkableNormalCos) {
                    floor_y = it->point.y;
                    found = true;
                    break;
                }
            }
            if (!found) continue;

            double clearance = std::numeric_limits<double>::infinity();
            for (const auto& hit : hits) {
                const double dy = hit.point.y - floor_y;
                if (dy > 1e-4) clearance = std::min(clearance, dy);
            }
            if (clearance < embodiment.height) continue;

            const size_t idx = grid.index(static_cast<int32_t>(ix), static_cast<int32_t>(iz));
            grid.walkable[idx] = 1;
            grid.floor_height[idx] = static_cast<float>(floor_y);
        }
    }

    // Erode by the agent radius: a cell survives only if every cell center
    // closer than the radius (including virtual out-of-bounds cells) is
    // walkable.
    const auto reach = static_cast<int32_t>(std::ceil(embodiment.radius / cell_size));
    std::vector<std::pair<int32_t, int32_t>> kill_offsets;
    for (int32_t dz = -reach; dz <= reach; ++dz)
        for (int32_t dx = -reach; dx <= reach; ++dx) {
            if (dx == 0 && dz == 0) continue;
            if (std::hypot(dx * cell_size, dz * cell_size) < embodiment.radius)
                kill_offsets.emplace_back(dx, dz);
        }

    std::vector<uint8_t> eroded(n, 0);
    for (int32_t iz = 0; iz < static_cast<int32_t>(grid.nz); ++iz) {
        for (int32_t ix = 0; ix < static_cast<int32_t>(grid.nx); ++ix) {
            if (!grid.walkable[grid.index(ix, iz)]) continue;
            bool keep = true;
            for (const auto& [dx, dz] : kill_offsets) {
                if (!grid.is_walkable(ix + dx, iz + dz)) {
                    keep = false;
                    break;
                }
            }
            if (keep) eroded[grid.index(ix, iz)] = 1;
        }
    }
    grid.walkable = std::move(eroded);

    if (grid.walkable_count() == 0) throw DomainError("no navigable surface");
    label_islands(grid);
    return grid;
}

void compute_islands(NavGrid& grid) { label_islands(grid); }

std::vector<Island> islands(const NavGrid& grid) {
    const uint16_t count = grid.island_count();
    std::vector<Island> result(count);
    std::vector<std::vector<std::pair<double, double>>> centers(count);
    for (int32_t iz = 0; iz < static_cast<int32_t>(grid.nz); ++iz) {
        for (int32_t ix = 0; ix < static_cast<int32_t>(grid.nx); ++ix) {
            const uint16_t id = grid.island_id[grid.index(ix, iz)];
            if (id == kNoIsland) continue;
            result[id].id = id;
            result[id].cell_count += 1;
            const Vec3d c = grid.cell_center(Cell{ix, iz});
            centers[id].emplace_back(c.x, c.z);
        }
    }
    const double cell_area = static_cast<double>(grid.cell_size) * grid.cell_size;
    for (uint16_t id = 0; id < count; ++id) {
        result[id].area = result[id].cell_count * cell_area;
        result[id].enclosing_radius = smallest_enclosing_circle(std::move(centers[id])).r;
    }
    return result;  // already ordered by area: label 0 is the largest
}

std::optional<Cell> snap(const NavGrid& grid, const Vec3d& point) {
    const Cell at = grid.containing_cell(point);
    const auto reach = static_cast<int32_t>(std::ceil(kSnapRange / grid.cell_size)) + 1;
    std::optional<Cell> best;
    double best_dist = kSnapRange;
    for (int32_t dz = -reach; dz <= reach; ++dz) {
        for (int32_t dx = -reach; dx <= reach; ++dx) {
            const int32_t ix = at.ix + dx, iz = at.iz + dz;
            if (!grid.is_walkable(ix, iz)) continue;
            const Cell c{ix, iz};
            const Vec3d center = grid.cell_center(c);
            if (std::abs(center.y - point.y) > kSnapRange) continue;
            const double d = planar_distance(point, center);
            if (d < best_dist || (d == best_dist && !best)) {
                best = c;
                best_dist = d;
            }
        }
    }
    return best;
}

namespace {

struct AStarEntry {
    double f;
    double h;
    size_t idx;
    bool operator>(const AStarEntry& o) const {
        if (f != o.f) return f > o.f;
        if (h != o.h) return h > o.h;
        return idx > o.idx;
    }
};

// 8-connected neighborhood; diagonals forbidden when either adjacent
// orthogonal cell is blocked (no corner cutting).
constexpr int32_t kMoves[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                  {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};

}  // namespace

std::optional<Path> shortest_path(const NavGrid& grid, const Vec3d& start, const Vec3d& goal) {
    const auto start_cell = snap(grid, start);
    if (!start_cell) throw DomainError("shortest_path: start does not snap to walkable area");
    const auto goal_cell = snap(grid, goal);
    if (!goal_cell) throw DomainError("shortest_path: goal does not snap to walkable area");

    const size_t start_idx = grid.index(start_cell->ix, start_cell->iz);
    const size_t goal_idx = grid.index(goal_cell->ix, goal_cell->iz);
    if (grid.island_id[start_idx] != grid.island_id[goal_idx]) return std::nullopt;

    if (start_idx == goal_idx) {
        Path p;
        p.waypoints = {goal};
        p.geodesic_length = 0.0;
        p.grid_cost = 0.0;
        return p;
    }

    const double cell = grid.cell_size;
    const size_t n = static_cast<size_t>(grid.nx) * grid.nz;
    constexpr uint32_t kUnset = std::numeric_limits<uint32_t>::max();
    std::vector<uint32_t> straight(n, kUnset), diagonal(n, kUnset);
    std::vector<int32_t> parent(n, -1);
    std::vector<uint8_t> closed(n, 0);

    auto g_value = [&](size_t idx) {
        return straight[idx] * cell + diagonal[idx] * (cell * kSqrt2);
    };
    auto heuristic = [&](int32_t ix, int32_t iz) {
        const double dx = std::abs(ix - goal_cell->ix);
        const double dz = std::abs(iz - goal_cell->iz);
        const double lo = std::min(dx, dz), hi = std::max(dx, dz);
        return (hi - lo) * cell + lo * (cell * kSqrt2);
    };

    std::priority_queue<AStarEntry, std::vector<AStarEntry>, std::greater<>> open;
    straight[start_idx] = 0;
    diagonal[start_idx] = 0;
    open.push({heuristic(start_cell->ix, start_cell->iz),
               heuristic(start_cell->ix, start_cell->iz), start_idx});

    while (!open.empty()) {
        const auto [f, h, idx] = open.top();
        open.pop();
        if (closed[idx]) continue;
        closed[idx] = 1;
        if (idx == goal_idx) break;

        const auto ix = static_cast<int32_t>(idx % grid.nx);
        const auto iz = static_cast<int32_t>(idx / grid.nx);
        for (const auto& m : kMoves) {
            const int32_t jx = ix + m[0], jz = iz + m[1];
            if (!grid.is_walkable(jx, jz)) continue;
            const bool diag = m[0] != 0 && m[1] != 0;
            if (diag && (!grid.is_walkable(ix + m[0], iz) || !grid.is_walkable(ix, iz + m[1])))
                continue;
            const size_t jdx = grid.index(jx, jz);
            if (closed[jdx]) continue;
            const uint32_t ns = straight[idx] + (diag ? 0 : 1);
            const uint32_t nd = diagonal[idx] + (diag ? 1 : 0);
            const double g = ns * cell + nd * (cell * kSqrt2);
            if (straight[jdx] != kUnset && g >= g_value(jdx)) continue;
            straight[jdx] = ns;
            diagonal[jdx] = nd;
            parent[jdx] = static_cast<int32_t>(idx);
            const double hj = heuristic(jx, jz);
            open.push({g + hj, hj, jdx});
        }
    }
    if (straight[goal_idx] == kUnset || !closed[goal_idx]) return std::nullopt;

    std::vector<size_t> cells;
    for (int64_t at = static_cast<int64_t>(goal_idx); at >= 0; at = parent[at]) {
        cells.push_back(static_cast<size_t>(at));
        if (static_cast<size_t>(at) == start_idx) break;
    }
    std::reverse(cells.begin(), cells.end());

    Path path;
    path.grid_cost = g_value(goal_idx);
    path.waypoints.reserve(cells.size() + 2);
    path.waypoints.push_back(start);
    for (size_t idx : cells) {
        const Cell c{static_cast<int32_t>(idx % grid.nx), static_cast<int32_t>(idx / grid.nx)};
        path.waypoints.push_back(grid.cell_center(c));
    }
    path.waypoints.push_back(goal);
    path.geodesic_length = 0.0;
    for (size_t i = 1; i < path.waypoints.size(); ++i)
        path.geodesic_length += distance(path.waypoints[i - 1], path.waypoints[i]);
    return path;
}

DistanceField::DistanceField(const NavGrid& grid, const Vec3d& goal) : grid_(grid), goal_(goal) {
    const auto goal_cell = snap(grid, goal);
    if (!goal_cell) throw DomainError("distance field: goal does not snap to walkable area");
    goal_cell_ = *goal_cell;
    goal_tail_ = planar_distance(goal, grid.cell_center(goal_cell_));

    const size_t n = static_cast<size_t>(grid.nx) * grid.nz;
    dist_.assign(n, std::numeric_limits<double>::infinity());
    const double cell = grid.cell_size;

    using Entry = std::pair<double, size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    const size_t goal_idx = grid.index(goal_cell_.ix, goal_cell_.iz);
    dist_[goal_idx] = 0.0;
    open.emplace(0.0, goal_idx);
    while (!open.empty()) {
        const auto [d, idx] = open.top();
        open.pop();
        if (d > dist_[idx]) continue;
        const auto ix = static_cast<int32_t>(idx % grid.nx);
        const auto iz = static_cast<int32_t>(idx / grid.nx);
        for (const auto& m : kMoves) {
            const int32_t jx = ix + m[0], jz = iz + m[1];
            if (!grid.is_walkable(jx, jz)) continue;
            const bool diag = m[0] != 0 && m[1] != 0;
            if (diag && (!grid.is_walkable(ix + m[0], iz) || !grid.is_walkable(ix, iz + m[1])))
                continue;
            const size_t jdx = grid.index(jx, jz);
            const double nd = d + (diag ? cell * kSqrt2 : cell);
            if (nd < dist_[jdx]) {
                dist_[jdx] = nd;
                open.emplace(nd, jdx);
            }
        }
    }
}

double DistanceField::distance(const Vec3d& p) const {
    const auto cell = snap(grid_, p);
    if (!cell) return std::numeric_limits<double>::infinity();
    const double base = dist_[grid_.index(cell->ix, cell->iz)];
    if (!std::isfinite(base)) return base;
    return base + planar_distance(p, grid_.cell_center(*cell)) + goal_tail_;
}

bool segment_on_island(const NavGrid& grid, const Vec3d& a, const Vec3d& b, uint16_t island) {
    auto cell_ok = [&](int32_t ix, int32_t iz) {
        return grid.is_walkable(ix, iz) && grid.island_id[grid.index(ix, iz)] == island;
    };

    const Cell ca = grid.containing_cell(a);
    const Cell cb = grid.containing_cell(b);
    if (!cell_ok(ca.ix, ca.iz)) return false;
    if (ca == cb) return true;

    // Amanatides–Woo traversal; near corner crossings both side cells are
    // required walkable, which errs conservative.
    const double dx = b.x - a.x;
    const double dz = b.z - a.z;
    const int32_t step_x = dx > 0 ? 1 : -1;
    const int32_t step_z = dz > 0 ? 1 : -1;
    const double cell = grid.cell_size;

    auto boundary_t = [&](double origin, double pos, double delta, int32_t idx, int32_t step) {
        if (delta == 0.0) return std::numeric_limits<double>::infinity();
        const double edge = origin + (idx + (step > 0 ? 1 : 0)) * cell;
        return (edge - pos) / delta;
    };

    int32_t ix = ca.ix, iz = ca.iz;
    double t_max_x = boundary_t(grid.origin.x, a.x, dx, ix, step_x);
    double t_max_z = boundary_t(grid.origin.z, a.z, dz, iz, step_z);
    const double t_delta_x = dx == 0.0 ? std::numeric_limits<double>::infinity()
                                       : std::abs(cell / dx);
    const double t_delta_z = dz == 0.0 ? std::numeric_limits<double>::infinity()
                                       : std::abs(cell / dz);

    constexpr double kTieEps = 1e-12;
    for (int guard = 0; guard < 1000000; ++guard) {
        if (ix == cb.ix && iz == cb.iz) return true;
        if (std::abs(t_max_x - t_max_z) < kTieEps) {
            if (!cell_ok(ix + step_x, iz) || !cell_ok(ix, iz + step_z)) return false;
            ix += step_x;
            iz += step_z;
            t_max_x += t_delta_x;
            t_max_z += t_delta_z;
        } else if (t_max_x < t_max_z) {
            ix += step_x;
            t_max_x += t_delta_x;
        } else {
            iz += step_z;
            t_max_z += t_delta_z;
        }
        if (!cell_ok(ix, iz)) return false;
    }
    return false;  // unreachable for sane inputs
}

std::optional<double> floor_height_on_island(const NavGrid& grid, const Vec3d& p,
                                             uint16_t island) {
    const Cell c = grid.containing_cell(p);
    if (!grid.is_walkable(c.ix, c.iz)) return std::nullopt;
    const size_t idx = grid.index(c.ix, c.iz);
    if (grid.island_id[idx] != island) return std::nullopt;
    return static_cast<double>(grid.floor_height[idx]);
}

namespace {

constexpr char kNavgMagic[4] = {'N', 'A', 'V', 'G'};
constexpr uint16_t kNavgVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in, const std::string& path) {
    T value;
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw ParseError("navgrid cache: truncated file " + path);
    return value;
}

}  // namespace

void save_navgrid(const NavGrid& grid, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open " + path + " for writing");
    out.write(kNavgMagic, 4);
    write_pod(out, kNavgVersion);
    write_pod(out, grid.origin.x);
    write_pod(out, grid.origin.y);
    write_pod(out, grid.origin.z);
    write_pod(out, grid.cell_size);
    write_pod(out, grid.nx);
    write_pod(out, grid.nz);

    const size_t n = static_cast<size_t>(grid.nx) * grid.nz;
    std::vector<uint8_t> bits((n + 7) / 8, 0);
    for (size_t i = 0; i < n; ++i)
        if (grid.walkable[i]) bits[i / 8] |= static_cast<uint8_t>(1u << (i % 8));
    out.write(reinterpret_cast<const char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
    out.write(reinterpret_cast<const char*>(grid.floor_height.data()),
              static_cast<std::streamsize>(n * sizeof(float)));
    out.write(reinterpret_cast<const char*>(grid.island_id.data()),
              static_cast<std::streamsize>(n * sizeof(uint16_t)));
    if (!out) throw DomainError("failed writing " + path);
}

NavGrid load_navgrid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("navgrid cache: cannot open " + path);

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kNavgMagic, 4) != 0)
        throw ParseError("navgrid cache: bad magic in " + path);
    const auto version = read_pod<uint16_t>(in, path);
    if (version != kNavgVersion)
        throw ParseError("navgrid cache: unsupported version " + std::to_string(version) + " in " +
                         path);

    NavGrid grid;
    grid.origin.x = read_pod<float>(in, path);
    grid.origin.y = read_pod<float>(in, path);
    grid.origin.z = read_pod<float>(in, path);
    grid.cell_size = read_pod<float>(in, path);
    grid.nx = read_pod<uint32_t>(in, path);
    grid.nz = read_pod<uint32_t>(in, path);
    if (grid.cell_size <= 0.0f || grid.nx == 0 || grid.nz == 0)
        throw ParseError("navgrid cache: invalid dimensions in " + path);

    const size_t n = static_cast<size_t>(grid.nx) * grid.nz;
    std::vector<uint8_t> bits((n + 7) / 8);
    in.read(reinterpret_cast<char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
    if (!in) throw ParseError("navgrid cache: truncated file " + path);
    grid.walkable.assign(n, 0);
    for (size_t i = 0; i < n; ++i)
        grid.walkable[i] = (bits[i / 8] >> (i % 8)) & 1u;

    grid.floor_height.resize(n);
    in.read(reinterpret_cast<char*>(grid.floor_height.data()),
            static_cast<std::streamsize>(n * sizeof(float)));
    if (!in) throw ParseError("navgrid cache: truncated file " + path);
    grid.island_id.resize(n);
    in.read(reinterpret_cast<char*>(grid.island_id.data()),
            static_cast<std::streamsize>(n * sizeof(uint16_t)));
    if (!in) throw ParseError("navgrid cache: truncated file " + path);
    return grid;
}

}  // namespace navbench
