#pragma once

// Synthetic scenes shared by the test binaries. All builders emit Y-up meshes
// in meters. Walkability probes are vertical rays, so interior obstacles must
// cut the floor under their footprint: a zero-thickness wall standing on an
// intact floor would block sight lines but not standing room.

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <string>
#include <system_error>

#include "navbench/math.hpp"
#include "navbench/mesh.hpp"

namespace fixtures {

using navbench::Mesh;
using navbench::Rgb8;
using navbench::UpAxis;
using navbench::Vec3f;

inline void add_quad(Mesh& mesh, const Vec3f& a, const Vec3f& b, const Vec3f& c, const Vec3f& d,
                     Rgb8 color) {
    const auto base = static_cast<int32_t>(mesh.vertices.size());
    mesh.vertices.push_back(a);
    mesh.vertices.push_back(b);
    mesh.vertices.push_back(c);
    mesh.vertices.push_back(d);
    for (int i = 0; i < 4; ++i) mesh.colors.push_back(color);
    mesh.triangles.push_back({base, base + 1, base + 2});
    mesh.triangles.push_back({base, base + 2, base + 3});
}

// Horizontal rectangle at height y spanning [x0,x1] x [z0,z1].
inline void add_floor(Mesh& mesh, double x0, double z0, double x1, double z1, double y,
                      Rgb8 color) {
    add_quad(mesh,
             Vec3f{static_cast<float>(x0), static_cast<float>(y), static_cast<float>(z0)},
             Vec3f{static_cast<float>(x1), static_cast<float>(y), static_cast<float>(z0)},
             Vec3f{static_cast<float>(x1), static_cast<float>(y), static_cast<float>(z1)},
             Vec3f{static_cast<float>(x0), static_cast<float>(y), static_cast<float>(z1)},
             color);
}

// Vertical rectangle in the plane x = const.
inline void add_wall_x(Mesh& mesh, double x, double z0, double z1, double y0, double y1,
                       Rgb8 color) {
    add_quad(mesh,
             Vec3f{static_cast<float>(x), static_cast<float>(y0), static_cast<float>(z0)},
             Vec3f{static_cast<float>(x), static_cast<float>(y0), static_cast<float>(z1)},
             Vec3f{static_cast<float>(x), static_cast<float>(y1), static_cast<float>(z1)},
             Vec3f{static_cast<float>(x), static_cast<float>(y1), static_cast<float>(z0)},
             color);
}

// Vertical rectangle in the plane z = const.
inline void add_wall_z(Mesh& mesh, double z, double x0, double x1, double y0, double y1,
                       Rgb8 color) {
    add_quad(mesh,
             Vec3f{static_cast<float>(x0), static_cast<float>(y0), static_cast<float>(z)},
             Vec3f{static_cast<float>(x1), static_cast<float>(y0), static_cast<float>(z)},
             Vec3f{static_cast<float>(x1), static_cast<float>(y1), static_cast<float>(z)},
             Vec3f{static_cast<float>(x0), static_cast<float>(y1), static_cast<float>(z)},
             color);
}

inline void add_perimeter_walls(Mesh& mesh, double w, double d, double h) {
    add_wall_x(mesh, 0.0, 0.0, d, 0.0, h, Rgb8{178, 76, 76});
    add_wall_x(mesh, w, 0.0, d, 0.0, h, Rgb8{76, 178, 76});
    add_wall_z(mesh, 0.0, 0.0, w, 0.0, h, Rgb8{76, 76, 178});
    add_wall_z(mesh, d, 0.0, w, 0.0, h, Rgb8{178, 178, 76});
}

// Rectangular room: floor plus four perimeter walls.
inline Mesh flat_room(double w = 10.0, double d = 6.0, double wall_height = 2.0) {
    Mesh mesh;
    mesh.up_axis = UpAxis::YUp;
    add_floor(mesh, 0.0, 0.0, w, d, 0.0, Rgb8{150, 150, 150});
    add_perimeter_walls(mesh, w, d, wall_height);
    return mesh;
}

// Floor only; used where only the walkable footprint matters. A room of
// (span + 0.55) per side leaves a span x span rectangle of walkable cell
// centers after the 0.3 m erosion at 0.05 m cells.
inline Mesh bare_floor(double w, double d) {
    Mesh mesh;
    mesh.up_axis = UpAxis::YUp;
    add_floor(mesh, 0.0, 0.0, w, d, 0.0, Rgb8{150, 150, 150});
    return mesh;
}

inline constexpr double kDividerX0 = 4.9;
inline constexpr double kDividerX1 = 5.1;
inline constexpr double kDoorZ0 = 2.4;
inline constexpr double kDoorZ1 = 3.6;

// 10 x 6 room split by a wall slab at x in [4.9, 5.1]: the floor is cut under
// the slab and a wall plane at x = 5 blocks sight lines. With the doorway
// (z in [2.4, 3.6]) both halves join into one island; without it the scene
// has exactly two.
inline Mesh two_room(bool doorway = true, double w = 10.0, double d = 6.0,
                     double wall_height = 2.0) {
    Mesh mesh;
    mesh.up_axis = UpAxis::YUp;
    add_floor(mesh, 0.0, 0.0, kDividerX0, d, 0.0, Rgb8{150, 150, 150});
    add_floor(mesh, kDividerX1, 0.0, w, d, 0.0, Rgb8{140, 140, 160});
    add_perimeter_walls(mesh, w, d, wall_height);
    if (doorway) {
        add_floor(mesh, kDividerX0, kDoorZ0, kDividerX1, kDoorZ1, 0.0, Rgb8{160, 140, 140});
        add_wall_x(mesh, 0.5 * (kDividerX0 + kDividerX1), 0.0, kDoorZ0, 0.0, wall_height,
                   Rgb8{120, 90, 170});
        add_wall_x(mesh, 0.5 * (kDividerX0 + kDividerX1), kDoorZ1, d, 0.0, wall_height,
                   Rgb8{120, 90, 170});
    } else {
        add_wall_x(mesh, 0.5 * (kDividerX0 + kDividerX1), 0.0, d, 0.0, wall_height,
                   Rgb8{120, 90, 170});
    }
    return mesh;
}

// 10 x 6 room with a ceiling at 1.0 m over the x > 5 half: clearance there is
// below the agent height, so only the open half stays walkable.
inline Mesh half_ceiling_room(double w = 10.0, double d = 6.0, double ceiling_y = 1.0) {
    Mesh mesh = flat_room(w, d, 2.0);
    add_floor(mesh, w / 2.0, 0.0, w, d, ceiling_y, Rgb8{120, 120, 120});
    return mesh;
}

// Too small for episode generation: the largest island radius stays under 2 m.
inline Mesh tiny_room() { return flat_room(1.5, 1.5, 2.0); }

// One triangle filling the whole frustum at the given forward distance, for a
// camera at the origin with yaw 0 (looking along -Z).
inline Mesh fullscreen_triangle(double dist = 2.0) {
    Mesh mesh;
    mesh.up_axis = UpAxis::YUp;
    const auto z = static_cast<float>(-dist);
    const auto base = static_cast<int32_t>(mesh.vertices.size());
    mesh.vertices.push_back(Vec3f{-100.0f, -100.0f, z});
    mesh.vertices.push_back(Vec3f{100.0f, -100.0f, z});
    mesh.vertices.push_back(Vec3f{0.0f, 100.0f, z});
    for (int i = 0; i < 3; ++i) mesh.colors.push_back(Rgb8{200, 40, 40});
    mesh.triangles.push_back({base, base + 1, base + 2});
    return mesh;
}

// size x size quad centered on the optical axis at the given forward
// distance, for a camera at the origin with yaw 0.
inline Mesh centered_quad(double size = 1.0, double dist = 3.0) {
    Mesh mesh;
    mesh.up_axis = UpAxis::YUp;
    const auto h = static_cast<float>(size / 2.0);
    const auto z = static_cast<float>(-dist);
    add_quad(mesh, Vec3f{-h, -h, z}, Vec3f{h, -h, z}, Vec3f{h, h, z}, Vec3f{-h, h, z},
             Rgb8{40, 200, 40});
    return mesh;
}

// Slanted triangles at mixed depths and colors; exercises perspective-correct
// interpolation and z-buffer ordering away from axis-aligned planes.
inline Mesh color_wedges() {
    Mesh mesh;
    mesh.up_axis = UpAxis::YUp;
    auto tri = [&](Vec3f a, Vec3f b, Vec3f c, Rgb8 ca, Rgb8 cb, Rgb8 cc) {
        const auto base = static_cast<int32_t>(mesh.vertices.size());
        mesh.vertices.push_back(a);
        mesh.vertices.push_back(b);
        mesh.vertices.push_back(c);
        mesh.colors.push_back(ca);
        mesh.colors.push_back(cb);
        mesh.colors.push_back(cc);
        mesh.triangles.push_back({base, base + 1, base + 2});
    };
    tri(Vec3f{-1.3f, -0.9f, -2.1f}, Vec3f{1.6f, -0.7f, -3.8f}, Vec3f{0.2f, 1.4f, -2.9f},
        Rgb8{255, 0, 0}, Rgb8{0, 255, 0}, Rgb8{0, 0, 255});
    tri(Vec3f{-2.2f, 1.1f, -4.6f}, Vec3f{0.4f, -1.5f, -3.1f}, Vec3f{2.3f, 0.8f, -5.2f},
        Rgb8{240, 200, 30}, Rgb8{30, 220, 220}, Rgb8{200, 60, 200});
    tri(Vec3f{-0.8f, 0.3f, -1.4f}, Vec3f{0.9f, 0.45f, -1.7f}, Vec3f{0.1f, -0.6f, -1.2f},
        Rgb8{90, 90, 90}, Rgb8{250, 250, 250}, Rgb8{10, 150, 80});
    return mesh;
}

inline bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

// Runs fn expecting it to throw E; returns the exception message, or the empty
// string when nothing was thrown.
template <typename E, typename Fn>
std::string thrown_message(Fn&& fn) {
    try {
        fn();
    } catch (const E& e) {
        return e.what();
    }
    return {};
}

// Unique scratch directory, removed with its contents on destruction.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        const auto base = std::filesystem::temp_directory_path();
        for (int i = 0;; ++i) {
            auto candidate = base / (tag + "-" + std::to_string(::getpid()) + "-" +
                                     std::to_string(i));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = std::move(candidate);
                return;
            }
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

}  // namespace fixtures
