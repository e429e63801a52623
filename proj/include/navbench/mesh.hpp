#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "navbench/math.hpp"

namespace navbench {

enum class UpAxis { YUp, ZUp };

std::string to_string(UpAxis axis);
UpAxis up_axis_from_string(const std::string& s);

struct Rgb8 {
    uint8_t r = 128;
    uint8_t g = 128;
    uint8_t b = 128;
};

/// Indexed triangle surface; the unit of scene ingestion. Positions are
/// float32 (the PLY storage type) so binary round-trips are bit-exact.
/// Immutable by convention after load; safe to share across threads.
struct Mesh {
    std::vector<Vec3f> vertices;
    std::vector<Rgb8> colors;            // empty or one per vertex
    std::vector<Vec3f> normals;          // empty or one per vertex, unit length
    std::vector<std::array<int32_t, 3>> triangles;
    UpAxis up_axis = UpAxis::ZUp;

    bool has_colors() const { return !colors.empty(); }
    bool has_normals() const { return !normals.empty(); }

    Vec3d vertex(size_t i) const { return Vec3d(vertices[i]); }
    Rgb8 color_or_gray(size_t i) const { return has_colors() ? colors[i] : Rgb8{}; }

    /// Geometric (unnormalized) triangle normal; zero vector for degenerate
    /// triangles.
    Vec3d triangle_normal(size_t t) const;
    double triangle_area(size_t t) const;
};

struct AABB {
    Vec3d min;
    Vec3d max;

    Vec3d extent() const { return max - min; }
};

struct PointCloud {
    std::vector<Vec3d> points;
    std::vector<Vec3d> normals;  // empty or one per point, unit length

    bool has_normals() const { return !normals.empty(); }
    size_t size() const { return points.size(); }
};

enum class PlyFormat { Ascii, BinaryLittleEndian };

/// Parses an ascii or binary-little-endian PLY file. Vertex x/y/z must be
/// declared float32; optional red/green/blue (uint8) and nx/ny/nz (float32)
/// are picked up, other vertex properties are skipped. Faces are triangulated
/// by fanning. `up_hint` records the file's vertical convention (Z-up is the
/// reconstruction pipeline default).
Mesh load_ply(const std::string& path, UpAxis up_hint = UpAxis::ZUp);

/// Writes vertices (+colors/normals when present) and uint8-counted int32
/// face indices.
void save_ply(const Mesh& mesh, const std::string& path,
              PlyFormat format = PlyFormat::BinaryLittleEndian);

/// Rigid change of vertical convention. Z-up to Y-up maps (x,y,z) to
/// (x,z,-y); the reverse is its inverse. Normals rotate identically.
Mesh convert_axis(const Mesh& mesh, UpAxis target);

/// Tight bounds over all vertices; throws DomainError for an empty mesh.
AABB compute_bounds(const Mesh& mesh);

/// Area-uniform surface sampling: triangle chosen proportionally to area,
/// barycentric-uniform within, per-point normal = triangle geometric normal.
/// Degenerate triangles are never sampled. Deterministic for a fixed seed.
PointCloud sample_surface(const Mesh& mesh, size_t n, uint64_t seed);

/// Vertices (and vertex normals, when present) as a point cloud. Used when a
/// PLY is already a point set rather than a surface.
PointCloud to_point_cloud(const Mesh& mesh);

}  // namespace navbench
