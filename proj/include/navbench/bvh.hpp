#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "navbench/math.hpp"
#include "navbench/mesh.hpp"

namespace navbench {

struct RayHit {
    double t = std::numeric_limits<double>::infinity();
    size_t triangle = 0;
    Vec3d point;
    Vec3d barycentric;  // weights for the triangle's three vertices
};

// Bounding volume hierarchy over mesh triangles, median split on the longest
// axis. Holds a reference to the mesh; the mesh must outlive the BVH.
class TriangleBvh {
  public:
    explicit TriangleBvh(const Mesh& mesh);

    // Nearest intersection along origin + t*dir for t in (t_min, t_max].
    // dir must be unit length.
    std::optional<RayHit> raycast(const Vec3d& origin, const Vec3d& dir, double t_min = 1e-6,
                                  double t_max = std::numeric_limits<double>::infinity()) const;

    // All intersections of a vertical downward ray from (x, y_start, z),
    // sorted by increasing t (decreasing height). Used for floor detection.
    std::vector<RayHit> vertical_hits(double x, double z, double y_start) const;

    // True when the open segment between a and b (each inset by eps toward
    // the other endpoint) is free of geometry.
    bool line_of_sight(const Vec3d& a, const Vec3d& b, double eps = 0.05) const;

    const Mesh& mesh() const { return mesh_; }

  private:
    struct Node {
        Vec3d box_min;
        Vec3d box_max;
        int32_t left = -1;    // internal: child index; leaf: first triangle
        int32_t right = -1;   // internal: child index; leaf: -1
        int32_t count = 0;    // leaf: triangle count; internal: 0
    };

    void build(int32_t node, size_t begin, size_t end);
    bool intersect_triangle(size_t tri, const Vec3d& origin, const Vec3d& dir, double t_min,
                            double t_max, RayHit& hit) const;

    const Mesh& mesh_;
    std::vector<Node> nodes_;
    std::vector<uint32_t> order_;     // triangle indices, leaf-contiguous
    std::vector<Vec3d> centroids_;
};

}  // namespace navbench
