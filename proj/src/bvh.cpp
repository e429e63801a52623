#include "navbench/bvh.hpp"

#include <algorithm>
#include <cmath>

#include "navbench/errors.hpp"

namespace navbench {

namespace {

constexpr double kBaryEps = 1e-7;  // slack so shared-edge rays still hit
constexpr size_t kLeafSize = 4;

struct BoxRange {
    Vec3d lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity()};
    Vec3d hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};

    void grow(const Vec3d& p) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
        hi.z = std::max(hi.z, p.z);
    }
};

bool ray_box(const Vec3d& origin, const Vec3d& inv_dir, const Vec3d& lo, const Vec3d& hi,
             double t_min, double t_max) {
    double t0 = t_min, t1 = t_max;
    for (int axis = 0; axis < 3; ++axis) {
        const double o = axis == 0 ? origin.x : axis == 1 ? origin.y : origin.z;
        const double inv = axis == 0 ? inv_dir.x : axis == 1 ? inv_dir.y : inv_dir.z;
        const double lo_a = axis == 0 ? lo.x : axis == 1 ? lo.y : lo.z;
        const double hi_a = axis == 0 ? hi.x : axis == 1 ? hi.y : hi.z;
        double near = (lo_a - o) * inv;
        double far = (hi_a - o) * inv;
        if (near > far) std::swap(near, far);
        t0 = std::max(t0, near);
        t1 = std::min(t1, far);
        if (t0 > t1) return false;
    }
    return true;
}

}  // namespace

TriangleBvh::TriangleBvh(const Mesh& mesh) : mesh_(mesh) {
    if (mesh.triangles.empty()) throw DomainError("TriangleBvh: mesh has no triangles");
    const size_t n = mesh.triangles.size();
    order_.resize(n);
    centroids_.resize(n);
    for (size_t t = 0; t < n; ++t) {
        order_[t] = static_cast<uint32_t>(t);
        const auto& tri = mesh.triangles[t];
        centroids_[t] =
            (mesh.vertex(tri[0]) + mesh.vertex(tri[1]) + mesh.vertex(tri[2])) / 3.0;
    }
    nodes_.reserve(2 * n);
    nodes_.emplace_back();
    build(0, 0, n);
    centroids_.clear();
    centroids_.shrink_to_fit();
}

void TriangleBvh::build(int32_t node, size_t begin, size_t end) {
    BoxRange box;
    for (size_t i = begin; i < end; ++i) {
        const auto& tri = mesh_.triangles[order_[i]];
        box.grow(mesh_.vertex(tri[0]));
        box.grow(mesh_.vertex(tri[1]));
        box.grow(mesh_.vertex(tri[2]));
    }
    nodes_[node].box_min = box.lo;
    nodes_[node].box_max = box.hi;

    const size_t count = end - begin;
    if (count <= kLeafSize) {
        nodes_[node].left = static_cast<int32_t>(begin);
        nodes_[node].right = -1;
        nodes_[node].count = static_cast<int32_t>(count);
        return;
    }

    const Vec3d extent = box.hi - box.lo;
    int axis = 0;
    if (extent.y > extent.x) axis = 1;
    if (extent.z > (axis == 0 ? extent.x : extent.y)) axis = 2;

    const size_t mid = begin + count / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](uint32_t a, uint32_t b) {
                         const Vec3d& ca = centroids_[a];
                         const Vec3d& cb = centroids_[b];
                         const double va = axis == 0 ? ca.x : axis == 1 ? ca.y : ca.z;
                         const double vb = axis == 0 ? cb.x : axis == 1 ? cb.y : cb.z;
                         if (va != vb) return va < vb;
                         return a < b;  // deterministic tie-break
                     });

    const auto left = static_cast<int32_t>(nodes_.size());
    nodes_.emplace_back();
    nodes_.emplace_back();
    nodes_[node].left = left;
    nodes_[node].right = left + 1;
    nodes_[node].count = 0;
    build(left, begin, mid);
    build(left + 1, mid, end);
}

bool TriangleBvh::intersect_triangle(size_t tri, const Vec3d& origin, const Vec3d& dir,
                                     double t_min, double t_max, RayHit& hit) const {
    const auto& t = mesh_.triangles[tri];
    const Vec3d a = mesh_.vertex(t[0]);
    const Vec3d b = mesh_.vertex(t[1]);
    const Vec3d c = mesh_.vertex(t[2]);

    const Vec3d e1 = b - a;
    const Vec3d e2 = c - a;
    const Vec3d pvec = cross(dir, e2);
    const double det = dot(e1, pvec);
    if (std::abs(det) < 1e-14) return false;  // parallel or degenerate
    const double inv_det = 1.0 / det;

    const Vec3d tvec = origin - a;
    const double u = dot(tvec, pvec) * inv_det;
    if (u < -kBaryEps || u > 1.0 + kBaryEps) return false;

    const Vec3d qvec = cross(tvec, e1);
    const double v = dot(dir, qvec) * inv_det;
    if (v < -kBaryEps || u + v > 1.0 + kBaryEps) return false;

    const double dist = dot(e2, qvec) * inv_det;
    if (dist <= t_min || dist > t_max) return false;

    hit.t = dist;
    hit.triangle = tri;
    hit.point = origin + dir * dist;
    hit.barycentric = Vec3d{1.0 - u - v, u, v};
    return true;
}

std::optional<RayHit> TriangleBvh::raycast(const Vec3d& origin, const Vec3d& dir, double t_min,
                                           double t_max) const {
    if (std::abs(norm(dir) - 1.0) > 1e-6)
        throw DomainError("raycast: direction must be unit length");
    const Vec3d inv_dir{1.0 / dir.x, 1.0 / dir.y, 1.0 / dir.z};
    RayHit best;
    bool found = false;
    double limit = t_max;

    int32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (!ray_box(origin, inv_dir, node.box_min, node.box_max, t_min, limit)) continue;
        if (node.count > 0) {
            for (int32_t i = 0; i < node.count; ++i) {
                RayHit hit;
                if (intersect_triangle(order_[node.left + i], origin, dir, t_min, limit, hit)) {
                    best = hit;
                    limit = hit.t;
                    found = true;
                }
            }
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
    if (!found) return std::nullopt;
    return best;
}

std::vector<RayHit> TriangleBvh::vertical_hits(double x, double z, double y_start) const {
    const Vec3d origin{x, y_start, z};
    const Vec3d dir{0.0, -1.0, 0.0};
    const Vec3d inv_dir{std::numeric_limits<double>::infinity(), -1.0,
                        std::numeric_limits<double>::infinity()};

    std::vector<RayHit> hits;
    int32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        // Vertical rays need an explicit slab test on x/z since inv is inf.
        if (x < node.box_min.x || x > node.box_max.x || z < node.box_min.z ||
            z > node.box_max.z)
            continue;
        if (y_start < node.box_min.y) continue;
        if (node.count > 0) {
            for (int32_t i = 0; i < node.count; ++i) {
                RayHit hit;
                if (intersect_triangle(order_[node.left + i], origin, dir, 0.0,
                                       std::numeric_limits<double>::infinity(), hit))
                    hits.push_back(hit);
            }
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
    std::sort(hits.begin(), hits.end(), [](const RayHit& a, const RayHit& b) {
        if (a.t != b.t) return a.t < b.t;
        return a.triangle < b.triangle;
    });
    return hits;
}

bool TriangleBvh::line_of_sight(const Vec3d& a, const Vec3d& b, double eps) const {
    const Vec3d delta = b - a;
    const double len = norm(delta);
    if (len <= 2.0 * eps) return true;  // endpoints (almost) coincide
    const Vec3d dir = delta / len;
    const Vec3d start = a + dir * eps;
    return !raycast(start, dir, 0.0, len - 2.0 * eps).has_value();
}

}  // namespace navbench
