#include "navbench/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "navbench/errors.hpp"

namespace navbench {

double Intrinsics::vertical_fov_rad() const {
    // 2*atan(tan(hfov/2) * height/width), with tan(hfov/2) = (width/2)/fx
    return 2.0 * std::atan(height / (2.0 * fx));
}

Intrinsics camera_intrinsics(const Embodiment& embodiment) {
    embodiment.validate();
    Intrinsics intr;
    intr.width = embodiment.image_width;
    intr.height = embodiment.image_height;
    intr.fx = (embodiment.image_width / 2.0) / std::tan(embodiment.hfov_rad() / 2.0);
    intr.fy = intr.fx;  // square pixels
    intr.cx = embodiment.image_width / 2.0;
    intr.cy = embodiment.image_height / 2.0;
    return intr;
}

namespace {

struct CamVertex {
    Vec3d p;     // camera space: x right, y down, z forward
    Vec3d color; // 0..255 per channel
};

CamVertex lerp(const CamVertex& a, const CamVertex& b, double t) {
    return CamVertex{a.p + (b.p - a.p) * t, a.color + (b.color - a.color) * t};
}

// Clips the triangle against z = near; returns 0, 3, or 4 vertices.
int clip_near(const CamVertex in[3], CamVertex out[4]) {
    int count = 0;
    for (int i = 0; i < 3; ++i) {
        const CamVertex& cur = in[i];
        const CamVertex& next = in[(i + 1) % 3];
        const bool cur_in = cur.p.z >= kNearPlane;
        const bool next_in = next.p.z >= kNearPlane;
        if (cur_in) out[count++] = cur;
        if (cur_in != next_in) {
            const double t = (kNearPlane - cur.p.z) / (next.p.z - cur.p.z);
            out[count++] = lerp(cur, next, t);
        }
    }
    return count;
}

}  // namespace

Frame render_frame(const Mesh& mesh, const Pose& pose, const Intrinsics& intrinsics,
                   Rgb8 background) {
    if (mesh.vertices.empty()) throw DomainError("render_frame: empty mesh");
    if (mesh.up_axis != UpAxis::YUp)
        throw DomainError("render_frame: mesh must be y-up (convert axes first)");

    const int w = intrinsics.width;
    const int h = intrinsics.height;
    Frame frame;
    frame.width = w;
    frame.height = h;
    frame.rgb.resize(static_cast<size_t>(w) * h * 3);
    frame.depth.assign(static_cast<size_t>(w) * h, 0.0f);
    for (size_t i = 0; i < frame.depth.size(); ++i) {
        frame.rgb[i * 3 + 0] = background.r;
        frame.rgb[i * 3 + 1] = background.g;
        frame.rgb[i * 3 + 2] = background.b;
    }
    std::vector<double> zbuf(static_cast<size_t>(w) * h,
                             std::numeric_limits<double>::infinity());

    const Vec3d fwd = heading(pose.yaw);
    const Vec3d right = cross(fwd, Vec3d{0.0, 1.0, 0.0});
    const Vec3d down{0.0, -1.0, 0.0};

    auto to_camera = [&](const Vec3d& world) {
        const Vec3d d = world - pose.position;
        return Vec3d{dot(d, right), dot(d, down), dot(d, fwd)};
    };

    auto raster = [&](const CamVertex& a, const CamVertex& b, const CamVertex& c) {
        // screen positions of the three vertices
        const double ax = intrinsics.fx * a.p.x / a.p.z + intrinsics.cx;
        const double ay = intrinsics.fy * a.p.y / a.p.z + intrinsics.cy;
        const double bx = intrinsics.fx * b.p.x / b.p.z + intrinsics.cx;
        const double by = intrinsics.fy * b.p.y / b.p.z + intrinsics.cy;
        const double cx = intrinsics.fx * c.p.x / c.p.z + intrinsics.cx;
        const double cy = intrinsics.fy * c.p.y / c.p.z + intrinsics.cy;

        const double area = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
        if (area == 0.0) return;
        const double inv_area = 1.0 / area;

        const int x0 = std::max(0, static_cast<int>(std::floor(std::min({ax, bx, cx}) - 0.5)));
        const int x1 = std::min(w - 1, static_cast<int>(std::ceil(std::max({ax, bx, cx}))));
        const int y0 = std::max(0, static_cast<int>(std::floor(std::min({ay, by, cy}) - 0.5)));
        const int y1 = std::min(h - 1, static_cast<int>(std::ceil(std::max({ay, by, cy}))));
        if (x0 > x1 || y0 > y1) return;

        const double inv_za = 1.0 / a.p.z;
        const double inv_zb = 1.0 / b.p.z;
        const double inv_zc = 1.0 / c.p.z;

        for (int py = y0; py <= y1; ++py) {
            const double sy = py + 0.5;
            for (int px = x0; px <= x1; ++px) {
                const double sx = px + 0.5;
                // barycentric weights, sign-normalized so either winding draws
                double wa = ((bx - sx) * (cy - sy) - (by - sy) * (cx - sx)) * inv_area;
                double wb = ((cx - sx) * (ay - sy) - (cy - sy) * (ax - sx)) * inv_area;
                double wc = 1.0 - wa - wb;
                if (wa < 0.0 || wb < 0.0 || wc < 0.0) continue;

                const double inv_z = wa * inv_za + wb * inv_zb + wc * inv_zc;
                const double z = 1.0 / inv_z;
                if (z < kNearPlane || z > kFarPlane) continue;

                const size_t idx = frame.pixel_index(px, py);
                if (z >= zbuf[idx]) continue;
                zbuf[idx] = z;
                frame.depth[idx] = static_cast<float>(z);

                const Vec3d color = (a.color * (wa * inv_za) + b.color * (wb * inv_zb) +
                                     c.color * (wc * inv_zc)) * z;
                frame.rgb[idx * 3 + 0] =
                    static_cast<uint8_t>(std::clamp(std::lround(color.x), 0l, 255l));
                frame.rgb[idx * 3 + 1] =
                    static_cast<uint8_t>(std::clamp(std::lround(color.y), 0l, 255l));
                frame.rgb[idx * 3 + 2] =
                    static_cast<uint8_t>(std::clamp(std::lround(color.z), 0l, 255l));
            }
        }
    };

    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        CamVertex cam[3];
        bool any_in_front = false;
        for (int i = 0; i < 3; ++i) {
            cam[i].p = to_camera(mesh.vertex(tri[i]));
            const Rgb8 c = mesh.color_or_gray(tri[i]);
            cam[i].color = Vec3d{static_cast<double>(c.r), static_cast<double>(c.g),
                                 static_cast<double>(c.b)};
            if (cam[i].p.z >= kNearPlane) any_in_front = true;
        }
        if (!any_in_front) continue;

        CamVertex clipped[4];
        const int n = clip_near(cam, clipped);
        for (int i = 2; i < n; ++i) raster(clipped[0], clipped[i - 1], clipped[i]);
    }
    return frame;
}

double psnr(const Frame& a, const Frame& b) {
    if (a.width != b.width || a.height != b.height)
        throw DomainError("psnr: frame dimensions differ");
    if (a.rgb.size() != b.rgb.size()) throw DomainError("psnr: rgb buffer sizes differ");
    if (a.rgb.empty()) throw DomainError("psnr: empty frames");

    double sum_sq = 0.0;
    for (size_t i = 0; i < a.rgb.size(); ++i) {
        const double d = static_cast<double>(a.rgb[i]) - static_cast<double>(b.rgb[i]);
        sum_sq += d * d;
    }
    if (sum_sq == 0.0) return std::numeric_limits<double>::infinity();
    const double mse = sum_sq / static_cast<double>(a.rgb.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

ImageRgb frame_to_image(const Frame& frame) {
    ImageRgb image;
    image.width = frame.width;
    image.height = frame.height;
    image.pixels = frame.rgb;
    return image;
}

Frame image_to_frame(const ImageRgb& image) {
    Frame frame;
    frame.width = image.width;
    frame.height = image.height;
    frame.rgb = image.pixels;
    frame.depth.assign(static_cast<size_t>(image.width) * image.height, 0.0f);
    return frame;
}

DepthMap depth_of(const Frame& frame) {
    return DepthMap{frame.width, frame.height, frame.depth};
}

void save_depth_raw(const DepthMap& depth, const std::string& path) {
    if (depth.values.size() != static_cast<size_t>(depth.width) * depth.height)
        throw DomainError("save_depth_raw: inconsistent dimensions");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(depth.values.data()),
              static_cast<std::streamsize>(depth.values.size() * sizeof(float)));
    if (!out) throw DomainError("failed writing " + path);

    nlohmann::json sidecar{{"width", depth.width}, {"height", depth.height}};
    std::ofstream side(path + ".json", std::ios::binary);
    if (!side) throw DomainError("cannot open " + path + ".json for writing");
    side << sidecar.dump() << "\n";
}

DepthMap load_depth_raw(const std::string& path) {
    std::ifstream side(path + ".json", std::ios::binary);
    if (!side) throw ParseError("depth map: missing sidecar " + path + ".json");
    nlohmann::json sidecar;
    try {
        side >> sidecar;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("depth map: invalid sidecar " + path + ".json: " + e.what());
    }
    DepthMap depth;
    if (!sidecar.contains("width") || !sidecar.contains("height"))
        throw ParseError("depth map: sidecar missing width/height in " + path + ".json");
    depth.width = sidecar["width"].get<int>();
    depth.height = sidecar["height"].get<int>();
    if (depth.width <= 0 || depth.height <= 0)
        throw ParseError("depth map: non-positive dimensions in " + path + ".json");

    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("depth map: cannot open " + path);
    depth.values.resize(static_cast<size_t>(depth.width) * depth.height);
    in.read(reinterpret_cast<char*>(depth.values.data()),
            static_cast<std::streamsize>(depth.values.size() * sizeof(float)));
    if (!in) throw ParseError("depth map: file shorter than sidecar dimensions: " + path);
    return depth;
}

}  // namespace navbench
