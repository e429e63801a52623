#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "navbench/embodiment.hpp"
#include "navbench/math.hpp"
#include "navbench/mesh.hpp"
#include "navbench/png_io.hpp"

namespace navbench {

struct Intrinsics {
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    int width = 0;
    int height = 0;

    double vertical_fov_rad() const;
};

// Camera pose: position is the optical center; the camera is vertically
// aligned (no pitch or roll), looking along the agent heading for the yaw.
struct Pose {
    Vec3d position;
    double yaw = 0.0;
};

struct Frame {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> rgb;    // width*height*3, row-major from top-left
    std::vector<float> depth;    // camera-space Z in meters, 0 = no hit

    size_t pixel_index(int x, int y) const {
        return static_cast<size_t>(y) * width + static_cast<size_t>(x);
    }
};

inline constexpr double kNearPlane = 0.05;
inline constexpr double kFarPlane = 100.0;

Intrinsics camera_intrinsics(const Embodiment& embodiment);

// Z-buffered rasterization with perspective-correct vertex color
// interpolation; faces are not culled by winding.
Frame render_frame(const Mesh& mesh, const Pose& pose, const Intrinsics& intrinsics,
                   Rgb8 background = Rgb8{0, 0, 0});

// 10*log10(255^2 / MSE) over the RGB channels; +infinity for identical input.
double psnr(const Frame& a, const Frame& b);

ImageRgb frame_to_image(const Frame& frame);
Frame image_to_frame(const ImageRgb& image);  // depth left all zero

struct DepthMap {
    int width = 0;
    int height = 0;
    std::vector<float> values;  // meters
};

DepthMap depth_of(const Frame& frame);

// Raw 32-bit little-endian float array plus a JSON sidecar (path + ".json")
// recording width and height.
void save_depth_raw(const DepthMap& depth, const std::string& path);
DepthMap load_depth_raw(const std::string& path);

}  // namespace navbench
