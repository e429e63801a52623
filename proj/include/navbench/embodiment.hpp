#pragma once

#include "navbench/errors.hpp"
#include "navbench/math.hpp"

namespace navbench {

// Physical parameters of the cylinder agent and its camera. Defaults are the
// benchmark's canonical values; validate() should run after any override.
struct Embodiment {
    double height = 1.41;           // meters
    double radius = 0.3;            // meters
    double camera_height = 1.31;    // meters above the floor
    double hfov_deg = 42.0;         // horizontal field of view
    int image_width = 640;
    int image_height = 480;
    double forward_step = 0.25;     // meters per MOVE_FORWARD
    double turn_angle_deg = 30.0;   // degrees per TURN_LEFT/RIGHT
    double success_radius = 1.0;    // meters
    double angle_success_deg = 25.0;

    double turn_angle_rad() const { return deg_to_rad(turn_angle_deg); }
    double hfov_rad() const { return deg_to_rad(hfov_deg); }
    double angle_success_rad() const { return deg_to_rad(angle_success_deg); }

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0)) throw DomainError(std::string("embodiment: ") + name + " must be positive");
        };
        positive(height, "height");
        positive(radius, "radius");
        positive(camera_height, "camera_height");
        positive(hfov_deg, "hfov");
        positive(static_cast<double>(image_width), "image_width");
        positive(static_cast<double>(image_height), "image_height");
        positive(forward_step, "forward_step");
        positive(turn_angle_deg, "turn_angle");
        positive(success_radius, "success_radius");
        positive(angle_success_deg, "angle_success");
        if (camera_height >= height)
            throw DomainError("embodiment: camera_height must be below height");
    }
};

}  // namespace navbench
