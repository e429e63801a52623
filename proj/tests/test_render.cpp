#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <vector>

#include "navbench/embodiment.hpp"
#include "navbench/errors.hpp"
#include "navbench/render.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace navbench;

namespace {

Intrinsics small_intrinsics() {
    Embodiment emb;
    emb.image_width = 64;
    emb.image_height = 48;
    return camera_intrinsics(emb);
}

// Maximum |raster - raycast| depth difference over every pixel, treating
// no-hit (0) as a value that must agree too.
double max_depth_error(const Mesh& mesh, const Pose& pose, const Intrinsics& intr) {
    const Frame frame = render_frame(mesh, pose, intr);
    const std::vector<float> reference = oracles::raycast_depth(mesh, pose, intr);
    REQUIRE(frame.depth.size() == reference.size());
    double worst = 0.0;
    for (size_t i = 0; i < reference.size(); ++i)
        worst = std::max(worst, std::abs(static_cast<double>(frame.depth[i]) - reference[i]));
    return worst;
}

}  // namespace

TEST_CASE("default intrinsics derive from the horizontal field of view") {
    const Intrinsics intr = camera_intrinsics(Embodiment{});
    const double expected_fx = 320.0 / std::tan(deg_to_rad(21.0));
    CHECK(std::abs(intr.fx - expected_fx) <= 1e-9);
    CHECK(intr.fy == intr.fx);  // square pixels
    CHECK(intr.cx == 320.0);
    CHECK(intr.cy == 240.0);
    CHECK(intr.width == 640);
    CHECK(intr.height == 480);
    CHECK(intr.fx == doctest::Approx(833.6285007).epsilon(1e-9));
    // Implied vertical field of view for the 4:3 sensor.
    CHECK(rad_to_deg(intr.vertical_fov_rad()) == doctest::Approx(32.122010).epsilon(1e-6));
}

TEST_CASE("a 90 degree horizontal fov puts the focal length at the center") {
    Embodiment emb;
    emb.hfov_deg = 90.0;
    const Intrinsics intr = camera_intrinsics(emb);
    CHECK(intr.fx == doctest::Approx(intr.cx).epsilon(1e-12));
}

TEST_CASE("renderer validates its inputs") {
    const Intrinsics intr = small_intrinsics();
    Mesh empty;
    const auto msg = fixtures::thrown_message<DomainError>(
        [&] { render_frame(empty, Pose{}, intr); });
    CHECK(fixtures::contains(msg, "empty mesh"));

    Mesh sideways = fixtures::flat_room();
    sideways.up_axis = UpAxis::ZUp;
    const auto axis = fixtures::thrown_message<DomainError>(
        [&] { render_frame(sideways, Pose{Vec3d{5, 1.31, 3}, 0.0}, intr); });
    CHECK(fixtures::contains(axis, "y-up"));
}

TEST_CASE("geometry behind the camera leaves the background untouched") {
    const Mesh mesh = fixtures::fullscreen_triangle(2.0);
    const Intrinsics intr = small_intrinsics();
    // yaw pi looks along +Z; the triangle sits at z = -2.
    const Frame frame = render_frame(mesh, Pose{Vec3d{0, 0, 0}, kPi}, intr,
                                     Rgb8{10, 20, 30});
    for (int y = 0; y < frame.height; ++y) {
        for (int x = 0; x < frame.width; ++x) {
            const size_t i = frame.pixel_index(x, y);
            REQUIRE(frame.depth[i] == 0.0f);
            REQUIRE(frame.rgb[i * 3 + 0] == 10);
            REQUIRE(frame.rgb[i * 3 + 1] == 20);
            REQUIRE(frame.rgb[i * 3 + 2] == 30);
        }
    }
}

TEST_CASE("a frame-filling wall reads back its distance at every pixel") {
    const Mesh mesh = fixtures::fullscreen_triangle(2.0);
    const Intrinsics intr = camera_intrinsics(Embodiment{});
    const Frame frame = render_frame(mesh, Pose{Vec3d{0, 0, 0}, 0.0}, intr);
    for (size_t i = 0; i < frame.depth.size(); ++i) {
        REQUIRE(std::abs(frame.depth[i] - 2.0f) <= 1e-3f);
        REQUIRE(frame.rgb[i * 3 + 0] == 200);  // flat vertex color survives interpolation
        REQUIRE(frame.rgb[i * 3 + 1] == 40);
        REQUIRE(frame.rgb[i * 3 + 2] == 40);
    }
}

TEST_CASE("a centered unit quad covers the expected pixel fraction") {
    const Mesh mesh = fixtures::centered_quad(1.0, 3.0);
    const Intrinsics intr = camera_intrinsics(Embodiment{});
    const Frame frame = render_frame(mesh, Pose{Vec3d{0, 0, 0}, 0.0}, intr);
    size_t covered = 0;
    for (float d : frame.depth)
        if (d > 0.0f) ++covered;
    const double fraction =
        static_cast<double>(covered) / (static_cast<double>(intr.width) * intr.height);
    // (fx * size / dist)^2 screen-area prediction for a fronto-parallel quad.
    CHECK(std::abs(fraction - 0.2513) <= 0.01);
    for (float d : frame.depth)
        if (d > 0.0f) REQUIRE(std::abs(d - 3.0f) <= 1e-4f);
}

TEST_CASE("rasterized depth matches per-pixel raycasting") {
    const Intrinsics intr = small_intrinsics();

    SUBCASE("room interior") {
        const double err = max_depth_error(
            fixtures::flat_room(), Pose{Vec3d{3.137, 1.31, 2.718}, 0.5321}, intr);
        CHECK(err <= 1e-3);
    }
    SUBCASE("doorway scene") {
        const double err = max_depth_error(
            fixtures::two_room(true), Pose{Vec3d{3.913, 1.31, 3.071}, -1.2341}, intr);
        CHECK(err <= 1e-3);
    }
    SUBCASE("slanted wedges") {
        const double err = max_depth_error(
            fixtures::color_wedges(), Pose{Vec3d{0.0731, 0.1171, 0.2931}, 0.0417}, intr);
        CHECK(err <= 1e-3);
    }
}

TEST_CASE("rendering is deterministic") {
    const Mesh mesh = fixtures::two_room(true);
    const Intrinsics intr = small_intrinsics();
    const Pose pose{Vec3d{2.513, 1.31, 3.217}, 0.7719};
    const Frame a = render_frame(mesh, pose, intr);
    const Frame b = render_frame(mesh, pose, intr);
    REQUIRE(a.rgb.size() == b.rgb.size());
    CHECK(std::memcmp(a.rgb.data(), b.rgb.data(), a.rgb.size()) == 0);
    CHECK(std::memcmp(a.depth.data(), b.depth.data(), a.depth.size() * sizeof(float)) == 0);
}

TEST_CASE("psnr follows its closed form") {
    Frame a, b;
    a.width = b.width = 16;
    a.height = b.height = 16;
    a.rgb.assign(16 * 16 * 3, 0);
    b.rgb.assign(16 * 16 * 3, 0);
    a.depth.assign(16 * 16, 0.0f);
    b.depth.assign(16 * 16, 0.0f);

    CHECK(psnr(a, a) == std::numeric_limits<double>::infinity());

    // Maximal mean-squared error: 255 everywhere on one side.
    std::fill(b.rgb.begin(), b.rgb.end(), 255);
    CHECK(psnr(a, b) == 0.0);
    CHECK(psnr(b, a) == psnr(a, b));

    // Half the bytes at full error halves the MSE: 10*log10(2).
    Frame c = a;
    for (size_t i = 0; i < c.rgb.size() / 2; ++i) c.rgb[i] = 255;
    CHECK(psnr(a, c) == doctest::Approx(3.0103).epsilon(1e-4));
    CHECK(psnr(c, a) == psnr(a, c));

    Frame odd;
    odd.width = 8;
    odd.height = 16;
    odd.rgb.assign(8 * 16 * 3, 0);
    const auto msg =
        fixtures::thrown_message<DomainError>([&] { psnr(a, odd); });
    CHECK(fixtures::contains(msg, "dimensions"));
}

TEST_CASE("frames convert to images and back") {
    const Frame frame = render_frame(fixtures::color_wedges(),
                                     Pose{Vec3d{0, 0, 0.5}, 0.0}, small_intrinsics());
    const ImageRgb image = frame_to_image(frame);
    CHECK(image.width == frame.width);
    CHECK(image.height == frame.height);
    REQUIRE(image.pixels == frame.rgb);

    const Frame back = image_to_frame(image);
    CHECK(back.width == frame.width);
    REQUIRE(back.rgb == frame.rgb);
    for (float d : back.depth) REQUIRE(d == 0.0f);
}

TEST_CASE("raw depth maps round-trip through disk") {
    const Frame frame = render_frame(fixtures::flat_room(),
                                     Pose{Vec3d{5.1, 1.31, 3.2}, 1.1}, small_intrinsics());
    const DepthMap depth = depth_of(frame);
    CHECK(depth.width == frame.width);
    CHECK(depth.height == frame.height);
    REQUIRE(depth.values == frame.depth);

    fixtures::TempDir tmp("depth");
    const std::string path = tmp.file("view.f32");
    save_depth_raw(depth, path);
    const DepthMap back = load_depth_raw(path);
    CHECK(back.width == depth.width);
    CHECK(back.height == depth.height);
    REQUIRE(back.values == depth.values);

    SUBCASE("missing sidecar") {
        std::filesystem::remove(path + ".json");
        const auto msg =
            fixtures::thrown_message<ParseError>([&] { load_depth_raw(path); });
        CHECK(fixtures::contains(msg, "sidecar"));
    }
    SUBCASE("payload shorter than the sidecar promises") {
        std::filesystem::resize_file(path, 100);
        const auto msg =
            fixtures::thrown_message<ParseError>([&] { load_depth_raw(path); });
        CHECK(fixtures::contains(msg, "shorter"));
    }
}
