#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "navbench/errors.hpp"
#include "navbench/mesh.hpp"
#include "navbench/rng.hpp"

#include "fixtures.hpp"

using namespace navbench;

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

void write_bytes(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void append_f32(std::vector<uint8_t>& bytes, float v) {
    uint8_t raw[4];
    std::memcpy(raw, &v, 4);
    bytes.insert(bytes.end(), raw, raw + 4);
}

void append_i32(std::vector<uint8_t>& bytes, int32_t v) {
    uint8_t raw[4];
    std::memcpy(raw, &v, 4);
    bytes.insert(bytes.end(), raw, raw + 4);
}

bool same_vertices(const Mesh& a, const Mesh& b) {
    if (a.vertices.size() != b.vertices.size()) return false;
    for (size_t i = 0; i < a.vertices.size(); ++i) {
        if (std::memcmp(&a.vertices[i], &b.vertices[i], sizeof(Vec3f)) != 0) return false;
    }
    return true;
}

const std::string kTriangleAscii =
    "ply\n"
    "format ascii 1.0\n"
    "element vertex 3\n"
    "property float x\n"
    "property float y\n"
    "property float z\n"
    "element face 1\n"
    "property list uchar int vertex_indices\n"
    "end_header\n"
    "0.125 0 0\n"
    "1.5 0 0\n"
    "0 2.25 0\n"
    "3 0 1 2\n";

}  // namespace

TEST_CASE("ascii PLY with three vertices and one face parses") {
    fixtures::TempDir dir("mesh-ascii");
    write_file(dir.file("tri.ply"), kTriangleAscii);

    const Mesh mesh = load_ply(dir.file("tri.ply"));
    REQUIRE(mesh.vertices.size() == 3);
    REQUIRE(mesh.triangles.size() == 1);
    CHECK(mesh.vertices[0].x == 0.125f);
    CHECK(mesh.vertices[1].x == 1.5f);
    CHECK(mesh.vertices[2].y == 2.25f);
    CHECK(mesh.triangles[0] == std::array<int32_t, 3>{0, 1, 2});
    CHECK(mesh.up_axis == UpAxis::ZUp);  // default hint for reconstruction outputs
    CHECK_FALSE(mesh.has_colors());
    CHECK_FALSE(mesh.has_normals());

    const Mesh as_y = load_ply(dir.file("tri.ply"), UpAxis::YUp);
    CHECK(as_y.up_axis == UpAxis::YUp);
    CHECK(same_vertices(mesh, as_y));  // the hint labels, it does not transform
}

TEST_CASE("hand-written ascii and binary encodings load as the same mesh") {
    fixtures::TempDir dir("mesh-encodings");
    write_file(dir.file("a.ply"), kTriangleAscii);

    std::vector<uint8_t> bin;
    const std::string header =
        "ply\n"
        "format binary_little_endian 1.0\n"
        "element vertex 3\n"
        "property float x\n"
        "property float y\n"
        "property float z\n"
        "element face 1\n"
        "property list uchar int vertex_indices\n"
        "end_header\n";
    bin.insert(bin.end(), header.begin(), header.end());
    const float coords[9] = {0.125f, 0.0f, 0.0f, 1.5f, 0.0f, 0.0f, 0.0f, 2.25f, 0.0f};
    for (float c : coords) append_f32(bin, c);
    bin.push_back(3);
    for (int32_t i : {0, 1, 2}) append_i32(bin, i);
    write_bytes(dir.file("b.ply"), bin);

    const Mesh a = load_ply(dir.file("a.ply"));
    const Mesh b = load_ply(dir.file("b.ply"));
    CHECK(same_vertices(a, b));
    CHECK(a.triangles == b.triangles);
}

TEST_CASE("binary save/load round-trips every field bit-exactly") {
    Mesh mesh;
    mesh.up_axis = UpAxis::YUp;
    Rng rng(41);
    for (int i = 0; i < 64; ++i) {
        mesh.vertices.push_back(Vec3f{static_cast<float>(rng.uniform(-10.0, 10.0)),
                                      static_cast<float>(rng.uniform(-10.0, 10.0)),
                                      static_cast<float>(rng.uniform(-10.0, 10.0))});
        mesh.colors.push_back(Rgb8{static_cast<uint8_t>(rng.uniform_index(256)),
                                   static_cast<uint8_t>(rng.uniform_index(256)),
                                   static_cast<uint8_t>(rng.uniform_index(256))});
        mesh.normals.push_back(Vec3f{0.0f, 1.0f, 0.0f});
    }
    for (int i = 0; i < 40; ++i) {
        mesh.triangles.push_back({static_cast<int32_t>(rng.uniform_index(64)),
                                  static_cast<int32_t>(rng.uniform_index(64)),
                                  static_cast<int32_t>(rng.uniform_index(64))});
    }

    fixtures::TempDir dir("mesh-roundtrip");

    for (const PlyFormat format : {PlyFormat::BinaryLittleEndian, PlyFormat::Ascii}) {
        const std::string path = dir.file(format == PlyFormat::Ascii ? "a.ply" : "b.ply");
        save_ply(mesh, path, format);
        const Mesh back = load_ply(path, UpAxis::YUp);
        CHECK(same_vertices(mesh, back));  // %.9g round-trips float32 exactly
        CHECK(back.triangles == mesh.triangles);
        REQUIRE(back.colors.size() == mesh.colors.size());
        for (size_t i = 0; i < mesh.colors.size(); ++i) {
            CHECK(back.colors[i].r == mesh.colors[i].r);
            CHECK(back.colors[i].g == mesh.colors[i].g);
            CHECK(back.colors[i].b == mesh.colors[i].b);
        }
        REQUIRE(back.normals.size() == mesh.normals.size());
        for (size_t i = 0; i < mesh.normals.size(); ++i)
            CHECK(std::memcmp(&back.normals[i], &mesh.normals[i], sizeof(Vec3f)) == 0);
    }
}

TEST_CASE("malformed PLY files are rejected with located errors") {
    fixtures::TempDir dir("mesh-errors");

    SUBCASE("missing magic") {
        write_file(dir.file("x.ply"), "plx\nformat ascii 1.0\nend_header\n");
        const auto msg =
            fixtures::thrown_message<ParseError>([&] { load_ply(dir.file("x.ply")); });
        CHECK(fixtures::contains(msg, "missing 'ply' magic"));
    }
    SUBCASE("unsupported format names the header line") {
        write_file(dir.file("x.ply"),
                   "ply\nformat binary_big_endian 1.0\nelement vertex 0\nproperty float x\n"
                   "property float y\nproperty float z\nend_header\n");
        const auto msg =
            fixtures::thrown_message<ParseError>([&] { load_ply(dir.file("x.ply")); });
        CHECK(fixtures::contains(msg, "unsupported format"));
        CHECK(fixtures::contains(msg, "line 2"));
    }
    SUBCASE("face referencing a missing vertex") {
        std::string text = kTriangleAscii;
        const auto pos = text.find("3 0 1 2");
        text.replace(pos, 7, "3 0 1 7");
        write_file(dir.file("x.ply"), text);
        const auto msg =
            fixtures::thrown_message<ParseError>([&] { load_ply(dir.file("x.ply")); });
        CHECK(fixtures::contains(msg, "index out of range"));
        CHECK(fixtures::contains(msg, "7 of 3"));
    }
    SUBCASE("float64 positions are rejected") {
        write_file(dir.file("x.ply"),
                   "ply\nformat ascii 1.0\nelement vertex 1\nproperty double x\n"
                   "property double y\nproperty double z\nelement face 0\n"
                   "property list uchar int vertex_indices\nend_header\n0 0 0\n");
        const auto msg =
            fixtures::thrown_message<ParseError>([&] { load_ply(dir.file("x.ply")); });
        CHECK(fixtures::contains(msg, "vertex property 'x'"));
    }
    SUBCASE("bad ascii token names the data line") {
        std::string text = kTriangleAscii;
        const auto pos = text.find("1.5 0 0");
        text.replace(pos, 7, "oops 0 0");
        write_file(dir.file("x.ply"), text);
        const auto msg =
            fixtures::thrown_message<ParseError>([&] { load_ply(dir.file("x.ply")); });
        CHECK(fixtures::contains(msg, "bad numeric token 'oops'"));
        CHECK(fixtures::contains(msg, "line 11"));
    }
    SUBCASE("truncated binary names the byte offset") {
        std::vector<uint8_t> bin;
        const std::string header =
            "ply\nformat binary_little_endian 1.0\nelement vertex 2\nproperty float x\n"
            "property float y\nproperty float z\nelement face 0\n"
            "property list uchar int vertex_indices\nend_header\n";
        bin.insert(bin.end(), header.begin(), header.end());
        append_f32(bin, 1.0f);  // 4 of the 24 payload bytes
        write_bytes(dir.file("x.ply"), bin);
        const auto msg =
            fixtures::thrown_message<ParseError>([&] { load_ply(dir.file("x.ply")); });
        CHECK(fixtures::contains(msg, "unexpected end of binary data"));
        CHECK(fixtures::contains(msg, "byte offset"));
    }
    SUBCASE("missing file") {
        const auto msg = fixtures::thrown_message<ParseError>(
            [&] { load_ply(dir.file("does-not-exist.ply")); });
        CHECK(fixtures::contains(msg, "cannot open"));
    }
}

TEST_CASE("axis conversion swaps the vertical convention rigidly") {
    Mesh mesh;
    mesh.up_axis = UpAxis::ZUp;
    mesh.vertices.push_back(Vec3f{1.0f, 2.0f, 3.0f});
    mesh.normals.push_back(Vec3f{0.0f, 0.0f, 1.0f});  // +Z, i.e. "up" in a Z-up mesh
    mesh.triangles.push_back({0, 0, 0});

    const Mesh y = convert_axis(mesh, UpAxis::YUp);
    CHECK(y.up_axis == UpAxis::YUp);
    CHECK(y.vertices[0].x == 1.0f);
    CHECK(y.vertices[0].y == 3.0f);
    CHECK(y.vertices[0].z == -2.0f);
    CHECK(y.normals[0].x == 0.0f);
    CHECK(y.normals[0].y == 1.0f);  // up maps to up
    CHECK(y.normals[0].z == 0.0f);

    const Mesh back = convert_axis(y, UpAxis::ZUp);
    CHECK(back.up_axis == UpAxis::ZUp);
    CHECK(same_vertices(back, mesh));

    const Mesh same = convert_axis(mesh, UpAxis::ZUp);
    CHECK(same_vertices(same, mesh));
}

TEST_CASE("axis conversion preserves pairwise distances") {
    Mesh mesh;
    mesh.up_axis = UpAxis::ZUp;
    Rng rng(7);
    for (int i = 0; i < 32; ++i)
        mesh.vertices.push_back(Vec3f{static_cast<float>(rng.uniform(-5.0, 5.0)),
                                      static_cast<float>(rng.uniform(-5.0, 5.0)),
                                      static_cast<float>(rng.uniform(-5.0, 5.0))});
    mesh.triangles.push_back({0, 1, 2});

    const Mesh y = convert_axis(mesh, UpAxis::YUp);
    for (size_t i = 0; i < mesh.vertices.size(); ++i) {
        for (size_t j = i + 1; j < mesh.vertices.size(); ++j) {
            const double before = distance(mesh.vertex(i), mesh.vertex(j));
            const double after = distance(y.vertex(i), y.vertex(j));
            CHECK(after == doctest::Approx(before).epsilon(1e-12));
        }
    }
}

TEST_CASE("compute_bounds is a tight scan of the vertices") {
    SUBCASE("unit cube") {
        Mesh mesh;
        for (int x = 0; x <= 1; ++x)
            for (int y = 0; y <= 1; ++y)
                for (int z = 0; z <= 1; ++z)
                    mesh.vertices.push_back(Vec3f{static_cast<float>(x), static_cast<float>(y),
                                                  static_cast<float>(z)});
        const AABB box = compute_bounds(mesh);
        CHECK(box.min.x == 0.0);
        CHECK(box.min.y == 0.0);
        CHECK(box.min.z == 0.0);
        CHECK(box.max.x == 1.0);
        CHECK(box.max.y == 1.0);
        CHECK(box.max.z == 1.0);
    }
    SUBCASE("single vertex") {
        Mesh mesh;
        mesh.vertices.push_back(Vec3f{2.0f, 3.0f, 4.0f});
        const AABB box = compute_bounds(mesh);
        CHECK(box.min.x == 2.0);
        CHECK(box.max.x == 2.0);
        CHECK(box.min.y == 3.0);
        CHECK(box.max.y == 3.0);
        CHECK(box.min.z == 4.0);
        CHECK(box.max.z == 4.0);
    }
    SUBCASE("random vertices match an independent scan") {
        Mesh mesh;
        Rng rng(11);
        double lo[3] = {1e30, 1e30, 1e30};
        double hi[3] = {-1e30, -1e30, -1e30};
        for (int i = 0; i < 100; ++i) {
            const Vec3f v{static_cast<float>(rng.uniform(-100.0, 100.0)),
                          static_cast<float>(rng.uniform(-100.0, 100.0)),
                          static_cast<float>(rng.uniform(-100.0, 100.0))};
            mesh.vertices.push_back(v);
            const double c[3] = {v.x, v.y, v.z};
            for (int a = 0; a < 3; ++a) {
                lo[a] = std::min(lo[a], c[a]);
                hi[a] = std::max(hi[a], c[a]);
            }
        }
        const AABB box = compute_bounds(mesh);
        CHECK(box.min.x == lo[0]);
        CHECK(box.min.y == lo[1]);
        CHECK(box.min.z == lo[2]);
        CHECK(box.max.x == hi[0]);
        CHECK(box.max.y == hi[1]);
        CHECK(box.max.z == hi[2]);
    }
    SUBCASE("empty mesh is rejected") {
        const auto msg =
            fixtures::thrown_message<DomainError>([] { compute_bounds(Mesh{}); });
        CHECK(fixtures::contains(msg, "empty mesh"));
    }
}

TEST_CASE("sample_surface draws area-uniform points with triangle normals") {
    SUBCASE("points stay on their source triangle") {
        Mesh mesh;
        mesh.vertices = {Vec3f{0, 0, 0}, Vec3f{2, 0, 0}, Vec3f{0, 3, 0}};
        mesh.triangles.push_back({0, 1, 2});
        const PointCloud cloud = sample_surface(mesh, 1000, 5);
        REQUIRE(cloud.points.size() == 1000);
        REQUIRE(cloud.normals.size() == 1000);
        for (const auto& p : cloud.points) {
            CHECK(std::abs(p.z) <= 1e-6);  // triangle plane
            CHECK(p.x >= -1e-6);
            CHECK(p.y >= -1e-6);
            CHECK(p.x / 2.0 + p.y / 3.0 <= 1.0 + 1e-6);  // inside the hypotenuse
        }
        for (const auto& n : cloud.normals) {
            CHECK(std::abs(n.x) <= 1e-12);
            CHECK(std::abs(n.y) <= 1e-12);
            CHECK(std::abs(std::abs(n.z) - 1.0) <= 1e-12);
        }
    }
    SUBCASE("triangle choice is proportional to area") {
        // Areas 4.5 (z=0 plane) and 0.5 (z=1 plane): a 9:1 split.
        Mesh mesh;
        mesh.vertices = {Vec3f{0, 0, 0}, Vec3f{3, 0, 0}, Vec3f{0, 3, 0},
                         Vec3f{0, 0, 1}, Vec3f{1, 0, 1}, Vec3f{0, 1, 1}};
        mesh.triangles.push_back({0, 1, 2});
        mesh.triangles.push_back({3, 4, 5});
        const size_t n = 10000;
        const PointCloud cloud = sample_surface(mesh, n, 123);
        size_t on_big = 0;
        for (const auto& p : cloud.points)
            if (std::abs(p.z) < 0.5) ++on_big;
        // 3-sigma binomial bound around 9000: sigma = sqrt(n * 0.9 * 0.1) = 30
        CHECK(on_big >= 9000 - 90);
        CHECK(on_big <= 9000 + 90);
    }
    SUBCASE("fixed seed reproduces the cloud bit-exactly") {
        const Mesh mesh = fixtures::flat_room();
        const PointCloud a = sample_surface(mesh, 500, 99);
        const PointCloud b = sample_surface(mesh, 500, 99);
        REQUIRE(a.points.size() == b.points.size());
        for (size_t i = 0; i < a.points.size(); ++i) {
            CHECK(a.points[i].x == b.points[i].x);
            CHECK(a.points[i].y == b.points[i].y);
            CHECK(a.points[i].z == b.points[i].z);
        }
        const PointCloud c = sample_surface(mesh, 500, 100);
        bool any_differs = false;
        for (size_t i = 0; i < c.points.size(); ++i)
            if (c.points[i].x != a.points[i].x) any_differs = true;
        CHECK(any_differs);
    }
    SUBCASE("degenerate triangles are never sampled") {
        Mesh mesh;
        mesh.vertices = {Vec3f{0, 0, 0}, Vec3f{1, 0, 0}, Vec3f{0, 1, 0}, Vec3f{5, 5, 5}};
        mesh.triangles.push_back({0, 1, 2});
        mesh.triangles.push_back({3, 3, 3});  // zero area
        const PointCloud cloud = sample_surface(mesh, 200, 3);
        for (const auto& p : cloud.points) CHECK(std::abs(p.z) <= 1e-6);
    }
    SUBCASE("all-degenerate mesh is rejected") {
        Mesh mesh;
        mesh.vertices = {Vec3f{1, 1, 1}};
        mesh.triangles.push_back({0, 0, 0});
        const auto msg = fixtures::thrown_message<DomainError>(
            [&] { sample_surface(mesh, 10, 1); });
        CHECK(fixtures::contains(msg, "no positive-area triangle"));
    }
}

TEST_CASE("to_point_cloud exposes vertices and their normals") {
    Mesh mesh;
    mesh.vertices = {Vec3f{1, 2, 3}, Vec3f{4, 5, 6}};
    mesh.normals = {Vec3f{0, 1, 0}, Vec3f{1, 0, 0}};
    const PointCloud cloud = to_point_cloud(mesh);
    REQUIRE(cloud.points.size() == 2);
    REQUIRE(cloud.normals.size() == 2);
    CHECK(cloud.points[1].x == 4.0);
    CHECK(cloud.normals[1].x == 1.0);

    Mesh bare;
    bare.vertices = {Vec3f{1, 2, 3}};
    CHECK_FALSE(to_point_cloud(bare).has_normals());
}
