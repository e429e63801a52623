#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <memory>
#include <sstream>

#include "navbench/bvh.hpp"
#include "navbench/embodiment.hpp"
#include "navbench/episodes.hpp"
#include "navbench/errors.hpp"
#include "navbench/mesh.hpp"
#include "navbench/metrics.hpp"
#include "navbench/navgrid.hpp"
#include "navbench/png_io.hpp"
#include "navbench/policy.hpp"
#include "navbench/protocol.hpp"
#include "navbench/render.hpp"
#include "navbench/rng.hpp"
#include "navbench/sim.hpp"

namespace py = pybind11;
using namespace navbench;

namespace {

Vec3d vec_from_seq(const py::sequence& seq) {
    if (py::len(seq) != 3) throw py::value_error("expected a 3-element sequence");
    return Vec3d{seq[0].cast<double>(), seq[1].cast<double>(), seq[2].cast<double>()};
}

py::tuple vec_to_tuple(const Vec3d& v) { return py::make_tuple(v.x, v.y, v.z); }

py::array_t<uint8_t> frame_rgb(const Frame& frame) {
    py::array_t<uint8_t> out({frame.height, frame.width, 3});
    std::memcpy(out.mutable_data(), frame.rgb.data(), frame.rgb.size());
    return out;
}

py::array_t<float> frame_depth(const Frame& frame) {
    py::array_t<float> out({frame.height, frame.width});
    std::memcpy(out.mutable_data(), frame.depth.data(), frame.depth.size() * sizeof(float));
    return out;
}

Mesh mesh_from_arrays(const py::array_t<float, py::array::c_style | py::array::forcecast>& vertices,
                      const py::array_t<int32_t, py::array::c_style | py::array::forcecast>& triangles,
                      const std::string& up) {
    if (vertices.ndim() != 2 || vertices.shape(1) != 3)
        throw py::value_error("vertices must have shape (n, 3)");
    if (triangles.ndim() != 2 || triangles.shape(1) != 3)
        throw py::value_error("triangles must have shape (m, 3)");
    Mesh mesh;
    mesh.up_axis = up == "z-up" ? UpAxis::ZUp : UpAxis::YUp;
    const auto nv = vertices.shape(0);
    const float* v = vertices.data();
    mesh.vertices.reserve(static_cast<size_t>(nv));
    for (py::ssize_t i = 0; i < nv; ++i)
        mesh.vertices.push_back(Vec3f{v[i * 3], v[i * 3 + 1], v[i * 3 + 2]});
    const auto nt = triangles.shape(0);
    const int32_t* t = triangles.data();
    mesh.triangles.reserve(static_cast<size_t>(nt));
    for (py::ssize_t i = 0; i < nt; ++i) {
        const std::array<int32_t, 3> tri{t[i * 3], t[i * 3 + 1], t[i * 3 + 2]};
        for (int32_t index : tri)
            if (index < 0 || index >= static_cast<int32_t>(nv))
                throw py::value_error("triangle index out of range");
        mesh.triangles.push_back(tri);
    }
    return mesh;
}

PointCloud cloud_from_arrays(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& points,
    const py::object& normals) {
    if (points.ndim() != 2 || points.shape(1) != 3)
        throw py::value_error("points must have shape (n, 3)");
    PointCloud cloud;
    const auto n = points.shape(0);
    cloud.points.resize(static_cast<size_t>(n));
    const double* p = points.data();
    for (py::ssize_t i = 0; i < n; ++i)
        cloud.points[static_cast<size_t>(i)] = Vec3d{p[i * 3], p[i * 3 + 1], p[i * 3 + 2]};
    if (!normals.is_none()) {
        auto arr = normals.cast<py::array_t<double, py::array::c_style | py::array::forcecast>>();
        if (arr.ndim() != 2 || arr.shape(1) != 3 || arr.shape(0) != n)
            throw py::value_error("normals must match points in shape");
        cloud.normals.resize(static_cast<size_t>(n));
        const double* q = arr.data();
        for (py::ssize_t i = 0; i < n; ++i)
            cloud.normals[static_cast<size_t>(i)] = Vec3d{q[i * 3], q[i * 3 + 1], q[i * 3 + 2]};
    }
    return cloud;
}

// Trampoline so policies can be written in Python.
class PyPolicy : public PolicyInterface {
  public:
    void reset(const Frame& goal) override {
        PYBIND11_OVERRIDE_PURE(void, PolicyInterface, reset, goal);
    }
    Action act(const Frame& observation, bool collided) override {
        PYBIND11_OVERRIDE_PURE(Action, PolicyInterface, act, observation, collided);
    }
    bool needs_observation_frames() const override {
        PYBIND11_OVERRIDE(bool, PolicyInterface, needs_observation_frames);
    }
};

// Owns a Python policy object and forwards calls from non-Python threads
// (the GIL is taken per call; the server invokes these from its own thread).
class PyOwnedPolicy : public PolicyInterface {
  public:
    explicit PyOwnedPolicy(py::object policy) : policy_(std::move(policy)) {}
    ~PyOwnedPolicy() override {
        py::gil_scoped_acquire gil;
        policy_ = py::object();
    }
    void reset(const Frame& goal) override {
        py::gil_scoped_acquire gil;
        policy_.attr("reset")(goal);
    }
    Action act(const Frame& observation, bool collided) override {
        py::gil_scoped_acquire gil;
        return policy_.attr("act")(observation, collided).cast<Action>();
    }
    bool needs_observation_frames() const override {
        py::gil_scoped_acquire gil;
        return policy_.attr("needs_observation_frames")().cast<bool>();
    }

  private:
    py::object policy_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Image-goal navigation benchmark core";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PolicyError>(m, "PolicyFailure", PyExc_RuntimeError);
    py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);

    py::class_<Vec3d>(m, "Vec3", "3D vector (meters)")
        .def(py::init<>())
        .def(py::init([](double x, double y, double z) { return Vec3d{x, y, z}; }))
        .def(py::init([](const py::sequence& seq) { return vec_from_seq(seq); }))
        .def_readwrite("x", &Vec3d::x)
        .def_readwrite("y", &Vec3d::y)
        .def_readwrite("z", &Vec3d::z)
        .def("as_tuple", [](const Vec3d& v) { return vec_to_tuple(v); })
        .def("__repr__", [](const Vec3d& v) {
            std::ostringstream out;
            out << "Vec3(" << v.x << ", " << v.y << ", " << v.z << ")";
            return out.str();
        });
    py::implicitly_convertible<py::sequence, Vec3d>();

    py::class_<Embodiment>(m, "Embodiment", "Agent body and camera parameters")
        .def(py::init<>())
        .def_readwrite("height", &Embodiment::height)
        .def_readwrite("radius", &Embodiment::radius)
        .def_readwrite("camera_height", &Embodiment::camera_height)
        .def_readwrite("hfov_deg", &Embodiment::hfov_deg)
        .def_readwrite("image_width", &Embodiment::image_width)
        .def_readwrite("image_height", &Embodiment::image_height)
        .def_readwrite("forward_step", &Embodiment::forward_step)
        .def_readwrite("turn_angle_deg", &Embodiment::turn_angle_deg)
        .def_readwrite("success_radius", &Embodiment::success_radius)
        .def_readwrite("angle_success_deg", &Embodiment::angle_success_deg)
        .def("validate", &Embodiment::validate);

    py::class_<Mesh>(m, "Mesh", "Triangle mesh with optional colors/normals")
        .def_static("from_arrays", &mesh_from_arrays, py::arg("vertices"), py::arg("triangles"),
                    py::arg("up") = "y-up")
        .def_property_readonly("vertex_count",
                               [](const Mesh& mesh) { return mesh.vertices.size(); })
        .def_property_readonly("triangle_count",
                               [](const Mesh& mesh) { return mesh.triangles.size(); })
        .def_property_readonly("up",
                               [](const Mesh& mesh) {
                                   return mesh.up_axis == UpAxis::ZUp ? "z-up" : "y-up";
                               })
        .def_property_readonly("vertices",
                               [](const Mesh& mesh) {
                                   py::array_t<float> out(
                                       {static_cast<py::ssize_t>(mesh.vertices.size()),
                                        py::ssize_t(3)});
                                   float* dst = out.mutable_data();
                                   for (const Vec3f& v : mesh.vertices) {
                                       *dst++ = v.x;
                                       *dst++ = v.y;
                                       *dst++ = v.z;
                                   }
                                   return out;
                               })
        .def_property_readonly("triangles", [](const Mesh& mesh) {
            py::array_t<int32_t> out(
                {static_cast<py::ssize_t>(mesh.triangles.size()), py::ssize_t(3)});
            std::memcpy(out.mutable_data(), mesh.triangles.data(),
                        mesh.triangles.size() * sizeof(std::array<int32_t, 3>));
            return out;
        });

    m.def(
        "load_ply",
        [](const std::string& path, const std::string& up) {
            return load_ply(path, up == "y-up" ? UpAxis::YUp : UpAxis::ZUp);
        },
        py::arg("path"), py::arg("up") = "z-up");
    m.def(
        "save_ply",
        [](const Mesh& mesh, const std::string& path, const std::string& format) {
            save_ply(mesh, path,
                     format == "ascii" ? PlyFormat::Ascii : PlyFormat::BinaryLittleEndian);
        },
        py::arg("mesh"), py::arg("path"), py::arg("format") = "binary");
    m.def(
        "convert_axis",
        [](const Mesh& mesh, const std::string& up) {
            return convert_axis(mesh, up == "y-up" ? UpAxis::YUp : UpAxis::ZUp);
        },
        py::arg("mesh"), py::arg("to"));
    m.def("sample_surface", &sample_surface, py::arg("mesh"), py::arg("n"), py::arg("seed"));

    py::class_<PointCloud>(m, "PointCloud")
        .def_static("from_arrays", &cloud_from_arrays, py::arg("points"),
                    py::arg("normals") = py::none())
        .def_property_readonly("size", &PointCloud::size)
        .def_property_readonly("has_normals", &PointCloud::has_normals);

    py::class_<Island>(m, "Island")
        .def_readonly("id", &Island::id)
        .def_readonly("cell_count", &Island::cell_count)
        .def_readonly("area", &Island::area)
        .def_readonly("enclosing_radius", &Island::enclosing_radius);

    py::class_<Path>(m, "Path")
        .def_readonly("geodesic_length", &Path::geodesic_length)
        .def_readonly("grid_cost", &Path::grid_cost)
        .def_property_readonly("waypoints", [](const Path& path) {
            py::list out;
            for (const auto& w : path.waypoints) out.append(vec_to_tuple(w));
            return out;
        });

    py::class_<NavGrid>(m, "NavGrid", "Walkability grid over the scene floor")
        .def_property_readonly("nx", [](const NavGrid& g) { return g.nx; })
        .def_property_readonly("nz", [](const NavGrid& g) { return g.nz; })
        .def_property_readonly("cell_size", [](const NavGrid& g) { return g.cell_size; })
        .def("walkable_count", &NavGrid::walkable_count)
        .def("island_count", &NavGrid::island_count)
        .def("walkable_mask", [](const NavGrid& g) {
            py::array_t<bool> out({static_cast<py::ssize_t>(g.nz), static_cast<py::ssize_t>(g.nx)});
            bool* dst = out.mutable_data();
            for (uint32_t z = 0; z < g.nz; ++z)
                for (uint32_t x = 0; x < g.nx; ++x) *dst++ = g.walkable[g.index(x, z)] != 0;
            return out;
        });

    m.def(
        "build_navgrid",
        [](const Mesh& mesh, const Embodiment& embodiment, double cell_size) {
            return build_navgrid(mesh, embodiment, static_cast<float>(cell_size));
        },
        py::arg("mesh"), py::arg("embodiment") = Embodiment{},
        py::arg("cell_size") = double{kDefaultCellSize});
    m.def("save_navgrid", &save_navgrid, py::arg("grid"), py::arg("path"));
    m.def("load_navgrid", &load_navgrid, py::arg("path"));
    m.def("islands", &islands, py::arg("grid"));
    m.def(
        "shortest_path",
        [](const NavGrid& grid, const Vec3d& start, const Vec3d& goal) -> py::object {
            const auto path = shortest_path(grid, start, goal);
            if (!path) return py::none();
            return py::cast(*path);
        },
        py::arg("grid"), py::arg("start"), py::arg("goal"));

    py::class_<Episode>(m, "Episode")
        .def(py::init<>())
        .def_readwrite("episode_id", &Episode::episode_id)
        .def_readwrite("scene_id", &Episode::scene_id)
        .def_readwrite("start_position", &Episode::start_position)
        .def_readwrite("start_yaw", &Episode::start_yaw)
        .def_readwrite("goal_position", &Episode::goal_position)
        .def_readwrite("goal_yaw", &Episode::goal_yaw)
        .def_readwrite("geodesic_length", &Episode::geodesic_length);

    py::class_<EpisodeSet>(m, "EpisodeSet")
        .def(py::init<>())
        .def_readwrite("scene_id", &EpisodeSet::scene_id)
        .def_readwrite("split", &EpisodeSet::split)
        .def_readwrite("seed", &EpisodeSet::seed)
        .def_readwrite("embodiment", &EpisodeSet::embodiment)
        .def_readwrite("episodes", &EpisodeSet::episodes);

    py::class_<EpisodeStats>(m, "EpisodeStats")
        .def_readonly("min", &EpisodeStats::min)
        .def_readonly("max", &EpisodeStats::max)
        .def_readonly("mean", &EpisodeStats::mean)
        .def_readonly("count", &EpisodeStats::count);

    m.def("generate_episodes", &generate_episodes, py::arg("grid"), py::arg("embodiment"),
          py::arg("n"), py::arg("seed"), py::arg("scene_id") = "scene",
          py::arg("split") = "train");
    m.def("episode_stats", &episode_stats, py::arg("episodes"));
    m.def("save_episodes", &save_episodes, py::arg("episodes"), py::arg("path"));
    m.def("load_episodes", &load_episodes, py::arg("path"));

    py::class_<Intrinsics>(m, "Intrinsics")
        .def_readonly("width", &Intrinsics::width)
        .def_readonly("height", &Intrinsics::height)
        .def_readonly("fx", &Intrinsics::fx)
        .def_readonly("fy", &Intrinsics::fy)
        .def_readonly("cx", &Intrinsics::cx)
        .def_readonly("cy", &Intrinsics::cy)
        .def("vertical_fov_rad", &Intrinsics::vertical_fov_rad);
    m.def("camera_intrinsics", &camera_intrinsics, py::arg("embodiment"));

    py::class_<Frame>(m, "Frame", "Rendered RGB + depth frame")
        .def_property_readonly("width", [](const Frame& f) { return f.width; })
        .def_property_readonly("height", [](const Frame& f) { return f.height; })
        .def_property_readonly("rgb", &frame_rgb)
        .def_property_readonly("depth", &frame_depth);

    m.def(
        "render_frame",
        [](const Mesh& mesh, const Vec3d& position, double yaw, const Intrinsics& intrinsics) {
            return render_frame(mesh, Pose{position, yaw}, intrinsics);
        },
        py::arg("mesh"), py::arg("position"), py::arg("yaw"), py::arg("intrinsics"));
    m.def("psnr", &psnr, py::arg("a"), py::arg("b"));
    m.def(
        "save_frame_png",
        [](const Frame& frame, const std::string& path) { save_png(frame_to_image(frame), path); },
        py::arg("frame"), py::arg("path"));

    py::enum_<Action>(m, "Action")
        .value("MOVE_FORWARD", Action::MoveForward)
        .value("TURN_LEFT", Action::TurnLeft)
        .value("TURN_RIGHT", Action::TurnRight)
        .value("STOP", Action::Stop);

    py::class_<RewardParams>(m, "RewardParams")
        .def(py::init<>())
        .def_readwrite("success_weight", &RewardParams::success_weight)
        .def_readwrite("angle_weight", &RewardParams::angle_weight)
        .def_readwrite("goal_radius", &RewardParams::goal_radius)
        .def_readwrite("goal_angle_rad", &RewardParams::goal_angle_rad)
        .def_readwrite("slack", &RewardParams::slack)
        .def_readwrite("collision_penalty", &RewardParams::collision_penalty)
        .def("is_default", &RewardParams::is_default);

    py::class_<StepContext>(m, "StepContext")
        .def(py::init<>())
        .def_readwrite("d_prev", &StepContext::d_prev)
        .def_readwrite("d_cur", &StepContext::d_cur)
        .def_readwrite("theta_cur", &StepContext::theta_cur)
        .def_readwrite("theta_hat_prev", &StepContext::theta_hat_prev)
        .def_readwrite("theta_hat_cur", &StepContext::theta_hat_cur)
        .def_readwrite("action", &StepContext::action)
        .def_readwrite("collided", &StepContext::collided);

    py::class_<RewardBreakdown>(m, "RewardBreakdown")
        .def_readonly("success", &RewardBreakdown::success)
        .def_readonly("angle", &RewardBreakdown::angle)
        .def_readonly("angle_shaping", &RewardBreakdown::angle_shaping)
        .def_readonly("distance_shaping", &RewardBreakdown::distance_shaping)
        .def_readonly("slack", &RewardBreakdown::slack)
        .def_readonly("collision", &RewardBreakdown::collision)
        .def("total", &RewardBreakdown::total);

    m.def("compute_reward", &compute_reward, py::arg("context"),
          py::arg("params") = RewardParams{});

    py::enum_<TerminationReason>(m, "TerminationReason")
        .value("TARGET_REACHED", TerminationReason::TargetReached)
        .value("EARLY_STOP_GOAL_VISIBLE", TerminationReason::EarlyStopGoalVisible)
        .value("EARLY_STOP_GOAL_NOT_VISIBLE", TerminationReason::EarlyStopGoalNotVisible)
        .value("MAX_STEPS_REACHED", TerminationReason::MaxStepsReached);

    py::class_<SimState>(m, "SimState")
        .def_readonly("position", &SimState::position)
        .def_readonly("yaw", &SimState::yaw)
        .def_readonly("step_index", &SimState::step_index)
        .def_readonly("cumulative_reward", &SimState::cumulative_reward)
        .def_readonly("collided_last", &SimState::collided_last)
        .def_readonly("done", &SimState::done)
        .def_readonly("success", &SimState::success)
        .def_readonly("distance_to_goal", &SimState::distance_to_goal);

    py::class_<StepOutcome>(m, "StepOutcome")
        .def_readonly("reward", &StepOutcome::reward)
        .def_readonly("reward_terms", &StepOutcome::reward_terms)
        .def_readonly("done", &StepOutcome::done)
        .def_readonly("success", &StepOutcome::success)
        .def_readonly("collided", &StepOutcome::collided)
        .def_readonly("distance_to_goal", &StepOutcome::distance_to_goal)
        .def_readonly("steps", &StepOutcome::steps);

    py::class_<EpisodeResult>(m, "EpisodeResult")
        .def_readonly("episode_id", &EpisodeResult::episode_id)
        .def_readonly("success", &EpisodeResult::success)
        .def_readonly("steps", &EpisodeResult::steps)
        .def_readonly("dist_to_goal_m", &EpisodeResult::dist_to_goal_m)
        .def_readonly("termination", &EpisodeResult::termination)
        .def_readonly("reward", &EpisodeResult::reward)
        .def_readonly("aborted", &EpisodeResult::aborted)
        .def_readonly("error", &EpisodeResult::error);

    py::class_<SceneAssets>(m, "SceneAssets", "Scene mesh + navgrid + ray index, pinned in place")
        .def(py::init([](const Mesh& mesh, const NavGrid& grid) {
                 return std::make_unique<SceneAssets>(Mesh(mesh), NavGrid(grid));
             }),
             py::arg("mesh"), py::arg("grid"))
        .def_property_readonly("grid",
                               [](const SceneAssets& assets) -> const NavGrid& {
                                   return assets.grid;
                               },
                               py::return_value_policy::reference_internal);

    py::class_<Simulator>(m, "Simulator")
        .def(py::init<const SceneAssets&, const Embodiment&, const RewardParams&, int>(),
             py::arg("assets"), py::arg("embodiment") = Embodiment{},
             py::arg("reward") = RewardParams{}, py::arg("max_steps") = kMaxStepsSim,
             py::keep_alive<1, 2>())
        .def("reset", &Simulator::reset, py::return_value_policy::reference_internal,
             py::arg("episode"))
        .def("step", &Simulator::step, py::arg("action"))
        .def_property_readonly("state", &Simulator::state,
                               py::return_value_policy::reference_internal)
        .def("termination", &Simulator::termination)
        .def("observation", &Simulator::observation)
        .def("goal_frame", &Simulator::goal_frame)
        .def("distance_to_goal", &Simulator::distance_to_goal, py::arg("position"));

    py::class_<PolicyInterface, PyPolicy>(m, "Policy")
        .def(py::init<>())
        .def("reset", &PolicyInterface::reset, py::arg("goal"))
        .def("act", &PolicyInterface::act, py::arg("observation"), py::arg("collided"))
        .def("needs_observation_frames", &PolicyInterface::needs_observation_frames);

    py::class_<OraclePolicy, PolicyInterface>(m, "OraclePolicy")
        .def(py::init<const NavGrid&, const Episode&, const Embodiment&>(), py::arg("grid"),
             py::arg("episode"), py::arg("embodiment") = Embodiment{}, py::keep_alive<1, 2>());

    py::class_<RandomPolicy, PolicyInterface>(m, "RandomPolicy")
        .def(py::init<uint64_t>(), py::arg("seed"));

    m.def(
        "run_episode",
        [](const SceneAssets& assets, const Episode& episode, const Embodiment& embodiment,
           PolicyInterface& policy, const RewardParams& reward, int max_steps) {
            return run_episode(assets, episode, embodiment, policy, reward, max_steps);
        },
        py::arg("assets"), py::arg("episode"), py::arg("embodiment"), py::arg("policy"),
        py::arg("reward") = RewardParams{}, py::arg("max_steps") = kMaxStepsSim,
        // Released so served policies in this process can take the GIL from
        // their worker thread; Python policies re-acquire it per override.
        py::call_guard<py::gil_scoped_release>());

    m.def("write_results_csv", &write_results_csv, py::arg("results"), py::arg("path"),
          py::arg("reward") = RewardParams{});
    m.def("read_results_csv", &read_results_csv, py::arg("path"));

    py::class_<RemotePolicy, PolicyInterface>(m, "RemotePolicy")
        .def(py::init<const std::string&, const std::string&, double>(), py::arg("url"),
             py::arg("episode_id"), py::arg("timeout_seconds") = 30.0);

    py::class_<PolicyServer>(m, "PolicyServer")
        .def(py::init([](const py::function& factory) {
                 return std::make_unique<PolicyServer>(
                     [factory](const std::string& episode_id)
                         -> std::unique_ptr<PolicyInterface> {
                         py::gil_scoped_acquire gil;
                         return std::make_unique<PyOwnedPolicy>(factory(episode_id));
                     });
             }),
             py::arg("factory"))
        .def("start", &PolicyServer::start, py::arg("host") = "127.0.0.1", py::arg("port") = 0,
             py::call_guard<py::gil_scoped_release>())
        .def("stop", &PolicyServer::stop, py::call_guard<py::gil_scoped_release>())
        .def_property_readonly("port", &PolicyServer::port);

    m.def("probe_health", &probe_health, py::arg("url"), py::arg("timeout_seconds") = 5.0,
          py::call_guard<py::gil_scoped_release>());

    m.def("success_rate", &success_rate, py::arg("results"));
    m.def("pearson", &pearson, py::arg("xs"), py::arg("ys"));

    py::class_<ReconMetrics>(m, "ReconMetrics")
        .def_readonly("acc", &ReconMetrics::acc)
        .def_readonly("comp", &ReconMetrics::comp)
        .def_readonly("c_l1", &ReconMetrics::c_l1)
        .def_readonly("nc", &ReconMetrics::nc)
        .def_readonly("has_nc", &ReconMetrics::has_nc)
        .def_readonly("fscore", &ReconMetrics::fscore)
        .def_readonly("precision", &ReconMetrics::precision)
        .def_readonly("recall", &ReconMetrics::recall)
        .def_readonly("tau", &ReconMetrics::tau);
    m.def("recon_eval", &recon_eval, py::arg("pred"), py::arg("gt"), py::arg("tau") = 0.05);

    py::class_<DepthAlignment>(m, "DepthAlignment")
        .def_readonly("s", &DepthAlignment::s)
        .def_readonly("b", &DepthAlignment::b)
        .def_readonly("residual", &DepthAlignment::residual)
        .def_readonly("ls_residual", &DepthAlignment::ls_residual);
    m.def(
        "align_depth",
        [](const py::array_t<float, py::array::c_style | py::array::forcecast>& mono,
           const py::array_t<float, py::array::c_style | py::array::forcecast>& gt) {
            if (mono.ndim() != 2 || gt.ndim() != 2)
                throw py::value_error("depth maps must be 2-D arrays");
            auto to_map = [](const py::array_t<float, py::array::c_style |
                                                          py::array::forcecast>& arr) {
                DepthMap map;
                map.height = static_cast<int>(arr.shape(0));
                map.width = static_cast<int>(arr.shape(1));
                map.values.assign(arr.data(), arr.data() + arr.size());
                return map;
            };
            return align_depth(to_map(mono), to_map(gt));
        },
        py::arg("mono"), py::arg("gt"));
}
