#include <atomic>
#include <chrono>
#include <cinttypes>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

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

namespace {

using namespace navbench;

std::atomic<bool> g_shutdown{false};

void handle_signal(int) { g_shutdown.store(true); }

UpAxis parse_up(const std::string& text) {
    if (text == "z-up") return UpAxis::ZUp;
    if (text == "y-up") return UpAxis::YUp;
    throw CLI::ValidationError("up axis must be z-up or y-up, got '" + text + "'");
}

// Scene meshes are consumed in the Y-up convention; the flag names the
// file's convention and conversion happens on load.
Mesh load_scene(const std::string& path, const std::string& up) {
    Mesh mesh = load_ply(path, parse_up(up));
    return convert_axis(mesh, UpAxis::YUp);
}

void add_up_option(CLI::App* cmd, std::string& up) {
    cmd->add_option("--up", up, "Vertical axis convention of the input mesh")
        ->check(CLI::IsMember({"z-up", "y-up"}))
        ->capture_default_str();
}

void add_embodiment_options(CLI::App* cmd, Embodiment& emb) {
    auto* group = cmd->add_option_group("embodiment", "Agent embodiment overrides");
    group->add_option("--agent-height", emb.height, "Agent height (m)")->capture_default_str();
    group->add_option("--agent-radius", emb.radius, "Agent radius (m)")->capture_default_str();
    group->add_option("--camera-height", emb.camera_height, "Camera height above floor (m)")
        ->capture_default_str();
    group->add_option("--hfov-deg", emb.hfov_deg, "Horizontal field of view (deg)")
        ->capture_default_str();
    group->add_option("--img-width", emb.image_width, "Frame width (px)")->capture_default_str();
    group->add_option("--img-height", emb.image_height, "Frame height (px)")
        ->capture_default_str();
    group->add_option("--forward-step", emb.forward_step, "MOVE_FORWARD distance (m)")
        ->capture_default_str();
    group->add_option("--turn-deg", emb.turn_angle_deg, "TURN_LEFT/RIGHT angle (deg)")
        ->capture_default_str();
    group->add_option("--success-radius", emb.success_radius, "Goal success radius (m)")
        ->capture_default_str();
    group->add_option("--angle-success-deg", emb.angle_success_deg, "Goal angle threshold (deg)")
        ->capture_default_str();
}

void add_reward_options(CLI::App* cmd, RewardParams& reward) {
    auto* group = cmd->add_option_group("reward", "Reward overrides (non-defaults watermark outputs)");
    group->add_option("--reward-success-weight", reward.success_weight)->capture_default_str();
    group->add_option("--reward-angle-weight", reward.angle_weight)->capture_default_str();
    group->add_option("--reward-goal-radius", reward.goal_radius)->capture_default_str();
    group
        ->add_option_function<double>(
            "--reward-goal-angle-deg",
            [&reward](double deg) { reward.goal_angle_rad = deg_to_rad(deg); },
            "Goal angle for the STOP bonus (deg)")
        ->default_str("25");
    group->add_option("--reward-slack", reward.slack)->capture_default_str();
    group->add_option("--reward-collision-penalty", reward.collision_penalty)
        ->capture_default_str();
}

struct PoseArg {
    Vec3d position;
    double yaw = 0.0;
};

PoseArg parse_pose(const std::string& text) {
    PoseArg pose;
    char trailing = 0;
    const int n = std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf%c", &pose.position.x,
                              &pose.position.y, &pose.position.z, &pose.yaw, &trailing);
    if (n != 4) throw CLI::ValidationError("--pose expects x,y,z,yaw, got '" + text + "'");
    return pose;
}

std::pair<std::string, int> parse_addr(const std::string& text) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
        throw CLI::ValidationError("--addr expects host:port, got '" + text + "'");
    const std::string host = text.substr(0, colon);
    int port = 0;
    try {
        size_t used = 0;
        port = std::stoi(text.substr(colon + 1), &used);
        if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw CLI::ValidationError("--addr port must be an integer, got '" + text + "'");
    }
    if (port < 0 || port > 65535)
        throw CLI::ValidationError("--addr port out of range: " + std::to_string(port));
    return {host, port};
}

// Cloud for reconstruction metrics: surfaces are sampled area-uniformly,
// pure point sets are taken as-is.
PointCloud cloud_from_ply(const std::string& path, size_t samples, uint64_t seed) {
    const Mesh mesh = load_ply(path);
    if (mesh.triangles.empty()) return to_point_cloud(mesh);
    return sample_surface(mesh, samples, seed);
}

PolicyFactory make_policy_factory(const std::string& spec, const SceneAssets& assets,
                                  const Embodiment& embodiment, uint64_t seed,
                                  double timeout_seconds) {
    if (spec == "oracle") {
        return [&assets, embodiment](const Episode& episode) -> std::unique_ptr<PolicyInterface> {
            return std::make_unique<OraclePolicy>(assets.grid, episode, embodiment);
        };
    }
    if (spec == "random") {
        return [seed](const Episode& episode) -> std::unique_ptr<PolicyInterface> {
            return std::make_unique<RandomPolicy>(
                derive_episode_seed(seed, static_cast<uint64_t>(episode.episode_id)));
        };
    }
    const std::string remote_prefix = "remote:";
    if (spec.rfind(remote_prefix, 0) == 0) {
        const std::string url = spec.substr(remote_prefix.size());
        if (url.empty()) throw DomainError("--policy remote: needs a URL");
        if (!probe_health(url))
            throw DomainError("policy server at " + url + " is not healthy");
        return [url, timeout_seconds](const Episode& episode) -> std::unique_ptr<PolicyInterface> {
            return std::make_unique<RemotePolicy>(url, std::to_string(episode.episode_id),
                                                  timeout_seconds);
        };
    }
    throw DomainError("--policy must be oracle, random, or remote:URL, got '" + spec + "'");
}

void print_results_summary(const std::vector<EpisodeResult>& results) {
    size_t aborted = 0;
    for (const auto& r : results)
        if (r.aborted) ++aborted;
    std::printf("episodes %zu  aborted %zu", results.size(), aborted);
    if (aborted < results.size()) std::printf("  success_rate %.6g", success_rate(results));
    std::printf("\n");
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Image-goal navigation benchmark toolkit"};
    app.require_subcommand(1);

    const char* env_config = std::getenv("NAVBENCH_CONFIG");
    app.set_config("--config", env_config ? env_config : "",
                   "TOML config file (NAVBENCH_CONFIG sets the default path)");

    // mesh convert
    auto* mesh_cmd = app.add_subcommand("mesh", "Mesh file operations");
    mesh_cmd->require_subcommand(1);
    auto* mesh_convert = mesh_cmd->add_subcommand("convert", "Change vertical axis convention");
    auto convert_opts = std::make_shared<std::tuple<std::string, std::string, std::string,
                                                    std::string, std::string>>();
    {
        auto& [in, out, from, to, format] = *convert_opts;
        from = "z-up";
        to = "y-up";
        format = "binary";
        mesh_convert->add_option("--in", in, "Input PLY")->required();
        mesh_convert->add_option("--out", out, "Output PLY")->required();
        mesh_convert->add_option("--from", from, "Input convention")
            ->check(CLI::IsMember({"z-up", "y-up"}))
            ->capture_default_str();
        mesh_convert->add_option("--to", to, "Output convention")
            ->check(CLI::IsMember({"z-up", "y-up"}))
            ->capture_default_str();
        mesh_convert->add_option("--format", format, "Output encoding")
            ->check(CLI::IsMember({"ascii", "binary"}))
            ->capture_default_str();
    }
    mesh_convert->callback([convert_opts]() {
        const auto& [in, out, from, to, format] = *convert_opts;
        const Mesh mesh = load_ply(in, parse_up(from));
        save_ply(convert_axis(mesh, parse_up(to)), out,
                 format == "ascii" ? PlyFormat::Ascii : PlyFormat::BinaryLittleEndian);
    });

    // navmesh build
    auto* navmesh_cmd = app.add_subcommand("navmesh", "Navigable-area grid operations");
    navmesh_cmd->require_subcommand(1);
    auto* navmesh_build = navmesh_cmd->add_subcommand("build", "Bake a navgrid from a scene mesh");
    struct NavmeshBuildOpts {
        std::string scene, out, up = "z-up";
        double cell = kDefaultCellSize;
        Embodiment embodiment;
    };
    auto nb = std::make_shared<NavmeshBuildOpts>();
    navmesh_build->add_option("--scene", nb->scene, "Scene mesh (PLY)")->required();
    navmesh_build->add_option("--out", nb->out, "Output navgrid file")->required();
    navmesh_build->add_option("--cell", nb->cell, "Grid cell size (m)")
        ->check(CLI::Range(0.01, 0.5))
        ->capture_default_str();
    add_up_option(navmesh_build, nb->up);
    add_embodiment_options(navmesh_build, nb->embodiment);
    navmesh_build->callback([nb]() {
        nb->embodiment.validate();
        const Mesh mesh = load_scene(nb->scene, nb->up);
        const NavGrid grid = build_navgrid(mesh, nb->embodiment, static_cast<float>(nb->cell));
        save_navgrid(grid, nb->out);
        const auto isles = islands(grid);
        std::printf("cells %u x %u  walkable %zu  islands %zu", grid.nx, grid.nz,
                    grid.walkable_count(), isles.size());
        if (!isles.empty())
            std::printf("  largest_area_m2 %.6g  enclosing_radius_m %.6g", isles.front().area,
                        isles.front().enclosing_radius);
        std::printf("\n");
    });

    // episodes generate | stats
    auto* episodes_cmd = app.add_subcommand("episodes", "Episode set operations");
    episodes_cmd->require_subcommand(1);
    auto* ep_generate = episodes_cmd->add_subcommand("generate", "Sample start/goal episodes");
    struct EpGenerateOpts {
        std::string navgrid, out, scene_id = "scene", split = "train";
        size_t n = 0;
        uint64_t seed = 0;
        Embodiment embodiment;
    };
    auto eg = std::make_shared<EpGenerateOpts>();
    ep_generate->add_option("--navgrid", eg->navgrid, "Navgrid file")->required();
    ep_generate->add_option("--n", eg->n, "Episode count")
        ->required()
        ->check(CLI::PositiveNumber);
    ep_generate->add_option("--seed", eg->seed, "RNG seed")->capture_default_str();
    ep_generate->add_option("--out", eg->out, "Output episode JSON")->required();
    ep_generate->add_option("--scene-id", eg->scene_id, "Scene identifier")
        ->capture_default_str();
    ep_generate->add_option("--split", eg->split, "Dataset split")
        ->check(CLI::IsMember({"train", "val"}))
        ->capture_default_str();
    add_embodiment_options(ep_generate, eg->embodiment);
    ep_generate->callback([eg]() {
        eg->embodiment.validate();
        const NavGrid grid = load_navgrid(eg->navgrid);
        const EpisodeSet set =
            generate_episodes(grid, eg->embodiment, eg->n, eg->seed, eg->scene_id, eg->split);
        save_episodes(set, eg->out);
        const EpisodeStats stats = episode_stats(set);
        std::printf("episodes %zu  geodesic_m min %.6g max %.6g mean %.6g\n", stats.count,
                    stats.min, stats.max, stats.mean);
    });

    auto* ep_stats = episodes_cmd->add_subcommand("stats", "Geodesic length statistics");
    auto stats_in = std::make_shared<std::string>();
    ep_stats->add_option("--in", *stats_in, "Episode JSON")->required();
    ep_stats->callback([stats_in]() {
        const EpisodeSet set = load_episodes(*stats_in);
        const EpisodeStats stats = episode_stats(set);
        std::printf("count min_m max_m mean_m\n");
        std::printf("%zu %.9g %.9g %.9g\n", stats.count, stats.min, stats.max, stats.mean);
    });

    // render
    auto* render_cmd = app.add_subcommand("render", "Render one frame at a camera pose");
    struct RenderOpts {
        std::string scene, pose, out, depth, up = "z-up";
        Embodiment embodiment;
    };
    auto ro = std::make_shared<RenderOpts>();
    render_cmd->add_option("--scene", ro->scene, "Scene mesh (PLY)")->required();
    render_cmd->add_option("--pose", ro->pose, "Camera pose as x,y,z,yaw (m, rad)")->required();
    render_cmd->add_option("--out", ro->out, "Output PNG")->required();
    render_cmd->add_option("--depth", ro->depth, "Optional raw float32 depth output");
    add_up_option(render_cmd, ro->up);
    add_embodiment_options(render_cmd, ro->embodiment);
    render_cmd->callback([ro]() {
        ro->embodiment.validate();
        const Mesh mesh = load_scene(ro->scene, ro->up);
        const PoseArg pose = parse_pose(ro->pose);
        const Intrinsics intrinsics = camera_intrinsics(ro->embodiment);
        const Frame frame = render_frame(mesh, Pose{pose.position, pose.yaw}, intrinsics);
        save_png(frame_to_image(frame), ro->out);
        if (!ro->depth.empty()) save_depth_raw(depth_of(frame), ro->depth);
    });

    // sim run
    auto* sim_cmd = app.add_subcommand("sim", "Simulation runs");
    sim_cmd->require_subcommand(1);
    auto* sim_run = sim_cmd->add_subcommand("run", "Evaluate a policy over an episode set");
    struct SimRunOpts {
        std::string scene, navgrid, episodes, policy, out, trajectories, up = "z-up";
        int max_steps = kMaxStepsSim;
        uint64_t seed = 0;
        int jobs = 1;
        bool real_protocol = false;
        double timeout = 30.0;
        Embodiment embodiment;
        RewardParams reward;
    };
    auto sr = std::make_shared<SimRunOpts>();
    sim_run->add_option("--scene", sr->scene, "Scene mesh (PLY)")->required();
    sim_run->add_option("--navgrid", sr->navgrid, "Navgrid file")->required();
    sim_run->add_option("--episodes", sr->episodes, "Episode JSON")->required();
    sim_run->add_option("--policy", sr->policy, "oracle | random | remote:URL")->required();
    sim_run->add_option("--out", sr->out, "Results CSV")->required();
    auto* max_steps_opt = sim_run->add_option("--max-steps", sr->max_steps, "Step cap per episode")
                              ->check(CLI::PositiveNumber)
                              ->capture_default_str();
    sim_run->add_option("--seed", sr->seed, "Seed for stochastic policies")
        ->capture_default_str();
    sim_run->add_option("--jobs", sr->jobs, "Parallel episode workers")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim_run->add_option("--trajectories", sr->trajectories,
                        "Per-step JSON-lines trajectory log");
    sim_run->add_flag("--real-protocol", sr->real_protocol,
                      "Use the physical-deployment step cap (100) unless --max-steps is given");
    sim_run->add_option("--timeout", sr->timeout, "Remote policy request timeout (s)")
        ->capture_default_str();
    add_up_option(sim_run, sr->up);
    add_embodiment_options(sim_run, sr->embodiment);
    add_reward_options(sim_run, sr->reward);
    sim_run->callback([sr, max_steps_opt]() {
        sr->embodiment.validate();
        const int max_steps = (sr->real_protocol && max_steps_opt->count() == 0) ? kMaxStepsReal
                                                                                 : sr->max_steps;
        Mesh mesh = load_scene(sr->scene, sr->up);
        NavGrid grid = load_navgrid(sr->navgrid);
        const SceneAssets assets(std::move(mesh), std::move(grid));
        const EpisodeSet set = load_episodes(sr->episodes);
        const PolicyFactory factory =
            make_policy_factory(sr->policy, assets, sr->embodiment, sr->seed, sr->timeout);
        std::ofstream trajectory_log;
        if (!sr->trajectories.empty()) {
            trajectory_log.open(sr->trajectories, std::ios::binary);
            if (!trajectory_log)
                throw DomainError("cannot open " + sr->trajectories + " for writing");
        }
        const std::vector<EpisodeResult> results =
            run_episodes(assets, set.episodes, sr->embodiment, factory, sr->reward, max_steps,
                         sr->jobs, trajectory_log.is_open() ? &trajectory_log : nullptr);
        write_results_csv(results, sr->out, sr->reward);
        print_results_summary(results);
    });

    // serve-policy
    auto* serve = app.add_subcommand("serve-policy", "Serve a policy over HTTP");
    struct ServeOpts {
        std::string policy = "oracle", scene, navgrid, episodes, addr = "127.0.0.1:8008";
        std::string up = "z-up";
        uint64_t seed = 0;
        Embodiment embodiment;
    };
    auto so = std::make_shared<ServeOpts>();
    serve->add_option("--policy", so->policy, "oracle | random")
        ->check(CLI::IsMember({"oracle", "random"}))
        ->capture_default_str();
    serve->add_option("--scene", so->scene, "Scene mesh (PLY, oracle only)");
    serve->add_option("--navgrid", so->navgrid, "Navgrid file (oracle only)");
    serve->add_option("--episodes", so->episodes, "Episode JSON (oracle only)");
    serve->add_option("--addr", so->addr, "Bind address host:port")->capture_default_str();
    serve->add_option("--seed", so->seed, "Seed (random policy)")->capture_default_str();
    add_up_option(serve, so->up);
    add_embodiment_options(serve, so->embodiment);
    serve->callback([so]() {
        so->embodiment.validate();
        const auto [host, port] = parse_addr(so->addr);

        SessionPolicyFactory factory;
        std::shared_ptr<NavGrid> grid;
        std::shared_ptr<EpisodeSet> set;
        if (so->policy == "oracle") {
            if (so->navgrid.empty() || so->episodes.empty())
                throw DomainError("serve-policy --policy oracle needs --navgrid and --episodes");
            grid = std::make_shared<NavGrid>(load_navgrid(so->navgrid));
            set = std::make_shared<EpisodeSet>(load_episodes(so->episodes));
            const Embodiment embodiment = so->embodiment;
            factory = [grid, set, embodiment](const std::string& episode_id)
                -> std::unique_ptr<PolicyInterface> {
                for (const auto& episode : set->episodes)
                    if (std::to_string(episode.episode_id) == episode_id)
                        return std::make_unique<OraclePolicy>(*grid, episode, embodiment);
                throw DomainError("unknown episode_id '" + episode_id + "'");
            };
        } else {
            const uint64_t seed = so->seed;
            factory = [seed](const std::string& episode_id)
                -> std::unique_ptr<PolicyInterface> {
                uint64_t id = 0;
                try {
                    id = std::stoull(episode_id);
                } catch (const std::exception&) {
                    id = std::hash<std::string>{}(episode_id);
                }
                return std::make_unique<RandomPolicy>(derive_episode_seed(seed, id));
            };
        }

        PolicyServer server(std::move(factory));
        server.start(host, port);
        std::printf("serving %s policy on %s:%d\n", so->policy.c_str(), host.c_str(),
                    server.port());
        std::fflush(stdout);

        std::signal(SIGINT, handle_signal);
        std::signal(SIGTERM, handle_signal);
        while (!g_shutdown.load() && server.running())
            std::this_thread::sleep_for(std::chrono::milliseconds(50));
        server.stop();
        std::printf("server stopped\n");
    });

    // eval srcc | depth-align
    auto* eval_cmd = app.add_subcommand("eval", "Evaluation reports");
    eval_cmd->require_subcommand(1);
    auto* eval_srcc = eval_cmd->add_subcommand(
        "srcc", "Correlate per-setting success rates between simulation and reality");
    struct SrccOpts {
        std::string sim, real, out;
    };
    auto sc = std::make_shared<SrccOpts>();
    eval_srcc->add_option("--sim", sc->sim, "Simulation eval CSV")->required();
    eval_srcc->add_option("--real", sc->real, "Real-world eval CSV")->required();
    eval_srcc->add_option("--out", sc->out, "Report JSON")->required();
    eval_srcc->callback([sc]() {
        const SrccReport report = srcc_report(read_eval_csv(sc->sim), read_eval_csv(sc->real));
        write_srcc_report_json(report, sc->out);
        std::printf("setting sim_sr real_sr\n");
        for (const auto& pair : report.pairs)
            std::printf("%s %.6g %.6g\n", pair.setting.c_str(), pair.sim_sr, pair.real_sr);
        std::printf("r %.9g%s\n", report.r, report.degenerate ? " (degenerate)" : "");
    });

    auto* eval_depth = eval_cmd->add_subcommand(
        "depth-align", "Fit scale/bias mapping a monocular depth map onto metric depth");
    struct DepthAlignOpts {
        std::string mono, gt, out;
    };
    auto da = std::make_shared<DepthAlignOpts>();
    eval_depth->add_option("--mono", da->mono, "Monocular depth (raw f32 + JSON sidecar)")
        ->required();
    eval_depth->add_option("--gt", da->gt, "Metric depth (raw f32 + JSON sidecar)")->required();
    eval_depth->add_option("--out", da->out, "Optional report JSON");
    eval_depth->callback([da]() {
        const DepthAlignment fit = align_depth(load_depth_raw(da->mono), load_depth_raw(da->gt));
        std::printf("s %.9g b %.9g residual_m %.9g ls_residual_m %.9g\n", fit.s, fit.b,
                    fit.residual, fit.ls_residual);
        if (!da->out.empty()) {
            std::ofstream out(da->out, std::ios::binary);
            if (!out) throw DomainError("cannot open " + da->out + " for writing");
            char buf[256];
            std::snprintf(buf, sizeof buf,
                          "{\"s\": %.17g, \"b\": %.17g, \"residual\": %.17g, "
                          "\"ls_residual\": %.17g}\n",
                          fit.s, fit.b, fit.residual, fit.ls_residual);
            out << buf;
        }
    });

    // recon eval
    auto* recon_cmd = app.add_subcommand("recon", "Reconstruction quality");
    recon_cmd->require_subcommand(1);
    auto* recon_eval_cmd =
        recon_cmd->add_subcommand("eval", "Compare a reconstructed mesh against ground truth");
    struct ReconOpts {
        std::string pred, gt;
        double tau = 0.05;
        size_t samples = 200000;
        uint64_t seed = 0;
    };
    auto rc = std::make_shared<ReconOpts>();
    recon_eval_cmd->add_option("--pred", rc->pred, "Predicted mesh/cloud (PLY)")->required();
    recon_eval_cmd->add_option("--gt", rc->gt, "Ground-truth mesh/cloud (PLY)")->required();
    recon_eval_cmd->add_option("--tau", rc->tau, "F-score distance threshold (m)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    recon_eval_cmd->add_option("--samples", rc->samples, "Surface sample count per mesh")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    recon_eval_cmd->add_option("--seed", rc->seed, "Sampling seed")->capture_default_str();
    recon_eval_cmd->callback([rc]() {
        const PointCloud pred = cloud_from_ply(rc->pred, rc->samples, rc->seed);
        const PointCloud gt = cloud_from_ply(rc->gt, rc->samples, rc->seed + 1);
        const ReconMetrics m = recon_eval(pred, gt, rc->tau);
        std::printf("acc_m %.9g\ncomp_m %.9g\nc_l1_m %.9g\n", m.acc, m.comp, m.c_l1);
        if (m.has_nc) std::printf("nc %.9g\n", m.nc);
        std::printf("precision %.9g\nrecall %.9g\nfscore %.9g\ntau_m %.9g\n", m.precision,
                    m.recall, m.fscore, m.tau);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
