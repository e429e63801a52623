"""Image-goal navigation benchmark toolkit.

Thin Python facade over the C++ core: mesh ingestion, navigable-area grids,
episode generation, the discrete-action simulator, rendering, evaluation
metrics, and the HTTP policy-serving protocol.
"""

from navbench._core import (
    Action,
    DepthAlignment,
    DomainError,
    Embodiment,
    Episode,
    EpisodeResult,
    EpisodeSet,
    EpisodeStats,
    Frame,
    Intrinsics,
    Island,
    Mesh,
    NavGrid,
    OraclePolicy,
    ParseError,
    Path,
    PointCloud,
    Policy,
    PolicyFailure,
    PolicyServer,
    ProtocolError,
    RandomPolicy,
    ReconMetrics,
    RemotePolicy,
    RewardBreakdown,
    RewardParams,
    SceneAssets,
    SimState,
    Simulator,
    StepContext,
    StepOutcome,
    TerminationReason,
    Vec3,
    align_depth,
    build_navgrid,
    camera_intrinsics,
    compute_reward,
    convert_axis,
    episode_stats,
    generate_episodes,
    islands,
    load_episodes,
    load_navgrid,
    load_ply,
    pearson,
    probe_health,
    psnr,
    read_results_csv,
    recon_eval,
    render_frame,
    run_episode,
    sample_surface,
    save_episodes,
    save_frame_png,
    save_navgrid,
    save_ply,
    shortest_path,
    success_rate,
    write_results_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
