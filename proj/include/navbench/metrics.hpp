#pragma once

#include <optional>
#include <string>
#include <vector>

#include "navbench/mesh.hpp"
#include "navbench/render.hpp"
#include "navbench/sim.hpp"

namespace navbench {

// Fraction of successful episodes; aborted episodes are excluded from both
// numerator and denominator.
double success_rate(const std::vector<EpisodeResult>& results);

// Pearson product-moment correlation; lengths must match and each series
// needs nonzero variance.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// Per-setting evaluation outcomes (one success flag per episode).
struct EvalRecord {
    std::string setting;
    std::vector<uint8_t> successes;
};

struct PairedSetting {
    std::string setting;
    double sim_sr = 0.0;
    double real_sr = 0.0;
};

struct SrccReport {
    double r = 0.0;
    std::vector<PairedSetting> pairs;  // sorted by setting label
    bool degenerate = false;           // exactly two settings: |r| is forced to 1
};

// Pairs per-setting success rates between simulation and reality and
// correlates them. Settings must match one-to-one.
SrccReport srcc_report(const std::vector<EvalRecord>& sim, const std::vector<EvalRecord>& real);

// CSV with columns setting,episode_id,success (one row per episode).
std::vector<EvalRecord> read_eval_csv(const std::string& path);
void write_srcc_report_json(const SrccReport& report, const std::string& path);

struct ReconMetrics {
    double acc = 0.0;     // mean predicted-to-truth nearest distance (m)
    double comp = 0.0;    // mean truth-to-predicted nearest distance (m)
    double c_l1 = 0.0;    // (acc + comp) / 2
    double nc = 0.0;      // mean |n . n_nearest| over both directions
    bool has_nc = false;  // normals present in both clouds
    double fscore = 0.0;  // 2PR/(P+R) at threshold tau
    double precision = 0.0;
    double recall = 0.0;
    double tau = 0.0;
};

ReconMetrics recon_eval(const PointCloud& pred, const PointCloud& gt, double tau = 0.05);

struct DepthAlignment {
    double s = 1.0;         // scale
    double b = 0.0;         // bias (meters)
    double residual = 0.0;  // mean absolute error at the optimum (m)
    double ls_residual = 0.0;  // at the least-squares initialization
};

// Fits gt ~ s*mono + b: closed-form least squares, then 200 fixed-step
// robust refinement iterations; reports the best iterate by mean |error|.
// mask (optional) limits the fit; pixels with gt <= 0 or non-finite mono are
// always excluded. Needs at least 100 valid pixels.
DepthAlignment align_depth(const DepthMap& mono, const DepthMap& gt,
                           const std::vector<uint8_t>* mask = nullptr);

}  // namespace navbench
