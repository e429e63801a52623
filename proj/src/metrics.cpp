#include "navbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "navbench/errors.hpp"

namespace navbench {

double success_rate(const std::vector<EpisodeResult>& results) {
    size_t total = 0, successes = 0;
    for (const auto& r : results) {
        if (r.aborted) continue;
        ++total;
        if (r.success) ++successes;
    }
    if (total == 0) throw DomainError("success_rate: no completed episodes");
    return static_cast<double>(successes) / static_cast<double>(total);
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw DomainError("pearson: length mismatch");
    if (xs.size() < 2) throw DomainError("pearson: need at least 2 samples");
    const double n = static_cast<double>(xs.size());
    const double mean_x = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double mean_y = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DomainError("pearson: undefined for zero-variance input");
    return sxy / std::sqrt(sxx * syy);
}

SrccReport srcc_report(const std::vector<EvalRecord>& sim, const std::vector<EvalRecord>& real) {
    auto sr_of = [](const EvalRecord& rec) {
        if (rec.successes.empty())
            throw DomainError("srcc: setting '" + rec.setting + "' has no episodes");
        size_t s = 0;
        for (uint8_t v : rec.successes) s += v ? 1 : 0;
        return static_cast<double>(s) / static_cast<double>(rec.successes.size());
    };

    std::vector<std::pair<std::string, double>> sim_srs, real_srs;
    for (const auto& rec : sim) sim_srs.emplace_back(rec.setting, sr_of(rec));
    for (const auto& rec : real) real_srs.emplace_back(rec.setting, sr_of(rec));
    auto by_label = [](const auto& a, const auto& b) { return a.first < b.first; };
    std::sort(sim_srs.begin(), sim_srs.end(), by_label);
    std::sort(real_srs.begin(), real_srs.end(), by_label);

    std::vector<std::string> unmatched;
    {
        size_t i = 0, j = 0;
        while (i < sim_srs.size() || j < real_srs.size()) {
            if (i < sim_srs.size() &&
                (j == real_srs.size() || sim_srs[i].first < real_srs[j].first)) {
                unmatched.push_back(sim_srs[i].first + " (sim only)");
                ++i;
            } else if (j < real_srs.size() &&
                       (i == sim_srs.size() || real_srs[j].first < sim_srs[i].first)) {
                unmatched.push_back(real_srs[j].first + " (real only)");
                ++j;
            } else {
                ++i;
                ++j;
            }
        }
    }
    if (!unmatched.empty()) {
        std::string msg = "srcc: unmatched settings:";
        for (const auto& u : unmatched) msg += " " + u;
        throw DomainError(msg);
    }

    SrccReport report;
    std::vector<double> xs, ys;
    for (size_t i = 0; i < sim_srs.size(); ++i) {
        report.pairs.push_back(
            PairedSetting{sim_srs[i].first, sim_srs[i].second, real_srs[i].second});
        xs.push_back(sim_srs[i].second);
        ys.push_back(real_srs[i].second);
    }
    report.r = pearson(xs, ys);
    report.degenerate = xs.size() == 2;
    if (report.degenerate)
        std::cerr << "warning: srcc over exactly two settings is degenerate (|r| = 1)\n";
    return report;
}

std::vector<EvalRecord> read_eval_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("eval csv: cannot open " + path);

    std::vector<EvalRecord> records;
    auto record_of = [&](const std::string& setting) -> EvalRecord& {
        for (auto& r : records)
            if (r.setting == setting) return r;
        records.push_back(EvalRecord{setting, {}});
        return records.back();
    };

    std::string line;
    bool header_seen = false;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "setting,episode_id,success")
                throw ParseError("eval csv: expected header 'setting,episode_id,success' at line " +
                                 std::to_string(line_no) + " in " + path);
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::string setting, episode_id, success;
        if (!std::getline(ss, setting, ',') || !std::getline(ss, episode_id, ',') ||
            !std::getline(ss, success))
            throw ParseError("eval csv: expected 3 fields at line " + std::to_string(line_no) +
                             " in " + path);
        if (success != "0" && success != "1")
            throw ParseError("eval csv: success must be 0 or 1 at line " +
                             std::to_string(line_no) + " in " + path);
        record_of(setting).successes.push_back(success == "1" ? 1 : 0);
    }
    if (!header_seen) throw ParseError("eval csv: missing header in " + path);
    return records;
}

void write_srcc_report_json(const SrccReport& report, const std::string& path) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : report.pairs)
        pairs.push_back(nlohmann::json{
            {"setting", p.setting}, {"sim_sr", p.sim_sr}, {"real_sr", p.real_sr}});
    const nlohmann::json root{
        {"r", report.r}, {"degenerate", report.degenerate}, {"pairs", pairs}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open " + path + " for writing");
    out << root.dump(2) << "\n";
}

namespace {

// Static 3-d tree over points; nodes are median splits on the widest axis.
class KdTree {
  public:
    explicit KdTree(const std::vector<Vec3d>& points) : points_(points) {
        indices_.resize(points.size());
        std::iota(indices_.begin(), indices_.end(), 0u);
        nodes_.reserve(points.size() * 2);
        root_ = build(0, points.size());
    }

    // Index of the nearest point and its distance.
    std::pair<size_t, double> nearest(const Vec3d& query) const {
        size_t best_index = 0;
        double best_sq = std::numeric_limits<double>::infinity();
        search(root_, query, best_index, best_sq);
        return {best_index, std::sqrt(best_sq)};
    }

  private:
    struct Node {
        int32_t left = -1;
        int32_t right = -1;
        uint32_t begin = 0;
        uint32_t end = 0;
        int axis = 0;
        double split = 0.0;
    };

    static double axis_of(const Vec3d& v, int axis) {
        return axis == 0 ? v.x : axis == 1 ? v.y : v.z;
    }

    int32_t build(size_t begin, size_t end) {
        const auto node_index = static_cast<int32_t>(nodes_.size());
        nodes_.emplace_back();
        Node node;
        node.begin = static_cast<uint32_t>(begin);
        node.end = static_cast<uint32_t>(end);
        if (end - begin > kLeaf) {
            Vec3d lo = points_[indices_[begin]], hi = lo;
            for (size_t i = begin; i < end; ++i) {
                const Vec3d& p = points_[indices_[i]];
                lo.x = std::min(lo.x, p.x); hi.x = std::max(hi.x, p.x);
                lo.y = std::min(lo.y, p.y); hi.y = std::max(hi.y, p.y);
                lo.z = std::min(lo.z, p.z); hi.z = std::max(hi.z, p.z);
            }
            const Vec3d extent = hi - lo;
            node.axis = extent.x >= extent.y && extent.x >= extent.z ? 0
                        : extent.y >= extent.z                       ? 1
                                                                     : 2;
            const size_t mid = (begin + end) / 2;
            std::nth_element(indices_.begin() + begin, indices_.begin() + mid,
                             indices_.begin() + end, [&](uint32_t a, uint32_t b) {
                                 const double va = axis_of(points_[a], node.axis);
                                 const double vb = axis_of(points_[b], node.axis);
                                 if (va != vb) return va < vb;
                                 return a < b;
                             });
            node.split = axis_of(points_[indices_[mid]], node.axis);
            node.left = build(begin, mid);
            node.right = build(mid, end);
        }
        nodes_[node_index] = node;
        return node_index;
    }

    void search(int32_t node_index, const Vec3d& query, size_t& best_index,
                double& best_sq) const {
        const Node& node = nodes_[node_index];
        if (node.left < 0) {
            for (uint32_t i = node.begin; i < node.end; ++i) {
                const Vec3d d = points_[indices_[i]] - query;
                const double sq = dot(d, d);
                if (sq < best_sq || (sq == best_sq && indices_[i] < best_index)) {
                    best_sq = sq;
                    best_index = indices_[i];
                }
            }
            return;
        }
        const double delta = axis_of(query, node.axis) - node.split;
        const int32_t near = delta <= 0.0 ? node.left : node.right;
        const int32_t far = delta <= 0.0 ? node.right : node.left;
        search(near, query, best_index, best_sq);
        if (delta * delta <= best_sq) search(far, query, best_index, best_sq);
    }

    static constexpr size_t kLeaf = 16;
    const std::vector<Vec3d>& points_;
    std::vector<uint32_t> indices_;
    std::vector<Node> nodes_;
    int32_t root_ = -1;
};

}  // namespace

ReconMetrics recon_eval(const PointCloud& pred, const PointCloud& gt, double tau) {
    if (pred.points.empty() || gt.points.empty())
        throw DomainError("recon_eval: point clouds must be nonempty");
    if (!(tau > 0.0)) throw DomainError("recon_eval: tau must be positive");

    const bool with_normals = pred.normals.size() == pred.points.size() &&
                              gt.normals.size() == gt.points.size();

    const KdTree pred_tree(pred.points);
    const KdTree gt_tree(gt.points);

    auto one_direction = [&](const PointCloud& from, const PointCloud& to, const KdTree& tree,
                             double& mean_dist, double& frac_within, double& mean_nc) {
        double dist_sum = 0.0, nc_sum = 0.0;
        size_t within = 0;
        for (size_t i = 0; i < from.points.size(); ++i) {
            const auto [j, dist] = tree.nearest(from.points[i]);
            dist_sum += dist;
            if (dist <= tau) ++within;
            if (with_normals)
                nc_sum += std::abs(dot(from.normals[i], to.normals[j]));
        }
        const double n = static_cast<double>(from.points.size());
        mean_dist = dist_sum / n;
        frac_within = static_cast<double>(within) / n;
        mean_nc = with_normals ? nc_sum / n : 0.0;
    };

    ReconMetrics m;
    m.tau = tau;
    m.has_nc = with_normals;
    double nc_pred = 0.0, nc_gt = 0.0;
    one_direction(pred, gt, gt_tree, m.acc, m.precision, nc_pred);
    one_direction(gt, pred, pred_tree, m.comp, m.recall, nc_gt);
    m.c_l1 = (m.acc + m.comp) / 2.0;
    m.nc = with_normals ? (nc_pred + nc_gt) / 2.0 : 0.0;
    m.fscore = (m.precision + m.recall) > 0.0
                   ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                   : 0.0;
    return m;
}

DepthAlignment align_depth(const DepthMap& mono, const DepthMap& gt,
                           const std::vector<uint8_t>* mask) {
    if (mono.width != gt.width || mono.height != gt.height)
        throw DomainError("align_depth: depth map dimensions differ");
    const size_t n = mono.values.size();
    if (gt.values.size() != n) throw DomainError("align_depth: value buffer sizes differ");
    if (mask && mask->size() != n) throw DomainError("align_depth: mask size differs");

    std::vector<double> ms, gs;
    for (size_t i = 0; i < n; ++i) {
        if (mask && !(*mask)[i]) continue;
        const double m = mono.values[i];
        const double g = gt.values[i];
        if (!(g > 0.0) || !std::isfinite(m)) continue;
        ms.push_back(m);
        gs.push_back(g);
    }
    if (ms.size() < 100)
        throw DomainError("align_depth: need at least 100 valid pixels, found " +
                          std::to_string(ms.size()));

    const double count = static_cast<double>(ms.size());
    const double mean_m = std::accumulate(ms.begin(), ms.end(), 0.0) / count;
    const double mean_g = std::accumulate(gs.begin(), gs.end(), 0.0) / count;
    double smm = 0.0, smg = 0.0;
    for (size_t i = 0; i < ms.size(); ++i) {
        smm += (ms[i] - mean_m) * (ms[i] - mean_m);
        smg += (ms[i] - mean_m) * (gs[i] - mean_g);
    }
    if (smm == 0.0) throw DomainError("align_depth: constant monocular depth is degenerate");

    auto l1 = [&](double s, double b) {
        double sum = 0.0;
        for (size_t i = 0; i < ms.size(); ++i) sum += std::abs(s * ms[i] + b - gs[i]);
        return sum / count;
    };

    const double ls_s = smg / smm;
    const double ls_b = mean_g - ls_s * mean_m;

    DepthAlignment best;
    best.s = 1.0;
    best.b = 0.0;
    best.residual = l1(1.0, 0.0);  // identity is the floor the fit must beat
    best.ls_residual = l1(ls_s, ls_b);
    if (best.ls_residual < best.residual) {
        best.s = ls_s;
        best.b = ls_b;
        best.residual = best.ls_residual;
    }

    // Fixed-step subgradient descent on mean |s*m + b - g|; the best iterate
    // wins, so refinement can only improve on the starting points above.
    constexpr int kIterations = 200;
    constexpr double kStep = 1e-3;
    double s = ls_s, b = ls_b;
    for (int it = 0; it < kIterations; ++it) {
        double grad_s = 0.0, grad_b = 0.0;
        for (size_t i = 0; i < ms.size(); ++i) {
            const double e = s * ms[i] + b - gs[i];
            const double sign = e > 0.0 ? 1.0 : e < 0.0 ? -1.0 : 0.0;
            grad_s += sign * ms[i];
            grad_b += sign;
        }
        s -= kStep * grad_s / count;
        b -= kStep * grad_b / count;
        const double r = l1(s, b);
        if (r < best.residual) {
            best.s = s;
            best.b = b;
            best.residual = r;
        }
    }
    best.ls_residual = l1(ls_s, ls_b);
    return best;
}

}  // namespace navbench
