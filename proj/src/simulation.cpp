#include "poifd/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace poifd {

Eigen::MatrixXd GpModel::covariance() const {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw std::invalid_argument("covariance rate theta must be positive and finite");
    }
    const std::size_t count = grid.size();
    Eigen::MatrixXd cov(count, count);
    for (std::size_t a = 0; a < count; ++a) {
        cov(a, a) = 1.0;
        for (std::size_t b = a + 1; b < count; ++b) {
            const double c = std::pow(0.5, theta * std::abs(grid[b] - grid[a]));
            cov(a, b) = c;
            cov(b, a) = c;
        }
    }
    return cov;
}

CholeskyFactor cholesky_with_jitter(const Eigen::MatrixXd& matrix) {
    if (matrix.rows() != matrix.cols()) {
        throw std::invalid_argument("covariance matrix must be square");
    }
    const auto identity = Eigen::MatrixXd::Identity(matrix.rows(), matrix.cols());
    for (double jitter = 1e-10; jitter <= 1e-6 * 1.0000001; jitter *= 10.0) {
        Eigen::LLT<Eigen::MatrixXd> llt(matrix + jitter * identity);
        if (llt.info() == Eigen::Success) {
            return {llt.matrixL(), jitter};
        }
    }
    throw FactorizationError("covariance matrix is not positive definite even with 1e-6 jitter");
}

GpSampler::GpSampler(GpModel model) : model_(std::move(model)), factor_(cholesky_with_jitter(model_.covariance())) {
    mean_.resize(static_cast<Eigen::Index>(model_.grid.size()));
    for (std::size_t l = 0; l < model_.grid.size(); ++l) {
        mean_(static_cast<Eigen::Index>(l)) = model_.trend(model_.grid[l]);
    }
}

Path GpSampler::draw(Engine& engine) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(mean_.size());
    for (Eigen::Index l = 0; l < z.size(); ++l) {
        z(l) = normal(engine);
    }
    const Eigen::VectorXd x = mean_ + factor_.lower.triangularView<Eigen::Lower>() * z;
    return Path(x.data(), x.data() + x.size());
}

std::vector<Path> GpSampler::sample(std::size_t n, std::uint64_t seed) const {
    std::vector<Path> paths(n);
    for (std::size_t i = 0; i < n; ++i) {
        Engine engine = make_engine(seed, {i});
        paths[i] = draw(engine);
    }
    return paths;
}

std::vector<Path> sample_gp(const GpModel& model, std::size_t n, std::uint64_t seed) {
    if (model.grid.size() < 2) {
        throw std::invalid_argument("grid needs at least two points");
    }
    return GpSampler(model).sample(n, seed);
}

ContaminationKind parse_contamination_kind(std::string_view name) {
    if (name == "none") return ContaminationKind::None;
    if (name == "sym" || name == "symmetric") return ContaminationKind::Symmetric;
    if (name == "asym" || name == "asymmetric") return ContaminationKind::Asymmetric;
    if (name == "partial") return ContaminationKind::Partial;
    throw std::invalid_argument("unknown contamination '" + std::string(name) + "' (expected none|sym|asym|partial)");
}

std::string_view to_string(ContaminationKind kind) {
    switch (kind) {
        case ContaminationKind::None: return "none";
        case ContaminationKind::Symmetric: return "sym";
        case ContaminationKind::Asymmetric: return "asym";
        case ContaminationKind::Partial: return "partial";
    }
    return "unknown";
}

std::string_view table_label(ContaminationKind kind) {
    switch (kind) {
        case ContaminationKind::None: return "none";
        case ContaminationKind::Symmetric: return "symmetric";
        case ContaminationKind::Asymmetric: return "asymmetric";
        case ContaminationKind::Partial: return "partial";
    }
    return "unknown";
}

ContaminationDraw draw_contamination(double q, Engine& engine) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("contamination probability must lie in [0, 1]");
    }
    // All three quantities are always drawn so the stream layout does not
    // depend on the model.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ContaminationDraw draw;
    draw.contaminated = unit(engine) < q;
    draw.sign = unit(engine) < 0.5 ? -1 : 1;
    draw.onset = unit(engine);
    return draw;
}

void apply_contamination(Path& path, const Grid& grid, const ContaminationSpec& spec, const ContaminationDraw& draw) {
    if (!std::isfinite(spec.magnitude) || spec.magnitude < 0.0) {
        throw std::invalid_argument("contamination magnitude must be finite and nonnegative");
    }
    if (path.size() != grid.size()) {
        throw std::invalid_argument("path length does not match grid size");
    }
    if (!draw.contaminated || spec.kind == ContaminationKind::None || spec.magnitude == 0.0) {
        return;
    }
    const double signed_shift = static_cast<double>(draw.sign) * spec.magnitude;
    switch (spec.kind) {
        case ContaminationKind::Symmetric:
            for (double& v : path) v += signed_shift;
            break;
        case ContaminationKind::Asymmetric:
            for (double& v : path) v += spec.magnitude;
            break;
        case ContaminationKind::Partial:
            for (std::size_t l = 0; l < path.size(); ++l) {
                if (grid[l] >= draw.onset) {
                    path[l] += signed_shift;
                }
            }
            break;
        case ContaminationKind::None:
            break;
    }
}

ContaminatedPaths contaminate(std::vector<Path> paths, const Grid& grid, const ContaminationSpec& spec,
                              std::uint64_t seed) {
    ContaminatedPaths out;
    out.draws.resize(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        Engine engine = make_engine(seed, {i});
        out.draws[i] = draw_contamination(spec.q, engine);
        apply_contamination(paths[i], grid, spec, out.draws[i]);
    }
    out.paths = std::move(paths);
    return out;
}

ObservationKind parse_observation_kind(std::string_view name) {
    if (name == "full") return ObservationKind::Full;
    if (name == "intervals") return ObservationKind::RandomIntervals;
    if (name == "centered") return ObservationKind::CenteredInterval;
    throw std::invalid_argument("unknown observation '" + std::string(name) + "' (expected full|intervals|centered)");
}

std::string_view to_string(ObservationKind kind) {
    switch (kind) {
        case ObservationKind::Full: return "full";
        case ObservationKind::RandomIntervals: return "intervals";
        case ObservationKind::CenteredInterval: return "centered";
    }
    return "unknown";
}

namespace {

constexpr int kMaxMaskAttempts = 1000;

struct Interval {
    double lo;
    double hi;
};

std::vector<bool> mask_from_intervals(const Grid& grid, const std::vector<Interval>& intervals) {
    std::vector<bool> mask(grid.size(), false);
    for (std::size_t l = 0; l < grid.size(); ++l) {
        for (const auto& iv : intervals) {
            if (grid[l] >= iv.lo && grid[l] <= iv.hi) {
                mask[l] = true;
                break;
            }
        }
    }
    return mask;
}

Interval draw_centered(double p, Engine& engine) {
    // p <= 1/2: start ~ U[1/2 - p, 1/2), end ~ U(1/2, 1/2 + p]
    // p >  1/2: start ~ U[0, 1 - p),     end ~ U(p, 1]
    const double start_lo = p <= 0.5 ? 0.5 - p : 0.0;
    const double end_hi = p <= 0.5 ? 0.5 + p : 1.0;
    const double width = p <= 0.5 ? p : 1.0 - p;
    if (width <= 0.0) {
        return {0.0, 1.0};
    }
    std::uniform_real_distribution<double> offset(0.0, width);
    const double start = start_lo + offset(engine);
    const double end = end_hi - offset(engine);
    return {start, end};
}

// Sample of size floor((m - p) / p) cuts [0, 1] into consecutive intervals;
// m of them are retained, non-adjacent whenever that is possible, and draws
// whose total length is far from p are rejected.
std::vector<Interval> draw_random_intervals(std::size_t m, double p, Engine& engine) {
    const auto cut_count =
        static_cast<std::size_t>(std::max(0.0, std::floor((static_cast<double>(m) - p) / p)));
    const std::size_t piece_count = cut_count + 1;
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int attempt = 0; attempt < kMaxMaskAttempts; ++attempt) {
        std::vector<double> cuts(cut_count);
        for (double& c : cuts) c = unit(engine);
        std::sort(cuts.begin(), cuts.end());
        cuts.insert(cuts.begin(), 0.0);
        cuts.push_back(1.0);

        std::vector<std::size_t> chosen;
        if (m >= piece_count) {
            chosen.resize(piece_count);
            std::iota(chosen.begin(), chosen.end(), std::size_t{0});
        } else {
            const bool spread = piece_count + 1 >= 2 * m;
            std::vector<std::size_t> pieces(piece_count);
            std::iota(pieces.begin(), pieces.end(), std::size_t{0});
            for (int pick = 0; pick < kMaxMaskAttempts; ++pick) {
                chosen.clear();
                std::sample(pieces.begin(), pieces.end(), std::back_inserter(chosen), m, engine);
                bool adjacent = false;
                for (std::size_t k = 1; k < chosen.size(); ++k) {
                    adjacent = adjacent || chosen[k] == chosen[k - 1] + 1;
                }
                if (!spread || !adjacent) {
                    break;
                }
            }
        }

        std::vector<Interval> intervals;
        double measure = 0.0;
        for (std::size_t k : chosen) {
            intervals.push_back({cuts[k], cuts[k + 1]});
            measure += cuts[k + 1] - cuts[k];
        }
        if (std::abs(measure - p) <= 0.25 * p) {
            return intervals;
        }
    }
    throw std::runtime_error("could not draw observation intervals close to the requested proportion");
}

}  // namespace

std::vector<bool> draw_mask(const Grid& grid, const ObservationSpec& spec, Engine& engine) {
    if (!(spec.p_obs > 0.0 && spec.p_obs <= 1.0)) {
        throw std::invalid_argument("observation proportion must lie in (0, 1]");
    }
    if (spec.kind == ObservationKind::Full) {
        return std::vector<bool>(grid.size(), true);
    }
    if (spec.kind == ObservationKind::RandomIntervals && spec.intervals == 0) {
        throw std::invalid_argument("interval count must be positive");
    }
    for (int attempt = 0; attempt < kMaxMaskAttempts; ++attempt) {
        std::vector<bool> mask;
        if (spec.kind == ObservationKind::CenteredInterval) {
            mask = mask_from_intervals(grid, {draw_centered(spec.p_obs, engine)});
        } else {
            mask = mask_from_intervals(grid, draw_random_intervals(spec.intervals, spec.p_obs, engine));
        }
        if (std::find(mask.begin(), mask.end(), true) != mask.end()) {
            return mask;
        }
    }
    throw std::runtime_error("observation mechanism kept producing masks with no grid point");
}

FunctionalSample observe(const Grid& grid, const std::vector<Path>& paths, const ObservationSpec& spec,
                         std::uint64_t seed) {
    std::vector<PartialCurve> curves;
    curves.reserve(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        Engine engine = make_engine(seed, {i});
        curves.emplace_back(paths[i], draw_mask(grid, spec, engine));
    }
    return FunctionalSample(grid, std::move(curves));
}

std::vector<double> estimate_coverage(const Grid& grid, const ObservationSpec& spec, std::size_t draws,
                                      std::uint64_t seed) {
    if (draws == 0) {
        throw std::invalid_argument("coverage estimate needs at least one draw");
    }
    std::vector<double> coverage(grid.size(), 0.0);
    for (std::size_t d = 0; d < draws; ++d) {
        Engine engine = make_engine(seed, {d});
        const auto mask = draw_mask(grid, spec, engine);
        for (std::size_t l = 0; l < grid.size(); ++l) {
            coverage[l] += mask[l] ? 1.0 : 0.0;
        }
    }
    for (double& c : coverage) c /= static_cast<double>(draws);
    return coverage;
}

}  // namespace poifd
