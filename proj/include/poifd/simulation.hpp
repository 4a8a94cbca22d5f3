#pragma once

// Synthetic data: Gaussian-process curves X(t) = g(t) + e(t) with
// Cov(e(s), e(t)) = (1/2)^{theta |t - s|}, magnitude-M contamination of a
// random fraction q of curves, and the two partial observation mechanisms.
// Every draw is a pure function of (seed, curve index).

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "poifd/core.hpp"
#include "poifd/rng.hpp"

namespace poifd {

using Path = std::vector<double>;

class FactorizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GpModel {
    Grid grid = Grid::uniform(2);
    double theta = 1.0;
    std::function<double(double)> trend = [](double t) { return 4.0 * t; };

    /// C(s, t) = (1/2)^{theta |t - s|} on the grid, without jitter.
    Eigen::MatrixXd covariance() const;
};

struct CholeskyFactor {
    Eigen::MatrixXd lower;
    double jitter = 0.0;
};

/// Cholesky of `matrix + jitter * I`, trying jitter 1e-10, 1e-9, ..., 1e-6.
/// Throws FactorizationError if every attempt fails.
CholeskyFactor cholesky_with_jitter(const Eigen::MatrixXd& matrix);

/// Draws paths from a fixed model, reusing one factorization.
class GpSampler {
public:
    explicit GpSampler(GpModel model);

    const GpModel& model() const noexcept { return model_; }
    const CholeskyFactor& factor() const noexcept { return factor_; }

    Path draw(Engine& engine) const;

    /// n paths; path i uses its own engine seeded from (seed, i).
    std::vector<Path> sample(std::size_t n, std::uint64_t seed) const;

private:
    GpModel model_;
    CholeskyFactor factor_;
    Eigen::VectorXd mean_;
};

std::vector<Path> sample_gp(const GpModel& model, std::size_t n, std::uint64_t seed);

enum class ContaminationKind {
    None,        // M1
    Symmetric,   // M2: + eps * sigma * M on the whole path
    Asymmetric,  // M3: + eps * M on the whole path
    Partial,     // M4: + eps * sigma * M for t >= T_i
};

ContaminationKind parse_contamination_kind(std::string_view name);
/// Short CLI name: none|sym|asym|partial.
std::string_view to_string(ContaminationKind kind);
/// Table label: none|symmetric|asymmetric|partial.
std::string_view table_label(ContaminationKind kind);

struct ContaminationSpec {
    ContaminationKind kind = ContaminationKind::None;
    double q = 0.0;
    double magnitude = 0.0;
};

/// Per-curve random quantities of the contamination models.
struct ContaminationDraw {
    bool contaminated = false;  // eps_i
    int sign = 1;               // sigma_i
    double onset = 0.0;         // T_i
};

ContaminationDraw draw_contamination(double q, Engine& engine);

void apply_contamination(Path& path, const Grid& grid, const ContaminationSpec& spec, const ContaminationDraw& draw);

struct ContaminatedPaths {
    std::vector<Path> paths;
    std::vector<ContaminationDraw> draws;
};

ContaminatedPaths contaminate(std::vector<Path> paths, const Grid& grid, const ContaminationSpec& spec,
                              std::uint64_t seed);

enum class ObservationKind { Full, RandomIntervals, CenteredInterval };

ObservationKind parse_observation_kind(std::string_view name);
std::string_view to_string(ObservationKind kind);

struct ObservationSpec {
    ObservationKind kind = ObservationKind::Full;
    std::size_t intervals = 3;  // m, RandomIntervals only
    double p_obs = 1.0;
};

/// One observation mask on the grid. Empty realizations are redrawn a bounded
/// number of times before std::runtime_error is thrown.
std::vector<bool> draw_mask(const Grid& grid, const ObservationSpec& spec, Engine& engine);

/// Masks each path with its own engine seeded from (seed, i).
FunctionalSample observe(const Grid& grid, const std::vector<Path>& paths, const ObservationSpec& spec,
                         std::uint64_t seed);

/// Monte Carlo estimate of Q(t_l) = P(t_l in O) from `draws` masks.
std::vector<double> estimate_coverage(const Grid& grid, const ObservationSpec& spec, std::size_t draws,
                                      std::uint64_t seed);

}  // namespace poifd
