#pragma once

// Data model shared by every module: the evaluation grid, partially observed
// curves, samples of such curves, and per-point empirical distributions.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace poifd {

/// Raised when a grid point has no observed curve and a per-point
/// distribution is requested there.
class CoverageGapError : public std::runtime_error {
public:
    CoverageGapError(std::size_t point_index, const std::string& what)
        : std::runtime_error(what), point_index_(point_index) {}
    std::size_t point_index() const noexcept { return point_index_; }

private:
    std::size_t point_index_;
};

/// Common evaluation grid 0 = t_1 < ... < t_T = 1.
class Grid {
public:
    explicit Grid(std::vector<double> points);

    /// T equidistant points on [0, 1].
    static Grid uniform(std::size_t count);

    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t index) const { return points_[index]; }
    std::span<const double> points() const noexcept { return points_; }

    /// Trapezoid quadrature weights on [0, 1]; strictly positive, sum to 1.
    std::span<const double> trapezoid_weights() const noexcept { return trapezoid_; }

    std::size_t nearest_index(double t) const;

    bool operator==(const Grid& other) const { return points_ == other.points_; }

private:
    std::vector<double> points_;
    std::vector<double> trapezoid_;
};

/// One functional observation: values on the grid plus the observation mask.
///
/// Unobserved slots hold a quiet NaN and are never handed out: `at()` on a
/// masked-out index throws std::logic_error.
class PartialCurve {
public:
    PartialCurve(std::vector<double> values, std::vector<bool> mask);

    static PartialCurve fully_observed(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    bool observed(std::size_t index) const { return mask_[index]; }
    double at(std::size_t index) const;
    std::size_t observed_count() const noexcept { return observed_count_; }
    bool fully_observed() const noexcept { return observed_count_ == values_.size(); }

    const std::vector<bool>& mask() const noexcept { return mask_; }

    /// Raw storage including the NaN markers. Intended for serialization.
    std::span<const double> raw_values() const noexcept { return values_; }

    bool operator==(const PartialCurve& other) const;

private:
    std::vector<double> values_;
    std::vector<bool> mask_;
    std::size_t observed_count_ = 0;
};

/// Right-continuous empirical distribution of the observed values at one
/// grid point.
class PointwiseEcdf {
public:
    explicit PointwiseEcdf(std::vector<double> values);

    std::size_t size() const noexcept { return sorted_.size(); }

    /// #{values <= x}
    std::size_t count_le(double x) const;
    /// #{values < x}
    std::size_t count_lt(double x) const;

    /// F(x)
    double operator()(double x) const;
    /// F(x-)
    double left_limit(double x) const;

    std::span<const double> sorted_values() const noexcept { return sorted_; }

private:
    std::vector<double> sorted_;
};

/// n partially observed curves on a shared grid. Immutable after
/// construction; all accessors are safe for concurrent use.
class FunctionalSample {
public:
    FunctionalSample(Grid grid, std::vector<PartialCurve> curves);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return curves_.size(); }
    std::size_t point_count() const noexcept { return grid_.size(); }

    const PartialCurve& curve(std::size_t i) const { return curves_.at(i); }
    const std::vector<PartialCurve>& curves() const noexcept { return curves_; }

    /// I(t_l): indices of curves observed at grid point l.
    const std::vector<std::size_t>& observed_at(std::size_t point_index) const {
        return index_sets_.at(point_index);
    }

    /// q_n(t_l) = #I(t_l) / n
    double coverage(std::size_t point_index) const { return coverage_.at(point_index); }
    std::span<const double> coverage() const noexcept { return coverage_; }

    bool all_observed() const noexcept;

    /// Throws CoverageGapError when no curve is observed at the point.
    const PointwiseEcdf& ecdf_at(std::size_t point_index) const;

private:
    Grid grid_;
    std::vector<PartialCurve> curves_;
    std::vector<std::vector<std::size_t>> index_sets_;
    std::vector<double> coverage_;
    std::vector<std::optional<PointwiseEcdf>> ecdfs_;
};

/// Convenience wrapper matching the free-function style used elsewhere.
inline FunctionalSample build_sample(Grid grid, std::vector<PartialCurve> curves) {
    return FunctionalSample(std::move(grid), std::move(curves));
}

}  // namespace poifd
