#include "poifd/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace poifd {

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw std::invalid_argument("grid needs at least two points");
    }
    if (points_.front() != 0.0 || points_.back() != 1.0) {
        throw std::invalid_argument("grid must start at 0 and end at 1");
    }
    for (std::size_t l = 1; l < points_.size(); ++l) {
        if (!(points_[l] > points_[l - 1])) {
            throw std::invalid_argument("grid points must be strictly increasing");
        }
    }

    const std::size_t count = points_.size();
    trapezoid_.assign(count, 0.0);
    for (std::size_t l = 0; l + 1 < count; ++l) {
        const double half = 0.5 * (points_[l + 1] - points_[l]);
        trapezoid_[l] += half;
        trapezoid_[l + 1] += half;
    }
}

Grid Grid::uniform(std::size_t count) {
    if (count < 2) {
        throw std::invalid_argument("grid needs at least two points");
    }
    std::vector<double> points(count);
    const double denom = static_cast<double>(count - 1);
    for (std::size_t l = 0; l < count; ++l) {
        points[l] = static_cast<double>(l) / denom;
    }
    points.back() = 1.0;
    return Grid(std::move(points));
}

std::size_t Grid::nearest_index(double t) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), t);
    if (it == points_.begin()) {
        return 0;
    }
    if (it == points_.end()) {
        return points_.size() - 1;
    }
    const auto hi = static_cast<std::size_t>(it - points_.begin());
    return (t - points_[hi - 1] <= points_[hi] - t) ? hi - 1 : hi;
}

PartialCurve::PartialCurve(std::vector<double> values, std::vector<bool> mask)
    : values_(std::move(values)), mask_(std::move(mask)) {
    if (values_.size() != mask_.size()) {
        throw std::invalid_argument("curve values and mask differ in length");
    }
    for (std::size_t l = 0; l < values_.size(); ++l) {
        if (mask_[l]) {
            if (!std::isfinite(values_[l])) {
                throw std::invalid_argument("observed curve value is not finite");
            }
            ++observed_count_;
        } else {
            values_[l] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    if (observed_count_ == 0) {
        throw std::invalid_argument("curve has no observed point");
    }
}

PartialCurve PartialCurve::fully_observed(std::vector<double> values) {
    std::vector<bool> mask(values.size(), true);
    return PartialCurve(std::move(values), std::move(mask));
}

double PartialCurve::at(std::size_t index) const {
    if (index >= values_.size()) {
        throw std::out_of_range("curve index out of range");
    }
    if (!mask_[index]) {
        throw std::logic_error("read of an unobserved curve value");
    }
    return values_[index];
}

bool PartialCurve::operator==(const PartialCurve& other) const {
    if (mask_ != other.mask_) {
        return false;
    }
    for (std::size_t l = 0; l < values_.size(); ++l) {
        if (mask_[l] && values_[l] != other.values_[l]) {
            return false;
        }
    }
    return true;
}

PointwiseEcdf::PointwiseEcdf(std::vector<double> values) : sorted_(std::move(values)) {
    if (sorted_.empty()) {
        throw std::invalid_argument("empirical distribution needs at least one value");
    }
    for (double v : sorted_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("empirical distribution value is not finite");
        }
    }
    std::sort(sorted_.begin(), sorted_.end());
}

std::size_t PointwiseEcdf::count_le(double x) const {
    return static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin());
}

std::size_t PointwiseEcdf::count_lt(double x) const {
    return static_cast<std::size_t>(std::lower_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin());
}

double PointwiseEcdf::operator()(double x) const {
    return static_cast<double>(count_le(x)) / static_cast<double>(sorted_.size());
}

double PointwiseEcdf::left_limit(double x) const {
    return static_cast<double>(count_lt(x)) / static_cast<double>(sorted_.size());
}

FunctionalSample::FunctionalSample(Grid grid, std::vector<PartialCurve> curves)
    : grid_(std::move(grid)), curves_(std::move(curves)) {
    if (curves_.empty()) {
        throw std::invalid_argument("sample needs at least one curve");
    }
    const std::size_t count = grid_.size();
    for (const auto& c : curves_) {
        if (c.size() != count) {
            throw std::invalid_argument("curve length does not match grid size");
        }
    }

    index_sets_.resize(count);
    coverage_.resize(count);
    ecdfs_.resize(count);
    const double n = static_cast<double>(curves_.size());
    std::vector<double> column;
    for (std::size_t l = 0; l < count; ++l) {
        column.clear();
        for (std::size_t i = 0; i < curves_.size(); ++i) {
            if (curves_[i].observed(l)) {
                index_sets_[l].push_back(i);
                column.push_back(curves_[i].at(l));
            }
        }
        coverage_[l] = static_cast<double>(index_sets_[l].size()) / n;
        if (!column.empty()) {
            ecdfs_[l].emplace(column);
        }
    }
}

bool FunctionalSample::all_observed() const noexcept {
    return std::all_of(curves_.begin(), curves_.end(), [](const PartialCurve& c) { return c.fully_observed(); });
}

const PointwiseEcdf& FunctionalSample::ecdf_at(std::size_t point_index) const {
    const auto& slot = ecdfs_.at(point_index);
    if (!slot) {
        throw CoverageGapError(point_index, "no curve observed at grid point " + std::to_string(point_index));
    }
    return *slot;
}

}  // namespace poifd
