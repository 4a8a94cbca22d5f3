#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "poifd/core.hpp"

namespace poifd {

/// Depth-based trimming decision. `kept` holds curve indices in ascending
/// order; `beta` is the smallest retained depth.
struct TrimSpec {
    double alpha = 0.0;
    std::size_t keep_count = 0;
    double beta = 0.0;
    std::vector<std::size_t> kept;

    bool keeps(std::size_t index) const;
};

/// Pointwise location estimate. `values[l]` is meaningful only where
/// `defined[l]` is true (NaN elsewhere). `fallback[l]` marks points where no
/// retained curve was observed and the all-curve mean was used instead.
struct LocationEstimate {
    std::vector<double> values;
    std::vector<bool> defined;
    std::vector<bool> fallback;

    std::size_t size() const noexcept { return values.size(); }
    std::size_t defined_count() const;
};

/// Keeps the n - floor(n * alpha) deepest curves. Ties at the threshold go to
/// the lowest curve index.
TrimSpec select_trim(std::span<const double> depths, double alpha);

/// Number of curves retained by select_trim.
std::size_t keep_count(std::size_t n, double alpha);

/// Mean over the retained curves observed at each point.
LocationEstimate trimmed_mean(const FunctionalSample& sample, const TrimSpec& trim);

/// Mean over all curves observed at each point.
LocationEstimate ordinary_mean(const FunctionalSample& sample);

}  // namespace poifd
