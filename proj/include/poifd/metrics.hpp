#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "poifd/core.hpp"
#include "poifd/estimators.hpp"

namespace poifd {

/// Integrated squared error of one replication, restricted to the grid
/// points where the estimate is defined.
struct ReplicationError {
    double ei = 0.0;
    std::size_t points_used = 0;
};

/// Mean, standard deviation (divisor N) and lower median of the EI values.
struct ScenarioMetrics {
    double e_mean = 0.0;
    double s_dev = 0.0;
    double m_median = 0.0;
};

ReplicationError integrated_error(const LocationEstimate& estimate, const Grid& grid,
                                  const std::function<double(double)>& truth);

ScenarioMetrics aggregate(std::span<const ReplicationError> errors);

}  // namespace poifd
