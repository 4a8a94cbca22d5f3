#include "poifd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace poifd {

ReplicationError integrated_error(const LocationEstimate& estimate, const Grid& grid,
                                  const std::function<double(double)>& truth) {
    if (estimate.size() != grid.size()) {
        throw std::invalid_argument("estimate length does not match grid size");
    }
    ReplicationError out;
    double sum = 0.0;
    for (std::size_t l = 0; l < grid.size(); ++l) {
        if (!estimate.defined[l]) {
            continue;
        }
        const double diff = estimate.values[l] - truth(grid[l]);
        sum += diff * diff;
        ++out.points_used;
    }
    if (out.points_used == 0) {
        throw std::invalid_argument("estimate is not defined at any grid point");
    }
    out.ei = sum / static_cast<double>(out.points_used);
    return out;
}

ScenarioMetrics aggregate(std::span<const ReplicationError> errors) {
    if (errors.empty()) {
        throw std::invalid_argument("aggregate needs at least one replication");
    }
    std::vector<double> values;
    values.reserve(errors.size());
    for (const auto& e : errors) {
        values.push_back(e.ei);
    }
    // Sorting first makes every statistic independent of replication order.
    std::sort(values.begin(), values.end());

    const double n = static_cast<double>(values.size());
    ScenarioMetrics m;
    double sum = 0.0;
    for (double v : values) sum += v;
    m.e_mean = sum / n;

    double squares = 0.0;
    for (double v : values) squares += (v - m.e_mean) * (v - m.e_mean);
    m.s_dev = std::sqrt(squares / n);

    m.m_median = values[(values.size() - 1) / 2];
    return m;
}

}  // namespace poifd
