#include "poifd/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace poifd {

bool TrimSpec::keeps(std::size_t index) const {
    return std::binary_search(kept.begin(), kept.end(), index);
}

std::size_t LocationEstimate::defined_count() const {
    return static_cast<std::size_t>(std::count(defined.begin(), defined.end(), true));
}

std::size_t keep_count(std::size_t n, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1)");
    }
    const auto dropped = static_cast<std::size_t>(std::floor(static_cast<double>(n) * alpha));
    return n - dropped;
}

TrimSpec select_trim(std::span<const double> depths, double alpha) {
    if (depths.empty()) {
        throw std::invalid_argument("select_trim needs at least one depth");
    }
    for (double d : depths) {
        if (std::isnan(d)) {
            throw std::invalid_argument("depth value is NaN");
        }
    }

    TrimSpec trim;
    trim.alpha = alpha;
    trim.keep_count = keep_count(depths.size(), alpha);

    std::vector<std::size_t> order(depths.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return depths[a] > depths[b]; });

    trim.kept.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(trim.keep_count));
    trim.beta = depths[trim.kept.back()];
    std::sort(trim.kept.begin(), trim.kept.end());
    return trim;
}

namespace {

LocationEstimate empty_estimate(std::size_t count) {
    LocationEstimate est;
    est.values.assign(count, std::numeric_limits<double>::quiet_NaN());
    est.defined.assign(count, false);
    est.fallback.assign(count, false);
    return est;
}

}  // namespace

LocationEstimate ordinary_mean(const FunctionalSample& sample) {
    const std::size_t count = sample.point_count();
    LocationEstimate est = empty_estimate(count);
    for (std::size_t l = 0; l < count; ++l) {
        const auto& observed = sample.observed_at(l);
        if (observed.empty()) {
            continue;
        }
        double sum = 0.0;
        for (std::size_t i : observed) {
            sum += sample.curve(i).at(l);
        }
        est.values[l] = sum / static_cast<double>(observed.size());
        est.defined[l] = true;
    }
    return est;
}

LocationEstimate trimmed_mean(const FunctionalSample& sample, const TrimSpec& trim) {
    if (trim.kept.empty()) {
        throw std::invalid_argument("trimmed_mean needs at least one retained curve");
    }
    for (std::size_t i : trim.kept) {
        if (i >= sample.size()) {
            throw std::out_of_range("retained curve index out of range");
        }
    }

    const std::size_t count = sample.point_count();
    LocationEstimate est = empty_estimate(count);
    for (std::size_t l = 0; l < count; ++l) {
        const auto& observed = sample.observed_at(l);
        if (observed.empty()) {
            continue;
        }
        double sum = 0.0;
        std::size_t used = 0;
        for (std::size_t i : observed) {
            if (trim.keeps(i)) {
                sum += sample.curve(i).at(l);
                ++used;
            }
        }
        if (used == 0) {
            for (std::size_t i : observed) {
                sum += sample.curve(i).at(l);
            }
            used = observed.size();
            est.fallback[l] = true;
        }
        est.values[l] = sum / static_cast<double>(used);
        est.defined[l] = true;
    }
    return est;
}

}  // namespace poifd
