#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's depth or estimator code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

/// Exact rational p / q with q > 0.
struct Rational {
    std::int64_t num;
    std::int64_t den;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Counts by linear scan.
inline std::int64_t count_le(const std::vector<double>& values, double x) {
    std::int64_t c = 0;
    for (double v : values) c += v <= x ? 1 : 0;
    return c;
}

inline std::int64_t count_lt(const std::vector<double>& values, double x) {
    std::int64_t c = 0;
    for (double v : values) c += v < x ? 1 : 0;
    return c;
}

inline Rational tukey(const std::vector<double>& values, double x) {
    const auto k = static_cast<std::int64_t>(values.size());
    return {std::min(count_le(values, x), k - count_lt(values, x)), k};
}

inline Rational simplicial(const std::vector<double>& values, double x) {
    const auto k = static_cast<std::int64_t>(values.size());
    return {2 * count_le(values, x) * (k - count_lt(values, x)), k * k};
}

inline Rational fraiman_muniz(const std::vector<double>& values, double x) {
    const auto k = static_cast<std::int64_t>(values.size());
    return {2 * k - std::llabs(k - 2 * count_le(values, x)), 2 * k};
}

/// Keep the m deepest (ties to lower index), ascending indices.
inline std::vector<std::size_t> brute_force_keep(const std::vector<double>& depths, std::size_t m) {
    std::vector<std::size_t> kept;
    std::vector<bool> taken(depths.size(), false);
    for (std::size_t round = 0; round < m; ++round) {
        std::size_t best = depths.size();
        for (std::size_t i = 0; i < depths.size(); ++i) {
            if (taken[i]) continue;
            if (best == depths.size() || depths[i] > depths[best]) best = i;
        }
        taken[best] = true;
    }
    for (std::size_t i = 0; i < depths.size(); ++i) {
        if (taken[i]) kept.push_back(i);
    }
    return kept;
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// P(t in [start, end]) for the centered-interval mechanism with proportion p.
inline double centered_coverage(double t, double p) {
    auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
    if (p >= 1.0) return 1.0;
    if (p <= 0.5) {
        const double start_le = clamp01((t - (0.5 - p)) / p);
        const double end_ge = clamp01((0.5 + p - t) / p);
        return start_le * end_ge;
    }
    const double width = 1.0 - p;
    const double start_le = clamp01(t / width);
    const double end_ge = clamp01((1.0 - t) / width);
    return start_le * end_ge;
}

}  // namespace oracle
