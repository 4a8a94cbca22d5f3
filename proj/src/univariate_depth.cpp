#include "poifd/univariate_depth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace poifd {

UnivariateDepthKind parse_depth_kind(std::string_view name) {
    if (name == "tukey") return UnivariateDepthKind::Tukey;
    if (name == "simplicial") return UnivariateDepthKind::Simplicial;
    if (name == "fm") return UnivariateDepthKind::FraimanMuniz;
    throw std::invalid_argument("unknown depth kind '" + std::string(name) + "' (expected tukey|simplicial|fm)");
}

std::string_view to_string(UnivariateDepthKind kind) {
    switch (kind) {
        case UnivariateDepthKind::Tukey: return "tukey";
        case UnivariateDepthKind::Simplicial: return "simplicial";
        case UnivariateDepthKind::FraimanMuniz: return "fm";
    }
    return "unknown";
}

double tukey_depth(double cdf, double cdf_left) {
    return std::min(cdf, 1.0 - cdf_left);
}

double simplicial_depth(double cdf, double cdf_left) {
    return 2.0 * cdf * (1.0 - cdf_left);
}

double fm_depth(double cdf) {
    return 1.0 - std::abs(0.5 - cdf);
}

double depth_from_cdf(UnivariateDepthKind kind, double cdf, double cdf_left) {
    switch (kind) {
        case UnivariateDepthKind::Tukey: return tukey_depth(cdf, cdf_left);
        case UnivariateDepthKind::Simplicial: return simplicial_depth(cdf, cdf_left);
        case UnivariateDepthKind::FraimanMuniz: return fm_depth(cdf);
    }
    throw std::invalid_argument("unknown depth kind");
}

namespace {

struct Counts {
    std::int64_t le;
    std::int64_t lt;
    std::int64_t total;
};

Counts counts_at(const PointwiseEcdf& ecdf, double x) {
    return {static_cast<std::int64_t>(ecdf.count_le(x)), static_cast<std::int64_t>(ecdf.count_lt(x)),
            static_cast<std::int64_t>(ecdf.size())};
}

}  // namespace

double tukey_depth(const PointwiseEcdf& ecdf, double x) {
    const auto c = counts_at(ecdf, x);
    return static_cast<double>(std::min(c.le, c.total - c.lt)) / static_cast<double>(c.total);
}

double simplicial_depth(const PointwiseEcdf& ecdf, double x) {
    const auto c = counts_at(ecdf, x);
    // 2 F (1 - F-) = 2 le (k - lt) / k^2
    return static_cast<double>(2 * c.le * (c.total - c.lt)) / static_cast<double>(c.total * c.total);
}

double fm_depth(const PointwiseEcdf& ecdf, double x) {
    const auto c = counts_at(ecdf, x);
    // 1 - |1/2 - le/k| = (2k - |k - 2 le|) / 2k
    const std::int64_t gap = c.total - 2 * c.le;
    return static_cast<double>(2 * c.total - (gap < 0 ? -gap : gap)) / static_cast<double>(2 * c.total);
}

double univariate_depth(UnivariateDepthKind kind, const PointwiseEcdf& ecdf, double x) {
    switch (kind) {
        case UnivariateDepthKind::Tukey: return tukey_depth(ecdf, x);
        case UnivariateDepthKind::Simplicial: return simplicial_depth(ecdf, x);
        case UnivariateDepthKind::FraimanMuniz: return fm_depth(ecdf, x);
    }
    throw std::invalid_argument("unknown depth kind");
}

}  // namespace poifd
