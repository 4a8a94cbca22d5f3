#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "poifd/core.hpp"

namespace poifd {

enum class UnivariateDepthKind { Tukey, Simplicial, FraimanMuniz };

UnivariateDepthKind parse_depth_kind(std::string_view name);
std::string_view to_string(UnivariateDepthKind kind);

// Depths from a distribution function value F(x) and its left limit F(x-).
// These are also used with analytic population CDFs.
double tukey_depth(double cdf, double cdf_left);
double simplicial_depth(double cdf, double cdf_left);
double fm_depth(double cdf);
double depth_from_cdf(UnivariateDepthKind kind, double cdf, double cdf_left);

// Sample versions. They work from integer counts so that results on small
// samples are the correctly rounded rational value.
double tukey_depth(const PointwiseEcdf& ecdf, double x);
double simplicial_depth(const PointwiseEcdf& ecdf, double x);
double fm_depth(const PointwiseEcdf& ecdf, double x);
double univariate_depth(UnivariateDepthKind kind, const PointwiseEcdf& ecdf, double x);

}  // namespace poifd
