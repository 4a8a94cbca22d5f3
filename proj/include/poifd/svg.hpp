#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "poifd/core.hpp"

namespace poifd {

/// Two stacked panels: the selected partial curves as polylines (one
/// polyline per observed run) above, coverage per grid point below.
void write_curve_panels_svg(std::ostream& out, const FunctionalSample& sample, const std::vector<std::size_t>& curves,
                            std::span<const double> coverage, const std::string& title);

}  // namespace poifd
