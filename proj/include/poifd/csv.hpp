#pragma once

// Curve CSV: header `t,curve_1,...,curve_n`, one row per grid point, empty
// cells for unobserved values. Numbers are written in shortest round-trip
// form so a write/read cycle is exact.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "poifd/core.hpp"

namespace poifd {

std::string format_double(double value);
double parse_double(std::string_view text);

std::vector<std::string> split_csv_line(std::string_view line);

void write_curves_csv(std::ostream& out, const FunctionalSample& sample);
/// Writes only the listed curves, keeping their original ids.
void write_curves_csv(std::ostream& out, const FunctionalSample& sample, const std::vector<std::size_t>& curves);
void write_mask_csv(std::ostream& out, const FunctionalSample& sample);

FunctionalSample read_curves_csv(std::istream& in);
FunctionalSample read_curves_csv_file(const std::string& path);

}  // namespace poifd
