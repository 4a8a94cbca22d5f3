#include "poifd/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>

namespace poifd {

namespace {

constexpr double kWidth = 640.0;
constexpr double kCurvePanel = 320.0;
constexpr double kCoveragePanel = 140.0;
constexpr double kMargin = 40.0;

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

void write_curve_panels_svg(std::ostream& out, const FunctionalSample& sample, const std::vector<std::size_t>& curves,
                            std::span<const double> coverage, const std::string& title) {
    const auto& grid = sample.grid();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i : curves) {
        const auto& c = sample.curve(i);
        for (std::size_t l = 0; l < c.size(); ++l) {
            if (c.observed(l)) {
                lo = std::min(lo, c.at(l));
                hi = std::max(hi, c.at(l));
            }
        }
    }
    if (!(hi > lo)) {
        lo -= 1.0;
        hi += 1.0;
    }

    const double plot_w = kWidth - 2 * kMargin;
    const double height = kCurvePanel + kCoveragePanel + 3 * kMargin;
    auto x_of = [&](double t) { return kMargin + t * plot_w; };
    auto y_curve = [&](double v) { return kMargin + (hi - v) / (hi - lo) * kCurvePanel; };
    const double cov_top = 2 * kMargin + kCurvePanel;
    auto y_cov = [&](double q) { return cov_top + (1.0 - q) * kCoveragePanel; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kMargin << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title
        << "</text>\n";
    out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << plot_w << "\" height=\"" << kCurvePanel
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<rect x=\"" << kMargin << "\" y=\"" << cov_top << "\" width=\"" << plot_w << "\" height=\""
        << kCoveragePanel << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (std::size_t i : curves) {
        const auto& c = sample.curve(i);
        std::string points;
        auto flush = [&] {
            if (!points.empty()) {
                out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-opacity=\"0.6\" points=\"" << points
                    << "\"/>\n";
                points.clear();
            }
        };
        for (std::size_t l = 0; l < c.size(); ++l) {
            if (!c.observed(l)) {
                flush();
                continue;
            }
            points += fixed(x_of(grid[l])) + ',' + fixed(y_curve(c.at(l))) + ' ';
        }
        flush();
    }

    std::string cov_points;
    for (std::size_t l = 0; l < coverage.size(); ++l) {
        cov_points += fixed(x_of(grid[l])) + ',' + fixed(y_cov(coverage[l])) + ' ';
    }
    out << "<polyline fill=\"none\" stroke=\"darkred\" points=\"" << cov_points << "\"/>\n";
    out << "<text x=\"" << kMargin << "\" y=\"" << cov_top - 6
        << "\" font-family=\"sans-serif\" font-size=\"11\">coverage q_n(t)</text>\n";
    out << "</svg>\n";
}

}  // namespace poifd
