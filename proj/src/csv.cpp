#include "poifd/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace poifd {

std::string format_double(double value) {
    std::array<char, 32> buffer{};
    auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    if (ec != std::errc()) {
        throw std::runtime_error("failed to format number");
    }
    return std::string(buffer.data(), ptr);
}

double parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        cells.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return cells;
}

void write_curves_csv(std::ostream& out, const FunctionalSample& sample, const std::vector<std::size_t>& curves) {
    out << 't';
    for (std::size_t i : curves) {
        out << ",curve_" << (i + 1);
    }
    out << '\n';
    for (std::size_t l = 0; l < sample.point_count(); ++l) {
        out << format_double(sample.grid()[l]);
        for (std::size_t i : curves) {
            out << ',';
            const auto& c = sample.curve(i);
            if (c.observed(l)) {
                out << format_double(c.at(l));
            }
        }
        out << '\n';
    }
}

void write_curves_csv(std::ostream& out, const FunctionalSample& sample) {
    std::vector<std::size_t> all(sample.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    write_curves_csv(out, sample, all);
}

void write_mask_csv(std::ostream& out, const FunctionalSample& sample) {
    out << 't';
    for (std::size_t i = 0; i < sample.size(); ++i) {
        out << ",curve_" << (i + 1);
    }
    out << '\n';
    for (std::size_t l = 0; l < sample.point_count(); ++l) {
        out << format_double(sample.grid()[l]);
        for (const auto& c : sample.curves()) {
            out << ',' << (c.observed(l) ? 1 : 0);
        }
        out << '\n';
    }
}

FunctionalSample read_curves_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("curve CSV is empty");
    }
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header.front() != "t") {
        throw std::invalid_argument("curve CSV header must start with 't' followed by curve columns");
    }
    const std::size_t n = header.size() - 1;

    std::vector<double> grid;
    std::vector<std::vector<double>> values(n);
    std::vector<std::vector<bool>> masks(n);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw std::invalid_argument("curve CSV row " + std::to_string(row) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(header.size()));
        }
        grid.push_back(parse_double(cells[0]));
        for (std::size_t i = 0; i < n; ++i) {
            const bool present = cells[i + 1].find_first_not_of(" \t") != std::string::npos;
            values[i].push_back(present ? parse_double(cells[i + 1]) : 0.0);
            masks[i].push_back(present);
        }
    }

    std::vector<PartialCurve> curves;
    curves.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        curves.emplace_back(std::move(values[i]), std::move(masks[i]));
    }
    return FunctionalSample(Grid(std::move(grid)), std::move(curves));
}

FunctionalSample read_curves_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return read_curves_csv(in);
}

}  // namespace poifd
