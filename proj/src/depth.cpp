#include "poifd/depth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "poifd/parallel.hpp"
#include "poifd/rng.hpp"

namespace poifd {

namespace {

double parse_number(std::string_view text) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

constexpr double kWeightTolerance = 1e-9;

}  // namespace

PhiFunction PhiFunction::identity() { return PhiFunction(Form::Identity, "identity"); }

PhiFunction PhiFunction::constant() { return PhiFunction(Form::Constant, "constant"); }

PhiFunction PhiFunction::power(double exponent) {
    if (!(exponent > 0.0) || !std::isfinite(exponent)) {
        throw std::invalid_argument("phi power exponent must be positive and finite");
    }
    PhiFunction phi(Form::Power, "power:" + std::to_string(exponent));
    phi.exponent_ = exponent;
    return phi;
}

PhiFunction PhiFunction::table(std::vector<double> knot_values) {
    if (knot_values.size() < 2) {
        throw std::invalid_argument("phi table needs at least two knots");
    }
    for (double v : knot_values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("phi table values must be finite and nonnegative");
        }
    }
    PhiFunction phi(Form::Table, "table");
    phi.knots_ = std::move(knot_values);
    return phi;
}

PhiFunction PhiFunction::parse(std::string_view spec) {
    if (spec == "identity") return identity();
    if (spec == "constant") return constant();
    if (spec == "square") return power(2.0);
    if (spec == "sqrt") return power(0.5);
    if (spec.starts_with("power:")) {
        return power(parse_number(spec.substr(6)));
    }
    if (spec.starts_with("table:")) {
        std::vector<double> values;
        std::string_view rest = spec.substr(6);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            values.push_back(parse_number(rest.substr(0, comma)));
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        return table(std::move(values));
    }
    throw std::invalid_argument("unknown phi '" + std::string(spec) +
                                "' (expected identity|constant|square|sqrt|power:<a>|table:<v0>,...)");
}

double PhiFunction::operator()(double q) const {
    q = std::clamp(q, 0.0, 1.0);
    switch (form_) {
        case Form::Identity: return q;
        case Form::Constant: return 1.0;
        case Form::Power: return std::pow(q, exponent_);
        case Form::Table: {
            const double scaled = q * static_cast<double>(knots_.size() - 1);
            const auto lo = std::min(static_cast<std::size_t>(scaled), knots_.size() - 2);
            const double frac = scaled - static_cast<double>(lo);
            return knots_[lo] + frac * (knots_[lo + 1] - knots_[lo]);
        }
    }
    return 0.0;
}

WeightMode parse_weight_mode(std::string_view name) {
    if (name == "point") return WeightMode::PointMass;
    if (name == "trapezoid") return WeightMode::Trapezoid;
    throw std::invalid_argument("unknown weight mode '" + std::string(name) + "' (expected point|trapezoid)");
}

std::vector<double> uniform_point_weights(std::size_t count) {
    return std::vector<double>(count, 1.0 / static_cast<double>(count));
}

double ifd(const FunctionalSample& sample, const PartialCurve& curve, UnivariateDepthKind kind,
           std::span<const double> weights) {
    const std::size_t count = sample.point_count();
    if (!sample.all_observed() || !curve.fully_observed()) {
        throw std::invalid_argument("ifd requires fully observed curves");
    }
    if (curve.size() != count || weights.size() != count) {
        throw std::invalid_argument("ifd: curve or weights do not match the grid");
    }
    double total_weight = 0.0;
    double integral = 0.0;
    for (std::size_t l = 0; l < count; ++l) {
        total_weight += weights[l];
        integral += univariate_depth(kind, sample.ecdf_at(l), curve.at(l)) * weights[l];
    }
    if (std::abs(total_weight - 1.0) > kWeightTolerance) {
        throw std::invalid_argument("ifd weights must sum to 1");
    }
    return integral;
}

std::vector<std::pair<std::size_t, double>> coverage_weights(const FunctionalSample& sample,
                                                             const PartialCurve& curve, const PhiFunction& phi,
                                                             WeightMode mode) {
    const std::size_t count = sample.point_count();
    if (curve.size() != count) {
        throw std::invalid_argument("curve length does not match grid size");
    }
    const auto trapezoid = sample.grid().trapezoid_weights();

    std::vector<std::pair<std::size_t, double>> weights;
    weights.reserve(curve.observed_count());
    double normalizer = 0.0;
    for (std::size_t l = 0; l < count; ++l) {
        if (!curve.observed(l) || sample.observed_at(l).empty()) {
            continue;
        }
        double w = phi(sample.coverage(l));
        if (mode == WeightMode::Trapezoid) {
            w *= trapezoid[l];
        }
        weights.emplace_back(l, w);
        normalizer += w;
    }
    if (!(normalizer > 0.0)) {
        throw std::domain_error("phi weights vanish on the curve's observed set");
    }
    for (auto& [l, w] : weights) {
        w /= normalizer;
    }
    return weights;
}

namespace {

double poifd_with_contributions(const FunctionalSample& sample, const PartialCurve& curve,
                                const DepthOptions& options, std::vector<PointContribution>* out) {
    const auto weights = coverage_weights(sample, curve, options.phi, options.weights);
    double value = 0.0;
    if (out) {
        out->clear();
        out->reserve(weights.size());
    }
    for (const auto& [l, w] : weights) {
        const double d = univariate_depth(options.kind, sample.ecdf_at(l), curve.at(l));
        value += d * w;
        if (out) {
            out->push_back({l, d, w});
        }
    }
    return value;
}

}  // namespace

double poifd_curve(const FunctionalSample& sample, const PartialCurve& curve, const DepthOptions& options) {
    return poifd_with_contributions(sample, curve, options, nullptr);
}

double poifd_sample(const FunctionalSample& sample, std::size_t curve_index, const DepthOptions& options) {
    return poifd_curve(sample, sample.curve(curve_index), options);
}

DepthResult poifd_all(const FunctionalSample& sample, const DepthOptions& options, unsigned threads) {
    DepthResult result;
    result.depth.resize(sample.size());
    result.contributions.resize(sample.size());
    parallel_for(
        sample.size(),
        [&](std::size_t i) {
            result.depth[i] = poifd_with_contributions(sample, sample.curve(i), options, &result.contributions[i]);
        },
        threads);
    return result;
}

double k_functional(const FunctionalSample& sample, const PartialCurve& curve, std::span<const double> weights) {
    const std::size_t count = sample.point_count();
    if (curve.size() != count || weights.size() != count) {
        throw std::invalid_argument("k_functional: curve or weights do not match the grid");
    }
    double value = 0.0;
    for (std::size_t l = 0; l < count; ++l) {
        if (weights[l] == 0.0) {
            continue;
        }
        value += sample.ecdf_at(l)(curve.at(l)) * weights[l];
    }
    return value;
}

double k_functional(const FunctionalSample& sample, const PartialCurve& curve, const PhiFunction& phi,
                    WeightMode mode) {
    double value = 0.0;
    for (const auto& [l, w] : coverage_weights(sample, curve, phi, mode)) {
        value += sample.ecdf_at(l)(curve.at(l)) * w;
    }
    return value;
}

namespace {

template <typename Integrand>
double population_integral(const Grid& grid, const PartialCurve& curve, const PopulationModel& population,
                           const PhiFunction& phi, WeightMode mode, Integrand&& integrand) {
    if (curve.size() != grid.size()) {
        throw std::invalid_argument("curve length does not match grid size");
    }
    const auto trapezoid = grid.trapezoid_weights();
    double numerator = 0.0;
    double normalizer = 0.0;
    for (std::size_t l = 0; l < grid.size(); ++l) {
        if (!curve.observed(l)) {
            continue;
        }
        double w = phi(population.coverage(l));
        if (mode == WeightMode::Trapezoid) {
            w *= trapezoid[l];
        }
        numerator += integrand(l, curve.at(l)) * w;
        normalizer += w;
    }
    if (!(normalizer > 0.0)) {
        throw std::domain_error("phi weights vanish on the curve's observed set");
    }
    return numerator / normalizer;
}

}  // namespace

double population_poifd(const Grid& grid, const PartialCurve& curve, const PopulationModel& population,
                        const DepthOptions& options) {
    return population_integral(grid, curve, population, options.phi, options.weights,
                               [&](std::size_t l, double x) {
                                   const double f = population.cdf(l, x);
                                   return depth_from_cdf(options.kind, f, f);
                               });
}

double population_k_functional(const Grid& grid, const PartialCurve& curve, const PopulationModel& population,
                               const PhiFunction& phi, WeightMode mode) {
    return population_integral(grid, curve, population, phi, mode,
                               [&](std::size_t l, double x) { return population.cdf(l, x); });
}

std::vector<ProbeRow> convergence_probe(const SampleFactory& factory, const PopulationModel& population,
                                        std::span<const PartialCurve> probes, std::span<const std::size_t> sizes,
                                        std::uint64_t seed, const DepthOptions& options) {
    std::vector<ProbeRow> rows;
    rows.reserve(sizes.size());
    for (std::size_t n : sizes) {
        const FunctionalSample sample = factory(n, derive_seed(seed, {n}));
        ProbeRow row;
        row.n = n;
        for (const auto& probe : probes) {
            const double sample_depth = poifd_curve(sample, probe, options);
            const double pop_depth = population_poifd(sample.grid(), probe, population, options);
            row.sup_poifd = std::max(row.sup_poifd, std::abs(sample_depth - pop_depth));

            const double sample_k = k_functional(sample, probe, options.phi, options.weights);
            const double pop_k = population_k_functional(sample.grid(), probe, population, options.phi, options.weights);
            row.sup_k = std::max(row.sup_k, std::abs(sample_k - pop_k));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace poifd
