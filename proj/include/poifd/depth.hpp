#pragma once

// Integrated functional depths: IFD for fully observed curves and the
// partially observed integrated functional depth (POIFD) on a grid, where each
// observed point is weighted by phi(q_n(t)) and weights are normalized over the
// curve's own observed set.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "poifd/core.hpp"
#include "poifd/univariate_depth.hpp"

namespace poifd {

/// Bounded nonnegative map applied to the coverage q in [0, 1].
class PhiFunction {
public:
    static PhiFunction identity();
    static PhiFunction constant();
    static PhiFunction power(double exponent);
    /// Piecewise linear through values at equispaced knots 0, 1/(k-1), ..., 1.
    static PhiFunction table(std::vector<double> knot_values);

    /// Accepts `identity`, `constant`, `square`, `sqrt`, `power:<a>` and
    /// `table:<v0>,<v1>,...`.
    static PhiFunction parse(std::string_view spec);

    double operator()(double q) const;
    const std::string& name() const noexcept { return name_; }

private:
    enum class Form { Identity, Constant, Power, Table };
    PhiFunction(Form form, std::string name) : form_(form), name_(std::move(name)) {}

    Form form_;
    std::string name_;
    double exponent_ = 1.0;
    std::vector<double> knots_;
};

/// How observed points are weighted before the phi factor.
enum class WeightMode {
    PointMass,  // plain sum over observed grid points
    Trapezoid,  // trapezoid weights restricted to the observed set
};

WeightMode parse_weight_mode(std::string_view name);

struct DepthOptions {
    UnivariateDepthKind kind = UnivariateDepthKind::FraimanMuniz;
    PhiFunction phi = PhiFunction::identity();
    WeightMode weights = WeightMode::PointMass;
};

struct PointContribution {
    std::size_t point;
    double depth;   // D(x(t), P_{t,n})
    double weight;  // normalized over the curve's observed points
};

struct DepthResult {
    std::vector<double> depth;
    std::vector<std::vector<PointContribution>> contributions;

    std::size_t size() const noexcept { return depth.size(); }
};

/// Uniform weights 1/T over a grid of T points.
std::vector<double> uniform_point_weights(std::size_t count);

/// Integrated functional depth of a fully observed curve against a fully
/// observed sample: sum_l D(x(t_l), P_{t_l,n}) w_l. `weights` has one entry per
/// grid point and must sum to 1.
double ifd(const FunctionalSample& sample, const PartialCurve& curve, UnivariateDepthKind kind,
           std::span<const double> weights);

/// Normalized per-point weights phi(q_n(t)) over the curve's observed points.
/// Points where the sample has no observation are skipped. Throws
/// std::domain_error when the normalizer vanishes.
std::vector<std::pair<std::size_t, double>> coverage_weights(const FunctionalSample& sample,
                                                             const PartialCurve& curve, const PhiFunction& phi,
                                                             WeightMode mode);

/// POIFD of an arbitrary curve on the sample grid.
double poifd_curve(const FunctionalSample& sample, const PartialCurve& curve, const DepthOptions& options = {});

/// POIFD of sample member `curve_index` (its own values are part of P_{t,n}).
double poifd_sample(const FunctionalSample& sample, std::size_t curve_index, const DepthOptions& options = {});

/// POIFD of every sample curve, with per-point contributions. Parallel over
/// curves.
DepthResult poifd_all(const FunctionalSample& sample, const DepthOptions& options = {}, unsigned threads = 0);

/// K_n(x) = sum_l F_{n,t_l}(x(t_l)) w_l with fixed weights over the whole grid.
double k_functional(const FunctionalSample& sample, const PartialCurve& curve, std::span<const double> weights);

/// K_n(x) with the coverage weights phi(q_n) restricted to the curve's
/// observed set.
double k_functional(const FunctionalSample& sample, const PartialCurve& curve, const PhiFunction& phi,
                    WeightMode mode = WeightMode::PointMass);

/// Population side of a convergence check: analytic marginal CDFs F_t and the
/// coverage probabilities Q(t) at each grid point.
struct PopulationModel {
    std::function<double(std::size_t point, double x)> cdf;
    std::function<double(std::size_t point)> coverage;
};

double population_poifd(const Grid& grid, const PartialCurve& curve, const PopulationModel& population,
                        const DepthOptions& options = {});
double population_k_functional(const Grid& grid, const PartialCurve& curve, const PopulationModel& population,
                               const PhiFunction& phi, WeightMode mode = WeightMode::PointMass);

struct ProbeRow {
    std::size_t n = 0;
    double sup_poifd = 0.0;  // max over probes of |POIFD_n - POIFD|
    double sup_k = 0.0;      // max over probes of |K_n - K|
};

using SampleFactory = std::function<FunctionalSample(std::size_t n, std::uint64_t seed)>;

/// For each n, draws one sample from `factory` and reports the largest
/// discrepancy between sample and population functionals over the probes.
std::vector<ProbeRow> convergence_probe(const SampleFactory& factory, const PopulationModel& population,
                                        std::span<const PartialCurve> probes, std::span<const std::size_t> sizes,
                                        std::uint64_t seed, const DepthOptions& options = {});

}  // namespace poifd
