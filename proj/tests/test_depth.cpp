#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "poifd/depth.hpp"
#include "poifd/rng.hpp"

using namespace poifd;

namespace {

const auto kAllKinds = {UnivariateDepthKind::Tukey, UnivariateDepthKind::Simplicial,
                        UnivariateDepthKind::FraimanMuniz};

FunctionalSample constant_curves(const Grid& grid, const std::vector<double>& levels) {
    std::vector<PartialCurve> curves;
    for (double v : levels) curves.push_back(PartialCurve::fully_observed(std::vector<double>(grid.size(), v)));
    return FunctionalSample(grid, std::move(curves));
}

FunctionalSample random_sample(std::mt19937_64& rng, std::size_t n, std::size_t count, double observe_prob) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::bernoulli_distribution keep(observe_prob);
    std::uniform_int_distribution<std::size_t> pick(0, count - 1);
    std::vector<PartialCurve> curves;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> values(count);
        std::vector<bool> mask(count);
        for (std::size_t l = 0; l < count; ++l) {
            values[l] = std::round(normal(rng) * 4.0) / 4.0;
            mask[l] = keep(rng);
        }
        mask[pick(rng)] = true;
        curves.emplace_back(std::move(values), std::move(mask));
    }
    return FunctionalSample(Grid::uniform(count), std::move(curves));
}

oracle::Rational oracle_depth(UnivariateDepthKind kind, const std::vector<double>& column, double x) {
    switch (kind) {
        case UnivariateDepthKind::Tukey: return oracle::tukey(column, x);
        case UnivariateDepthKind::Simplicial: return oracle::simplicial(column, x);
        default: return oracle::fraiman_muniz(column, x);
    }
}

// POIFD straight from the grid formula, using linear-scan counts and
// phi(q) = q.
double brute_force_poifd(const FunctionalSample& s, std::size_t index, UnivariateDepthKind kind) {
    const auto& c = s.curve(index);
    double numerator = 0.0;
    double denominator = 0.0;
    for (std::size_t l = 0; l < s.point_count(); ++l) {
        if (!c.observed(l)) continue;
        std::vector<double> column;
        for (const auto& other : s.curves()) {
            if (other.observed(l)) column.push_back(other.at(l));
        }
        const double phi = static_cast<double>(column.size()) / static_cast<double>(s.size());
        numerator += oracle_depth(kind, column, c.at(l)).value() * phi;
        denominator += phi;
    }
    return numerator / denominator;
}

}  // namespace

TEST_CASE("phi functions") {
    CHECK(PhiFunction::identity()(0.3) == 0.3);
    CHECK(PhiFunction::constant()(0.3) == 1.0);
    CHECK(PhiFunction::parse("square")(0.5) == doctest::Approx(0.25));
    CHECK(PhiFunction::parse("sqrt")(0.25) == doctest::Approx(0.5));
    CHECK(PhiFunction::parse("power:3")(0.5) == doctest::Approx(0.125));
    const auto table = PhiFunction::parse("table:0,1,0.5");
    CHECK(table(0.0) == 0.0);
    CHECK(table(0.25) == doctest::Approx(0.5));
    CHECK(table(0.5) == doctest::Approx(1.0));
    CHECK(table(1.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(PhiFunction::parse("table:1"), std::invalid_argument);
    CHECK_THROWS_AS(PhiFunction::parse("table:1,-1"), std::invalid_argument);
    CHECK_THROWS_AS(PhiFunction::parse("cubic"), std::invalid_argument);
}

TEST_CASE("ifd examples") {
    SUBCASE("constant depth field integrates to that depth") {
        // Identical curves: every point has the same depth under FM (F = 1).
        const Grid g = Grid::uniform(5);
        const auto s = constant_curves(g, {2.0, 2.0, 2.0});
        std::vector<double> w = {0.1, 0.4, 0.2, 0.2, 0.1};
        CHECK(ifd(s, s.curve(0), UnivariateDepthKind::FraimanMuniz, w) == doctest::Approx(0.5));
    }
    SUBCASE("two-point grid averages") {
        const Grid g = Grid::uniform(2);
        const FunctionalSample s(g, {PartialCurve::fully_observed({1.0, 3.0}), PartialCurve::fully_observed({2.0, 1.0}),
                                     PartialCurve::fully_observed({3.0, 2.0})});
        // Curve 0: depths FM(1/3) = 5/6 and FM(1) = 1/2.
        CHECK(ifd(s, s.curve(0), UnivariateDepthKind::FraimanMuniz, uniform_point_weights(2)) ==
              doctest::Approx((5.0 / 6.0 + 0.5) / 2.0));
    }
    SUBCASE("three constant curves") {
        const auto s = constant_curves(Grid::uniform(3), {1.0, 2.0, 3.0});
        CHECK(ifd(s, s.curve(1), UnivariateDepthKind::FraimanMuniz, uniform_point_weights(3)) ==
              doctest::Approx(5.0 / 6.0));
    }
    SUBCASE("errors") {
        const Grid g = Grid::uniform(2);
        const FunctionalSample partial(g, {PartialCurve({1.0, 2.0}, {true, false})});
        CHECK_THROWS_AS(ifd(partial, partial.curve(0), UnivariateDepthKind::Tukey, uniform_point_weights(2)),
                        std::invalid_argument);
        const auto s = constant_curves(g, {1.0});
        CHECK_THROWS_AS(ifd(s, s.curve(0), UnivariateDepthKind::Tukey, std::vector<double>{0.5, 0.2}),
                        std::invalid_argument);
    }
}

TEST_CASE("poifd examples") {
    const Grid g = Grid::uniform(3);
    const auto s = constant_curves(g, {1.0, 2.0, 3.0});
    CHECK(poifd_sample(s, 1) == doctest::Approx(5.0 / 6.0));

    for (auto kind : kAllKinds) {
        const auto result = poifd_all(s, {kind});
        CHECK(result.depth[1] > result.depth[2]);
        // 1 - |1/2 - F| is not symmetric in the ranks: the minimum (F = 1/3)
        // ties with the median here.
        if (kind == UnivariateDepthKind::FraimanMuniz) CHECK(result.depth[1] == result.depth[0]);
        else CHECK(result.depth[1] > result.depth[0]);
    }

    SUBCASE("single observed point reduces to the pointwise depth") {
        const FunctionalSample p(g, {PartialCurve({0.0, 5.0, 0.0}, {false, true, false}), PartialCurve::fully_observed({1, 1, 1}),
                                     PartialCurve::fully_observed({2, 7, 2})});
        for (auto kind : kAllKinds) {
            CHECK(poifd_sample(p, 0, {kind, PhiFunction::parse("square")}) ==
                  univariate_depth(kind, p.ecdf_at(1), 5.0));
        }
    }

    SUBCASE("identical curves share one depth") {
        const auto same = constant_curves(g, {4.0, 4.0, 4.0, 4.0});
        const auto r = poifd_all(same);
        for (double d : r.depth) CHECK(d == r.depth[0]);
    }

    SUBCASE("degenerate phi") {
        const FunctionalSample p(g, {PartialCurve({0.0, 5.0, 0.0}, {false, true, false}),
                                     PartialCurve({1.0, 1.0, 1.0}, {true, false, false})});
        // Coverage is 1/2 everywhere it is positive; this table vanishes there.
        const auto phi = PhiFunction::table({1.0, 0.0, 1.0});
        CHECK_THROWS_AS(poifd_sample(p, 0, {UnivariateDepthKind::Tukey, phi}), std::domain_error);
    }
}

TEST_CASE("poifd matches the grid formula oracle") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const auto s = random_sample(rng, 2 + trial % 9, 3 + trial % 7, 0.6);
        for (auto kind : kAllKinds) {
            const auto r = poifd_all(s, {kind});
            for (std::size_t i = 0; i < s.size(); ++i) {
                CHECK(std::abs(r.depth[i] - brute_force_poifd(s, i, kind)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("depth result invariants") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const auto s = random_sample(rng, 3 + trial % 12, 4 + trial % 20, 0.5);
        for (auto kind : kAllKinds) {
            for (auto mode : {WeightMode::PointMass, WeightMode::Trapezoid}) {
                const DepthOptions options{kind, PhiFunction::identity(), mode};
                const auto r = poifd_all(s, options);
                for (std::size_t i = 0; i < s.size(); ++i) {
                    CHECK(r.depth[i] >= 0.0);
                    CHECK(r.depth[i] <= (kind == UnivariateDepthKind::Simplicial ? 2.0 : 1.0));
                    double weight_sum = 0.0;
                    double rebuilt = 0.0;
                    for (const auto& c : r.contributions[i]) {
                        CHECK(s.curve(i).observed(c.point));
                        weight_sum += c.weight;
                        rebuilt += c.weight * c.depth;
                    }
                    CHECK(std::abs(weight_sum - 1.0) <= 1e-12);
                    CHECK(std::abs(rebuilt - r.depth[i]) <= 1e-12);
                    CHECK(r.contributions[i].size() == s.curve(i).observed_count());
                }
            }
        }
    }
}

TEST_CASE("monotone transform and permutation") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const auto s = random_sample(rng, 3 + trial % 10, 5 + trial % 6, 0.7);
        std::vector<PartialCurve> mapped;
        std::vector<std::size_t> perm(s.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<PartialCurve> permuted;
        for (const auto& c : s.curves()) {
            std::vector<double> v(c.raw_values().begin(), c.raw_values().end());
            for (double& x : v) x = std::isnan(x) ? x : std::atan(x) * 3.0 + 1.0;
            mapped.emplace_back(std::move(v), c.mask());
        }
        for (std::size_t k : perm) permuted.push_back(s.curve(k));
        const FunctionalSample ms(s.grid(), mapped);
        const FunctionalSample ps(s.grid(), permuted);

        for (auto kind : kAllKinds) {
            const auto base = poifd_all(s, {kind});
            const auto moved = poifd_all(ms, {kind});
            const auto shuffled = poifd_all(ps, {kind});
            for (std::size_t i = 0; i < s.size(); ++i) {
                CHECK(moved.depth[i] == base.depth[i]);
                CHECK(shuffled.depth[i] == base.depth[perm[i]]);
            }
        }
    }
}

TEST_CASE("full observation reduces to ifd for any phi") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_sample(rng, 2 + trial % 15, 2 + trial % 30, 1.0);
        REQUIRE(s.all_observed());
        for (const char* phi : {"identity", "constant", "square", "table:0.2,3,1"}) {
            for (auto kind : kAllKinds) {
                const auto uniform = uniform_point_weights(s.point_count());
                for (std::size_t i = 0; i < s.size(); ++i) {
                    const double a = poifd_sample(s, i, {kind, PhiFunction::parse(phi)});
                    const double b = ifd(s, s.curve(i), kind, uniform);
                    CHECK(std::abs(a - b) <= 1e-12);
                    const double trap =
                        poifd_sample(s, i, {kind, PhiFunction::parse(phi), WeightMode::Trapezoid});
                    CHECK(std::abs(trap - ifd(s, s.curve(i), kind, s.grid().trapezoid_weights())) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("k functional") {
    const Grid g = Grid::uniform(3);
    const auto s = constant_curves(g, {1.0, 2.0, 3.0});
    const auto uniform = uniform_point_weights(3);
    CHECK(k_functional(s, PartialCurve::fully_observed({9, 9, 9}), uniform) == doctest::Approx(1.0));
    CHECK(k_functional(s, PartialCurve::fully_observed({0, 0, 0}), uniform) == 0.0);
    CHECK(k_functional(s, s.curve(1), uniform) == doctest::Approx(2.0 / 3.0));
    CHECK(k_functional(s, s.curve(1), PhiFunction::identity()) == doctest::Approx(2.0 / 3.0));
    CHECK(k_functional(s, PartialCurve({9, 0, 9}, {true, false, true}), PhiFunction::identity()) ==
          doctest::Approx(1.0));
}

TEST_CASE("external curves and coverage gaps") {
    const Grid g = Grid::uniform(3);
    const FunctionalSample s(g, {PartialCurve({1, 1, 0}, {true, true, false}), PartialCurve({2, 2, 0}, {true, true, false})});
    // The probe is observed where the sample is not; that point carries no
    // information and is skipped.
    const PartialCurve probe({1.5, 1.5, 7.0}, {true, true, true});
    CHECK(poifd_curve(s, probe, {UnivariateDepthKind::Tukey}) == doctest::Approx(0.5));
    const PartialCurve lonely({0, 0, 7.0}, {false, false, true});
    CHECK_THROWS_AS(poifd_curve(s, lonely), std::domain_error);
}

TEST_CASE("population poifd and probe plumbing") {
    const Grid g = Grid::uniform(11);
    PopulationModel pop;
    pop.cdf = [&](std::size_t l, double x) { return oracle::normal_cdf(x - 4.0 * g[l]); };
    pop.coverage = [](std::size_t) { return 1.0; };
    std::vector<double> trend(11);
    for (std::size_t l = 0; l < 11; ++l) trend[l] = 4.0 * g[l];
    const auto median_curve = PartialCurve::fully_observed(trend);
    CHECK(population_poifd(g, median_curve, pop) == doctest::Approx(1.0));
    CHECK(population_poifd(g, median_curve, pop, {UnivariateDepthKind::Tukey}) == doctest::Approx(0.5));
    CHECK(population_k_functional(g, median_curve, pop, PhiFunction::identity()) == doctest::Approx(0.5));

    // n = 1 with the probe equal to the only sample curve: bounded by the depth range.
    SampleFactory factory = [&](std::size_t n, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<PartialCurve> curves;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> v(trend);
            for (double& x : v) x += normal(rng);
            curves.push_back(PartialCurve::fully_observed(v));
        }
        return FunctionalSample(g, std::move(curves));
    };
    const std::vector<std::size_t> sizes = {1};
    const auto one = factory(1, derive_seed(3, {1}));
    const std::vector<PartialCurve> probes = {one.curve(0)};
    const auto rows = convergence_probe(factory, pop, probes, sizes, 3);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].sup_poifd <= 1.0);
    CHECK(rows[0].sup_k <= 1.0);
}
