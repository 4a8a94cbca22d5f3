#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "poifd/metrics.hpp"

using namespace poifd;

namespace {

LocationEstimate estimate_from(const Grid& g, const std::function<double(double)>& f,
                               const std::vector<bool>& defined) {
    LocationEstimate e;
    e.values.resize(g.size());
    e.defined = defined;
    e.fallback.assign(g.size(), false);
    for (std::size_t l = 0; l < g.size(); ++l) e.values[l] = defined[l] ? f(g[l]) : NAN;
    return e;
}

double truth(double t) { return 4.0 * t; }

}  // namespace

TEST_CASE("integrated error") {
    const Grid g = Grid::uniform(11);
    const std::vector<bool> all(11, true);

    const auto exact = integrated_error(estimate_from(g, truth, all), g, truth);
    CHECK(exact.ei == 0.0);
    CHECK(exact.points_used == 11);

    const auto shifted = integrated_error(estimate_from(g, [](double t) { return 4.0 * t + 0.5; }, all), g, truth);
    CHECK(shifted.ei == doctest::Approx(0.25).epsilon(1e-14));

    // Error counted only where the estimate exists.
    std::vector<bool> half(11, false);
    for (std::size_t l = 0; l < 6; ++l) half[l] = true;
    const auto partial =
        integrated_error(estimate_from(g, [](double t) { return t < 0.55 ? 4.0 * t + 2.0 : 0.0; }, half), g, truth);
    CHECK(partial.points_used == 6);
    CHECK(partial.ei == doctest::Approx(4.0));

    CHECK_THROWS_AS(integrated_error(estimate_from(g, truth, std::vector<bool>(11, false)), g, truth),
                    std::invalid_argument);
}

TEST_CASE("aggregate examples") {
    const std::vector<ReplicationError> two = {{0.0, 1}, {2.0, 1}};
    const auto m = aggregate(two);
    CHECK(m.e_mean == 1.0);
    CHECK(m.s_dev == 1.0);
    CHECK(m.m_median == 0.0);

    const std::vector<ReplicationError> one = {{3.5, 4}};
    const auto single = aggregate(one);
    CHECK(single.e_mean == 3.5);
    CHECK(single.s_dev == 0.0);
    CHECK(single.m_median == 3.5);

    const std::vector<ReplicationError> odd = {{5, 1}, {1, 1}, {3, 1}};
    CHECK(aggregate(odd).m_median == 3.0);

    CHECK_THROWS_AS(aggregate(std::vector<ReplicationError>{}), std::invalid_argument);
}

TEST_CASE("aggregate invariants") {
    std::mt19937_64 rng(5);
    std::exponential_distribution<double> draw(0.3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ReplicationError> errors(1 + trial % 25);
        for (auto& e : errors) e = {draw(rng), 1};
        const auto m = aggregate(errors);

        auto shuffled = errors;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto p = aggregate(shuffled);
        CHECK(p.e_mean == doctest::Approx(m.e_mean).epsilon(1e-12));
        CHECK(p.s_dev == doctest::Approx(m.s_dev).epsilon(1e-12));
        CHECK(p.m_median == m.m_median);

        auto scaled = errors;
        for (auto& e : scaled) e.ei *= 3.0;
        const auto s = aggregate(scaled);
        CHECK(s.e_mean == doctest::Approx(3.0 * m.e_mean).epsilon(1e-12));
        CHECK(s.s_dev == doctest::Approx(3.0 * m.s_dev).epsilon(1e-12));
        CHECK(s.m_median == doctest::Approx(3.0 * m.m_median).epsilon(1e-12));

        double lo = INFINITY, hi = -INFINITY;
        for (const auto& e : errors) {
            lo = std::min(lo, e.ei);
            hi = std::max(hi, e.ei);
        }
        CHECK(m.s_dev >= 0.0);
        CHECK(m.s_dev <= hi - lo + 1e-12);
        CHECK(m.m_median >= lo);
        CHECK(m.m_median <= hi);
        CHECK(m.e_mean >= lo - 1e-12);
        CHECK(m.e_mean <= hi + 1e-12);
    }
}
