#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "entclt/distributions.hpp"
#include "entclt/grid.hpp"
#include "entclt/quadrature.hpp"

using namespace entclt;

namespace {

constexpr int kIntervals = 2048;

GridDensity gaussian_grid() {
    return make_density(DistributionSpec::make_gaussian(), kIntervals);
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("builder produces a normalized odd-node grid") {
    const GridDensity g = gaussian_grid();
    CHECK(g.n_points() == kIntervals + 1);
    CHECK(g.n_points() % 2 == 1);
    CHECK(g.lo == doctest::Approx(-g.hi).epsilon(1e-12));
    CHECK(std::abs(trapezoid_mass(g) - 1.0) < 1e-12);
    CHECK(g.tail_mass < 1e-8);
    // A node sits exactly at the symmetry center.
    const int mid = (g.n_points() - 1) / 2;
    CHECK(std::abs(g.node(mid)) < 1e-12);
}

TEST_CASE("gaussian grid moments match the law") {
    const GridDensity g = gaussian_grid();
    const MomentSummary m = moments(g);
    CHECK(std::abs(m.mean) < 1e-10);
    CHECK(std::abs(m.variance - 1.0) < 1e-8);
    // Fourth moment of the standard normal is 3.
    std::vector<double> y(g.values.size());
    for (int i = 0; i < g.n_points(); ++i) {
        const double x = g.node(i);
        y[i] = x * x * x * x * g.values[i];
    }
    CHECK(std::abs(trapezoid(y, g.spacing()) - 3.0) < 1e-6);
}

TEST_CASE("normalize is idempotent") {
    const GridDensity g = gaussian_grid();
    const GridDensity h = normalize(g);
    CHECK(sup_diff(g.values, h.values) < 1e-14);
}

TEST_CASE("normalize rejects nonpositive mass") {
    GridDensity g;
    g.lo = -1.0;
    g.hi = 1.0;
    g.values.assign(9, 0.0);
    CHECK_THROWS_AS(normalize(g), std::domain_error);
    g.values.assign(1, 1.0);
    CHECK_THROWS_AS(normalize(g), std::invalid_argument);
}

TEST_CASE("scale is exact on nodes and moments") {
    const GridDensity g = gaussian_grid();
    for (double a : {0.5, 2.0, -1.3}) {
        CAPTURE(a);
        const GridDensity s = scale(g, a);
        CHECK(std::abs(trapezoid_mass(s) - 1.0) < 1e-12);
        const MomentSummary m = moments(s);
        CHECK(std::abs(m.mean) < 1e-9);
        CHECK(std::abs(m.variance - a * a) < 1e-7 * a * a);
    }
    CHECK_THROWS_AS(scale(g, 0.0), std::invalid_argument);
}

TEST_CASE("scale round trip restores the grid exactly") {
    const GridDensity g = gaussian_grid();
    for (double a : {0.5, 2.0}) {
        CAPTURE(a);
        const GridDensity back = scale(scale(g, a), 1.0 / a);
        CHECK(std::abs(back.lo - g.lo) < 1e-12);
        CHECK(std::abs(back.hi - g.hi) < 1e-12);
        CHECK(sup_diff(back.values, g.values) < 1e-12);
    }
}

TEST_CASE("shift moves the mean exactly") {
    const GridDensity g = gaussian_grid();
    const GridDensity s = shift(g, 0.7);
    const MomentSummary m = moments(s);
    CHECK(std::abs(m.mean - 0.7) < 1e-9);
    CHECK(std::abs(m.variance - 1.0) < 1e-8);
}

TEST_CASE("standardize recovers mean zero variance one") {
    const GridDensity g = gaussian_grid();
    const GridDensity warped = shift(scale(g, 1.7), 0.3);
    const GridDensity s = standardize(warped);
    const MomentSummary m = moments(s);
    CHECK(std::abs(m.mean) < 1e-7);
    CHECK(std::abs(m.variance - 1.0) < 1e-6);
    CHECK(std::abs(trapezoid_mass(s) - 1.0) < 1e-12);
}

TEST_CASE("standardize_affine is exact") {
    const GridDensity g = gaussian_grid();
    const GridDensity warped = shift(scale(g, 1.7), 0.3);
    const GridDensity s = standardize_affine(warped);
    const MomentSummary m = moments(s);
    CHECK(std::abs(m.mean) < 1e-12);
    CHECK(std::abs(m.variance - 1.0) < 1e-10);
}

TEST_CASE("identity resample reproduces the grid") {
    const GridDensity g = gaussian_grid();
    const GridDensity r = resample(g, g.lo, g.hi, g.n_points());
    CHECK(sup_diff(r.values, g.values) < 1e-12);
}

TEST_CASE("resample outside the source support gives zero density") {
    const GridDensity g = gaussian_grid();
    const GridDensity r = resample(g, g.lo - 10.0, g.hi + 10.0, g.n_points());
    CHECK(r.values.front() == 0.0);
    CHECK(r.values.back() == 0.0);
    CHECK(std::abs(trapezoid_mass(r) - 1.0) < 1e-12);
    CHECK_THROWS_AS(resample(g, 0.0, 0.0, 65), std::invalid_argument);
    CHECK_THROWS_AS(resample(g, g.lo, g.hi, 1), std::invalid_argument);
}

TEST_CASE("resample_trimmed drops far tails only") {
    const GridDensity g = gaussian_grid();
    const GridDensity r = resample_trimmed(g, 1024, 1e-6);
    CHECK(r.n_points() == 1025);
    CHECK(r.hi < g.hi);
    const MomentSummary m = moments(r);
    CHECK(std::abs(m.variance - 1.0) < 1e-3);
}

TEST_CASE("build_from_pdf rejects invalid tabulations") {
    CHECK_THROWS_AS(
        build_from_pdf([](double) { return std::numeric_limits<double>::quiet_NaN(); },
                       0.0, 1.0, kIntervals),
        std::domain_error);
    CHECK_THROWS_AS(build_from_pdf([](double) { return 0.0; }, 0.0, 1.0, kIntervals),
                    std::domain_error);
    CHECK_THROWS_AS(build_from_pdf([](double x) { return std::exp(-x * x); }, 0.0,
                                   -1.0, kIntervals),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_from_pdf([](double x) { return std::exp(-x * x); }, 0.0,
                                   1.0, 32),
                    std::invalid_argument);
}

TEST_CASE("product_of keeps coordinates and rejects empties") {
    const GridDensity g = gaussian_grid();
    const ProductMeasure m = product_of({g, scale(g, 1.0)});
    CHECK(m.dimension() == 2);
    CHECK_THROWS_AS(product_of({}), std::invalid_argument);
}
