#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "entclt/distributions.hpp"
#include "entclt/functionals.hpp"
#include "entclt/grid.hpp"

using namespace entclt;

namespace {

constexpr int kIntervals = 2048;
constexpr double kGaussEntropy = 1.4189385332046727;  // (1/2) log(2 pi e)
constexpr double kUniformEntropy = 1.2424533248940002;  // log(2 sqrt 3)

GridDensity density(const DistributionSpec& sp) { return make_density(sp, kIntervals); }

std::vector<DistributionSpec> smooth_corpus() {
    return {
        DistributionSpec::make_gaussian(),
        DistributionSpec::make_generalized_gaussian(3.0),
        DistributionSpec::make_generalized_gaussian(4.0),
        DistributionSpec::make_student_t(6.0),
    };
}

}  // namespace

TEST_CASE("gaussian score is minus the identity") {
    const GridDensity g = density(DistributionSpec::make_gaussian());
    const ScoreField s = score(g);
    REQUIRE(s.n_points() == g.n_points());
    // log p is quadratic, so the stencils are exact up to rounding wherever
    // the neighboring densities stay above the clamping floor; restrict to
    // the bulk (the floored far tail carries no quadrature weight).
    const double bulk = 1e-6 * g.max_value();
    double worst = 0.0;
    for (int i = 0; i < s.n_points(); ++i) {
        if (!s.valid[i] || g.values[i] < bulk) continue;
        const double x = g.node(i);
        worst = std::max(worst, std::abs(s.scores[i] + x));
    }
    CHECK(worst < 1e-7);
}

TEST_CASE("score requires a minimally resolved grid") {
    GridDensity g;
    g.lo = -1.0;
    g.hi = 1.0;
    g.values.assign(7, 0.5);
    CHECK_THROWS_AS(score(g), std::invalid_argument);
}

TEST_CASE("gaussian information functionals vanish correctly") {
    const GridDensity g = density(DistributionSpec::make_gaussian());
    CHECK(fisher_information(g) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(relative_fisher(g)) < 1e-9);
    CHECK(differential_entropy(g) == doctest::Approx(kGaussEntropy).epsilon(1e-10));
    CHECK(std::abs(relative_entropy_to_gaussian(g)) < 1e-10);
    CHECK(relative_entropy_to_gaussian(g) >= 0.0);
}

TEST_CASE("uniform entropy matches the logarithmic width") {
    const GridDensity u = density(DistributionSpec::make_uniform_sqrt3());
    CHECK(differential_entropy(u) == doctest::Approx(kUniformEntropy).epsilon(1e-3));
}

TEST_CASE("relative entropy routes agree") {
    for (const DistributionSpec& sp : smooth_corpus()) {
        CAPTURE(sp.name());
        const GridDensity g = density(sp);
        const double cross = relative_entropy_to_gaussian(g);
        const double direct = relative_entropy_direct(g);
        CHECK(std::abs(cross - direct) < 1e-6);
        CHECK(cross >= 0.0);
    }
}

TEST_CASE("grid relative fisher matches the closed forms") {
    for (double beta : {1.5, 3.0, 4.0}) {
        CAPTURE(beta);
        const double want = closed_form_j_beta(beta);
        const double got =
            relative_fisher(density(DistributionSpec::make_generalized_gaussian(beta)));
        CHECK(std::abs(got - want) <= 2e-4 * want);
    }
    CHECK(std::abs(relative_fisher(
              density(DistributionSpec::make_generalized_gaussian(2.0)))) < 1e-8);
    for (double theta : {5.0, 10.0}) {
        CAPTURE(theta);
        const double want = closed_form_j_theta(theta);
        const double got =
            relative_fisher(density(DistributionSpec::make_student_t(theta)));
        CHECK(std::abs(got - want) <= 5e-4 * want);
    }
}

TEST_CASE("score moment identities hold on the corpus") {
    for (const DistributionSpec& sp : smooth_corpus()) {
        CAPTURE(sp.name());
        const auto [m0, m1] = score_moments(density(sp));
        CHECK(std::abs(m0) < 1e-4);
        CHECK(std::abs(m1 + 1.0) < 1e-4);
    }
}

TEST_CASE("relative fisher is affine invariant") {
    const GridDensity q3 = density(DistributionSpec::make_generalized_gaussian(3.0));
    const double base = relative_fisher(q3);
    for (auto [a, b] : {std::pair{2.0, 0.0}, std::pair{0.5, 1.0}}) {
        CAPTURE(a);
        CAPTURE(b);
        const double warped = relative_fisher(shift(scale(q3, a), b));
        CHECK(std::abs(warped - base) < 1e-4);
    }
}

TEST_CASE("entropy is dominated by half the relative fisher information") {
    for (const DistributionSpec& sp : smooth_corpus()) {
        CAPTURE(sp.name());
        const GridDensity g = density(sp);
        const double ent = relative_entropy_to_gaussian(g);
        const double j = relative_fisher(g);
        CHECK(ent <= 0.5 * j + 1e-6);
    }
}

TEST_CASE("profile bundles the individual functionals") {
    const GridDensity g = density(DistributionSpec::make_generalized_gaussian(4.0));
    const InfoProfile p = profile(g);
    CHECK(p.mean == doctest::Approx(moments(g).mean).epsilon(1e-12));
    CHECK(p.variance == doctest::Approx(moments(g).variance).epsilon(1e-12));
    CHECK(p.diff_entropy == doctest::Approx(differential_entropy(g)).epsilon(1e-12));
    CHECK(p.rel_entropy ==
          doctest::Approx(relative_entropy_to_gaussian(g)).epsilon(1e-12));
    CHECK(p.fisher == doctest::Approx(fisher_information(g)).epsilon(1e-12));
    CHECK(p.rel_fisher == doctest::Approx(relative_fisher(g)).epsilon(1e-12));
    CHECK(p.n_points == g.n_points());
    CHECK(p.lo == g.lo);
    CHECK(p.hi == g.hi);
}

TEST_CASE("product profile adds information across coordinates") {
    const GridDensity q3 = density(DistributionSpec::make_generalized_gaussian(3.0));
    const InfoProfile one = profile(q3);
    const InfoProfile three = product_profile(product_of({q3, q3, q3}));
    CHECK(three.rel_entropy == doctest::Approx(3.0 * one.rel_entropy).epsilon(1e-12));
    CHECK(three.rel_fisher == doctest::Approx(3.0 * one.rel_fisher).epsilon(1e-12));
    CHECK(three.fisher == doctest::Approx(3.0 * one.fisher).epsilon(1e-12));
    CHECK(three.diff_entropy ==
          doctest::Approx(3.0 * one.diff_entropy).epsilon(1e-12));
    // Mean and variance are reported per coordinate.
    CHECK(three.variance == doctest::Approx(one.variance).epsilon(1e-12));
    CHECK_THROWS_AS(product_profile(ProductMeasure{}), std::invalid_argument);
}
