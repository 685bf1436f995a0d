#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "entclt/distributions.hpp"
#include "entclt/grid.hpp"
#include "entclt/special.hpp"

using namespace entclt;

namespace {

constexpr int kIntervals = 2048;

// Frozen independently of the library (half-integer product formula and
// 128-step bisection on std::erf).
constexpr double kGammaThreeHalfPlusTwo = 3.3233509704478421;  // Gamma(3.5)
constexpr double kSqrtPi = 1.7724538509055159;                 // Gamma(0.5)
constexpr double kNormalQuantile975 = 1.9599639845400536;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

}  // namespace

TEST_CASE("gamma function matches frozen values") {
    CHECK(gamma_fn(3.5) == doctest::Approx(kGammaThreeHalfPlusTwo).epsilon(1e-13));
    CHECK(gamma_fn(0.5) == doctest::Approx(kSqrtPi).epsilon(1e-13));
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(6.0) == doctest::Approx(120.0).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-2.5), std::domain_error);
}

TEST_CASE("gamma recurrence holds across the working range") {
    for (double x : {0.25, 1.7, 6.3, 11.0}) {
        CAPTURE(x);
        const double lhs = gamma_fn(x + 1.0);
        const double rhs = x * gamma_fn(x);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("log gamma agrees with gamma and stays finite when gamma overflows") {
    for (double x : {0.3, 1.0, 4.5, 20.0}) {
        CAPTURE(x);
        CHECK(lgamma_fn(x) == doctest::Approx(std::log(gamma_fn(x))).epsilon(1e-12));
    }
    // Recurrence in log form at an argument where gamma itself overflows.
    const double x = 300.0;
    CHECK(lgamma_fn(x + 1.0) == doctest::Approx(lgamma_fn(x) + std::log(x)).epsilon(1e-13));
    CHECK(std::isfinite(lgamma_fn(500.0)));
}

TEST_CASE("normal cdf and pdf match frozen anchors") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(normal_cdf(kNormalQuantile975) == doctest::Approx(0.975).epsilon(1e-12));
    CHECK(normal_pdf(0.0) == doctest::Approx(kInvSqrt2Pi).epsilon(1e-14));
    for (double x : {0.3, 1.0, 2.5}) {
        CAPTURE(x);
        CHECK(normal_cdf(x) + normal_cdf(-x) == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("family factories validate their parameters") {
    CHECK_THROWS_AS(DistributionSpec::make_generalized_gaussian(1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(DistributionSpec::make_generalized_gaussian(0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(DistributionSpec::make_student_t(2.0), std::invalid_argument);
    CHECK_THROWS_AS(DistributionSpec::make_gaussian_mixture({0.5}, {0.0, 1.0}, {1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        DistributionSpec::make_gaussian_mixture({-0.5, 1.5}, {0.0, 1.0}, {1.0, 1.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        DistributionSpec::make_gaussian_mixture({0.5, 0.5}, {0.0, 1.0}, {1.0, 0.0}),
        std::invalid_argument);
}

TEST_CASE("shape two recovers the gaussian") {
    const DistributionSpec q2 = DistributionSpec::make_generalized_gaussian(2.0);
    CHECK(q2.b_beta == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(q2.c_beta == doctest::Approx(kInvSqrt2Pi).epsilon(1e-12));
    const DistributionSpec g = DistributionSpec::make_gaussian();
    for (double x : {0.0, 0.7, -1.9, 3.2}) {
        CAPTURE(x);
        CHECK(q2.pdf(x) == doctest::Approx(g.pdf(x)).epsilon(1e-12));
    }
}

TEST_CASE("student t center value matches the normalizing constant") {
    const DistributionSpec t6 = DistributionSpec::make_student_t(6.0);
    CHECK(t6.pdf(0.0) == doctest::Approx(0.46875).epsilon(1e-12));  // 15/32
    CHECK(t6.c_theta == doctest::Approx(0.46875).epsilon(1e-12));
    CHECK(t6.has_score());
}

TEST_CASE("tabulated families carry unit variance") {
    const std::vector<DistributionSpec> specs = {
        DistributionSpec::make_gaussian(),
        DistributionSpec::make_generalized_gaussian(3.0),
        DistributionSpec::make_generalized_gaussian(1.5),
        DistributionSpec::make_student_t(6.0),
        DistributionSpec::make_gaussian_mixture({0.6, 0.4}, {-0.8, 1.2}, {0.9, 0.7}),
    };
    for (const DistributionSpec& sp : specs) {
        CAPTURE(sp.name());
        const GridDensity g = make_density(sp, kIntervals);
        const MomentSummary m = moments(g);
        CHECK(std::abs(m.mean) < 1e-6);
        CHECK(std::abs(m.variance - 1.0) < 1e-6);
    }
}

TEST_CASE("uniform law is flat with the right half width") {
    const DistributionSpec u = DistributionSpec::make_uniform_sqrt3();
    CHECK_FALSE(u.has_score());
    const double s3 = std::sqrt(3.0);
    CHECK(u.pdf(0.0) == doctest::Approx(1.0 / (2.0 * s3)).epsilon(1e-12));
    CHECK(u.pdf(0.99 * s3) == doctest::Approx(1.0 / (2.0 * s3)).epsilon(1e-12));
    CHECK(u.pdf(1.01 * s3) == 0.0);
    const GridDensity g = make_density(u, kIntervals);
    const MomentSummary m = moments(g);
    CHECK(std::abs(m.mean) < 1e-9);
    CHECK(std::abs(m.variance - 1.0) < 1e-3);
}

TEST_CASE("large shape approaches the uniform density") {
    const DistributionSpec q = DistributionSpec::make_generalized_gaussian(200.0);
    const double flat = 1.0 / (2.0 * std::sqrt(3.0));
    for (double x : {0.0, 0.5, 1.0, 1.5}) {
        CAPTURE(x);
        CHECK(std::abs(q.pdf(x) - flat) < 0.02);
    }
}

TEST_CASE("closed form information values match frozen oracles") {
    // beta^2 Gamma(3/b) Gamma(2 - 1/b) / Gamma(1/b)^2 - 1, frozen externally.
    CHECK(closed_form_j_beta(1.5) ==
          doctest::Approx(0.095748864654738641).epsilon(1e-12));
    CHECK(std::abs(closed_form_j_beta(2.0)) < 1e-12);
    CHECK(closed_form_j_beta(3.0) ==
          doctest::Approx(0.13209336072631928).epsilon(1e-12));
    CHECK(closed_form_j_beta(4.0) ==
          doctest::Approx(0.37083974313339119).epsilon(1e-12));
    // 6 / ((theta - 2)(theta + 3)) at rational points.
    CHECK(closed_form_j_theta(4.0) == doctest::Approx(3.0 / 7.0).epsilon(1e-14));
    CHECK(closed_form_j_theta(5.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(closed_form_j_theta(10.0) == doctest::Approx(6.0 / 104.0).epsilon(1e-14));
    CHECK_THROWS_AS(closed_form_j_beta(1.0), std::domain_error);
    CHECK_THROWS_AS(closed_form_j_theta(2.0), std::domain_error);
}

TEST_CASE("iid product replicates one coordinate") {
    const ProductMeasure m =
        product_iid(DistributionSpec::make_generalized_gaussian(3.0), 3, 1024);
    CHECK(m.dimension() == 3);
    CHECK(m.iid_flag);
    for (int k = 1; k < 3; ++k) {
        REQUIRE(m.coords[k].values.size() == m.coords[0].values.size());
        for (std::size_t i = 0; i < m.coords[0].values.size(); ++i)
            CHECK(m.coords[k].values[i] == m.coords[0].values[i]);
    }
    CHECK_THROWS_AS(product_iid(DistributionSpec::make_gaussian(), 0, 1024),
                    std::invalid_argument);
}
