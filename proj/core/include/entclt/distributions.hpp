#pragma once

#include <string>
#include <vector>

#include "entclt/grid.hpp"

namespace entclt {

enum class Family {
    gaussian,
    generalized_gaussian,
    student_t,
    uniform_sqrt3,
    gaussian_mixture,
};

// A unit-variance distribution family with its derived normalizing
// constants. Use the static factories; the constructor validates
// parameters and precomputes constants.
struct DistributionSpec {
    Family family = Family::gaussian;
    double beta = 0.0;   // generalized_gaussian shape, > 1
    double theta = 0.0;  // student_t tail index, > 2
    std::vector<double> weights, means, sds;  // gaussian_mixture

    // Derived constants (defining formulas hold to 1e-12):
    //   b_beta = (Gamma(3/b)/Gamma(1/b))^(b/2)
    //   c_beta = (b / (2 Gamma(1/b))) * sqrt(Gamma(3/b)/Gamma(1/b))
    //   c_theta = Gamma((t+1)/2) / (sqrt(pi (t-2)) Gamma(t/2))
    double b_beta = 0.0;
    double c_beta = 0.0;
    double c_theta = 0.0;

    static DistributionSpec make_gaussian();
    static DistributionSpec make_generalized_gaussian(double beta);
    static DistributionSpec make_student_t(double theta);
    static DistributionSpec make_uniform_sqrt3();
    static DistributionSpec make_gaussian_mixture(std::vector<double> weights,
                                                  std::vector<double> means,
                                                  std::vector<double> sds);

    // Whether finite-difference scores are defined (false for the uniform
    // law, whose score does not exist; it is admitted only for the
    // Poincaré machinery).
    bool has_score() const { return family != Family::uniform_sqrt3; }

    // Analytic density before any grid standardization. Unit variance for
    // the closed-form families; mixtures are standardized at build time.
    double pdf(double x) const;

    // Hint for the domain-doubling search and the |x| cap.
    double scale_hint() const;
    double domain_cap() const;

    std::string name() const;
};

// Tabulate and (when needed) standardize the family onto a grid with
// n_intervals+1 nodes. Families that are unit-variance by construction are
// tabulated directly; otherwise an affine standardization loop re-tabulates
// the analytic pdf until mean/variance reach machine-level accuracy.
GridDensity make_density(const DistributionSpec& spec, int n_intervals);

// J(X_beta) = beta^2 Gamma(3/beta) Gamma(2-1/beta) / Gamma(1/beta)^2 - 1.
double closed_form_j_beta(double beta);

// J(X_theta) = 6 / ((theta-2)(theta+3)).
double closed_form_j_theta(double theta);

// d iid coordinates of the family.
ProductMeasure product_iid(const DistributionSpec& spec, int d,
                           int n_intervals);

}  // namespace entclt
