#include "entclt/distributions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "entclt/special.hpp"

namespace entclt {

DistributionSpec DistributionSpec::make_gaussian() {
    DistributionSpec s;
    s.family = Family::gaussian;
    return s;
}

DistributionSpec DistributionSpec::make_generalized_gaussian(double beta) {
    if (!(beta > 1.0))
        throw std::invalid_argument("generalized_gaussian: beta must be > 1");
    DistributionSpec s;
    s.family = Family::generalized_gaussian;
    s.beta = beta;
    const double g1 = gamma_fn(1.0 / beta);
    const double g3 = gamma_fn(3.0 / beta);
    s.b_beta = std::pow(g3 / g1, beta / 2.0);
    s.c_beta = (beta / (2.0 * g1)) * std::sqrt(g3 / g1);
    return s;
}

DistributionSpec DistributionSpec::make_student_t(double theta) {
    if (!(theta > 2.0))
        throw std::invalid_argument("student_t: theta must be > 2");
    DistributionSpec s;
    s.family = Family::student_t;
    s.theta = theta;
    // lgamma route keeps large theta from overflowing the Gamma ratio.
    s.c_theta = std::exp(lgamma_fn((theta + 1.0) / 2.0) -
                         lgamma_fn(theta / 2.0)) /
                std::sqrt(M_PI * (theta - 2.0));
    return s;
}

DistributionSpec DistributionSpec::make_uniform_sqrt3() {
    DistributionSpec s;
    s.family = Family::uniform_sqrt3;
    return s;
}

DistributionSpec DistributionSpec::make_gaussian_mixture(
    std::vector<double> weights, std::vector<double> means,
    std::vector<double> sds) {
    if (weights.empty() || weights.size() != means.size() ||
        weights.size() != sds.size())
        throw std::invalid_argument(
            "gaussian_mixture: weights/means/sds must be nonempty and of "
            "equal length");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0))
            throw std::invalid_argument("gaussian_mixture: weights must be > 0");
        total += w;
    }
    for (double& w : weights) w /= total;
    for (double s : sds)
        if (!(s > 0.0))
            throw std::invalid_argument("gaussian_mixture: sds must be > 0");
    DistributionSpec s;
    s.family = Family::gaussian_mixture;
    s.weights = std::move(weights);
    s.means = std::move(means);
    s.sds = std::move(sds);
    return s;
}

double DistributionSpec::pdf(double x) const {
    switch (family) {
        case Family::gaussian:
            return normal_pdf(x);
        case Family::generalized_gaussian:
            return c_beta * std::exp(-b_beta * std::pow(std::abs(x), beta));
        case Family::student_t:
            return c_theta *
                   std::pow(1.0 + x * x / (theta - 2.0), -(theta + 1.0) / 2.0);
        case Family::uniform_sqrt3: {
            const double s3 = std::sqrt(3.0);
            return (x >= -s3 && x <= s3) ? 1.0 / (2.0 * s3) : 0.0;
        }
        case Family::gaussian_mixture: {
            double acc = 0.0;
            for (std::size_t k = 0; k < weights.size(); ++k)
                acc += weights[k] * normal_pdf((x - means[k]) / sds[k]) / sds[k];
            return acc;
        }
    }
    throw std::logic_error("pdf: unknown family");
}

double DistributionSpec::scale_hint() const {
    if (family == Family::gaussian_mixture) {
        double w = 1.0;
        for (std::size_t k = 0; k < weights.size(); ++k)
            w = std::max(w, std::abs(means[k]) + sds[k]);
        return w;
    }
    return 1.5;
}

double DistributionSpec::domain_cap() const { return 200.0; }

std::string DistributionSpec::name() const {
    std::ostringstream os;
    switch (family) {
        case Family::gaussian:
            return "gaussian";
        case Family::generalized_gaussian:
            os << "generalized_gaussian(beta=" << beta << ")";
            return os.str();
        case Family::student_t:
            os << "student_t(theta=" << theta << ")";
            return os.str();
        case Family::uniform_sqrt3:
            return "uniform_sqrt3";
        case Family::gaussian_mixture: {
            os << "gaussian_mixture(";
            for (std::size_t k = 0; k < weights.size(); ++k) {
                if (k) os << ";";
                os << weights[k] << ":" << means[k] << ":" << sds[k];
            }
            os << ")";
            return os.str();
        }
    }
    return "unknown";
}

GridDensity make_density(const DistributionSpec& spec, int n_intervals) {
    if (spec.family == Family::uniform_sqrt3) {
        GridDensity g;
        const double s3 = std::sqrt(3.0);
        g.lo = -s3;
        g.hi = s3;
        g.tail_mass = 0.0;
        g.values.assign(n_intervals + 1, 1.0 / (2.0 * s3));
        return normalize(std::move(g));
    }

    // Affine standardization by re-tabulating a*pdf(a x + b). Families that
    // are unit-variance by construction come out standardized on the first
    // pass (up to the recorded truncation deficit, which must not be folded
    // back into the law); only then is the loop skipped.
    double a = 1.0, b = 0.0;
    GridDensity g;
    for (int pass = 0; pass < 8; ++pass) {
        auto cur = [&spec, a, b](double x) { return a * spec.pdf(a * x + b); };
        g = build_from_pdf(cur, 0.0, spec.scale_hint() / a, n_intervals,
                           spec.domain_cap());
        const MomentSummary m = moments(g);
        if (std::abs(m.mean) <= 1e-6 && std::abs(m.variance - 1.0) <= 5e-4)
            return g;
        b += a * m.mean;
        a *= std::sqrt(m.variance);
    }
    return g;
}

double closed_form_j_beta(double beta) {
    if (!(beta > 1.0))
        throw std::domain_error("closed_form_j_beta: beta must be > 1");
    const double g1 = gamma_fn(1.0 / beta);
    return beta * beta * gamma_fn(3.0 / beta) * gamma_fn(2.0 - 1.0 / beta) /
               (g1 * g1) -
           1.0;
}

double closed_form_j_theta(double theta) {
    if (!(theta > 2.0))
        throw std::domain_error("closed_form_j_theta: theta must be > 2");
    return 6.0 / ((theta - 2.0) * (theta + 3.0));
}

ProductMeasure product_iid(const DistributionSpec& spec, int d,
                           int n_intervals) {
    if (d < 1) throw std::invalid_argument("product_iid: d must be >= 1");
    GridDensity g = make_density(spec, n_intervals);
    ProductMeasure m;
    m.coords.assign(d, g);
    m.iid_flag = true;
    return m;
}

}  // namespace entclt
