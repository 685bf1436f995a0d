#include "entclt/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "entclt/quadrature.hpp"

namespace entclt {

CdfTable cdf(const GridDensity& g) {
    const int n = g.n_points();
    if (n < 2) throw std::invalid_argument("cdf: empty grid");
    const double h = g.spacing();
    CdfTable c;
    c.lo = g.lo;
    c.hi = g.hi;
    c.cdf_values.resize(n);
    double acc = 0.0;
    c.cdf_values[0] = 0.0;
    for (int i = 1; i < n; ++i) {
        acc += 0.5 * h * (g.values[i - 1] + g.values[i]);
        c.cdf_values[i] = acc;
    }
    if (!(acc > 0.0))
        throw std::domain_error("cdf: zero total mass");
    for (double& v : c.cdf_values) v = std::clamp(v / acc, 0.0, 1.0);
    c.cdf_values.back() = 1.0;
    return c;
}

double quantile(const CdfTable& c, double u) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("quantile: u must lie in (0, 1)");
    const auto& cv = c.cdf_values;
    // Leftmost crossing.
    auto it = std::lower_bound(cv.begin(), cv.end(), u);
    int i = int(it - cv.begin());
    i = std::clamp(i, 1, int(cv.size()) - 1);
    const double c0 = cv[i - 1], c1 = cv[i];
    if (c1 == c0) return c.node(i);
    return c.node(i - 1) + c.spacing() * (u - c0) / (c1 - c0);
}

double w2_squared_1d(const GridDensity& a, const GridDensity& b) {
    const CdfTable ca = cdf(a), cb = cdf(b);
    double prev = 0.0;
    bool have_prev = false;
    for (int n = 512;; n *= 2) {
        const GaussLegendre& gl = gauss_legendre(n);
        double val = 0.0;
        for (int k = 0; k < n; ++k) {
            const double u = 0.5 * (gl.nodes[k] + 1.0);
            const double d = quantile(ca, u) - quantile(cb, u);
            val += 0.5 * gl.weights[k] * d * d;
        }
        if (have_prev && std::abs(val - prev) < 1e-5 * std::max(1.0, std::abs(val)))
            return val;
        if (n >= 8192) return val;
        prev = val;
        have_prev = true;
    }
}

double w2_1d(const GridDensity& a, const GridDensity& b) {
    return std::sqrt(std::max(w2_squared_1d(a, b), 0.0));
}

double w2_product(const ProductMeasure& a, const ProductMeasure& b) {
    if (a.dimension() != b.dimension())
        throw std::invalid_argument("w2_product: dimension mismatch");
    if (a.dimension() == 0)
        throw std::invalid_argument("w2_product: empty measures");
    double acc = 0.0;
    for (int k = 0; k < a.dimension(); ++k)
        acc += w2_squared_1d(a.coords[k], b.coords[k]);
    return std::sqrt(acc);
}

}  // namespace entclt
