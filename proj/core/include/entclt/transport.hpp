#pragma once

#include <vector>

#include "entclt/grid.hpp"

namespace entclt {

struct CdfTable {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> cdf_values;  // nondecreasing, in [0, 1]

    int n_points() const { return static_cast<int>(cdf_values.size()); }
    double spacing() const { return (hi - lo) / (n_points() - 1); }
    double node(int i) const { return lo + spacing() * i; }
};

// Cumulative trapezoid integral, scaled so the last entry is exactly 1 and
// clamped to [0, 1].
CdfTable cdf(const GridDensity& g);

// Leftmost-crossing inverse with linear interpolation; u must lie in (0,1).
double quantile(const CdfTable& c, double u);

// W_2^2 as the L^2 distance between quantile functions: Gauss-Legendre in
// u starting at 512 nodes, doubling until the value moves by less than
// 1e-5 (relative to max(1, value)), capped at 8192 nodes.
double w2_squared_1d(const GridDensity& a, const GridDensity& b);

double w2_1d(const GridDensity& a, const GridDensity& b);

// Product tensorization: root-sum-square of coordinate distances.
double w2_product(const ProductMeasure& a, const ProductMeasure& b);

}  // namespace entclt
