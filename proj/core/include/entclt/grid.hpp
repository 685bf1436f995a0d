#pragma once

#include <functional>
#include <vector>

namespace entclt {

// A 1-D probability density tabulated at uniformly spaced nodes on [lo, hi].
// Node count is kept odd by the builders so a node sits at the symmetry
// center (matters for densities with a kink at the origin).
struct GridDensity {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> values;
    double tail_mass = 0.0;  // estimated mass outside [lo, hi] at build time

    int n_points() const { return static_cast<int>(values.size()); }
    double spacing() const { return (hi - lo) / (n_points() - 1); }
    double node(int i) const { return lo + spacing() * i; }
    double max_value() const;
};

struct MomentSummary {
    double mean = 0.0;
    double variance = 0.0;
};

// A d-vector of independent coordinate densities.
struct ProductMeasure {
    std::vector<GridDensity> coords;
    bool iid_flag = false;

    int dimension() const { return static_cast<int>(coords.size()); }
};

// Trapezoid integral of the tabulated values over [lo, hi].
double trapezoid_mass(const GridDensity& g);

// Divide by the trapezoid integral; throws if the integral is not positive.
GridDensity normalize(GridDensity g);

MomentSummary moments(const GridDensity& g);

// Density of a*X: nodes multiplied by a, values divided by |a| (exact).
GridDensity scale(const GridDensity& g, double a);

// Shift nodes by b (density of X + b, exact).
GridDensity shift(const GridDensity& g, double b);

// Affine map to mean 0 / variance 1, then resample onto a fresh uniform grid
// of the same node count (linear interpolation, clamped at 0, renormalized).
GridDensity standardize(const GridDensity& g);

// Exact affine standardization: remap nodes, rescale values, no resampling.
GridDensity standardize_affine(const GridDensity& g);

// Linear-interpolation resample onto n_points nodes spanning [lo, hi];
// values outside the source domain are 0; output clamped and renormalized.
GridDensity resample(const GridDensity& g, double lo, double hi, int n_points);

// Trim where the density is below rel_cut * max, then resample onto
// n_intervals+1 nodes over the trimmed domain.
GridDensity resample_trimmed(const GridDensity& g, int n_intervals,
                             double rel_cut = 1e-16);

// Tabulate a pdf on a symmetric domain around center_hint, doubling the
// half-width from scale_hint until the estimated tail mass drops below
// 1e-10, the edge density falls below 1e-14 of the peak, or the half-width
// reaches domain_cap. The grid has n_intervals+1 nodes. Throws on NaN or
// an everywhere-zero tabulation.
GridDensity build_from_pdf(const std::function<double(double)>& pdf,
                           double center_hint, double scale_hint,
                           int n_intervals, double domain_cap = 200.0);

ProductMeasure product_of(std::vector<GridDensity> coords);

}  // namespace entclt
