#pragma once

#include <map>
#include <vector>

#include "entclt/distributions.hpp"
#include "entclt/grid.hpp"

namespace entclt {

struct ConvolveInfo {
    double raw_mass = 0.0;      // trapezoid mass before renormalization
    double clamped_mass = 0.0;  // negative ringing removed by the 0-clamp
};

// Density of the independent sum, by zero-padded FFT on the combined
// support [a.lo + b.lo, a.hi + b.hi]. The grids must share their spacing
// to 1e-9 relative; otherwise b is resampled onto a's spacing first.
// Clamped negative mass above 1e-9 signals insufficient resolution and
// throws. Output renormalized.
GridDensity convolve(const GridDensity& a, const GridDensity& b,
                     ConvolveInfo* info = nullptr);

// Density of (X_1 + ... + X_n) / sqrt(n) by binary decomposition of n
// (self-convolved partial sums combined per n's binary digits), exact
// scaling by 1/sqrt(n), and a resolution-preserving resample only when the
// raw grid has grown past 6x the base node count.
GridDensity clt_density(const GridDensity& base, int n);

struct CltSweep {
    DistributionSpec base;
    std::vector<int> n_list;              // sorted ascending
    std::map<int, GridDensity> densities;  // per-coordinate density of Z_n
    int d = 1;
};

// Batch clt_density over n_list with the binary pyramid shared across
// entries. Every stored density must keep mean 0 / variance 1 within 2e-4
// (throws otherwise: the CLT normalization was lost to grid error).
CltSweep clt_sweep(const DistributionSpec& base, std::vector<int> n_list,
                   int d, int n_intervals);

}  // namespace entclt
