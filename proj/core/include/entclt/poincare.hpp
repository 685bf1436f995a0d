#pragma once

#include "entclt/grid.hpp"

namespace entclt {

enum class PoincareMethod { spectral, muckenhoupt };

struct PoincareEstimate {
    double c_p = 0.0;       // Poincaré constant, 1/gap
    double gap = 0.0;       // first nonzero eigenvalue of the weighted
                            // Neumann operator -(p f')'/p
    double lambda0 = 0.0;   // deflated constant mode (should be ~0)
    PoincareMethod method = PoincareMethod::spectral;
    bool converged = false; // halving h moved c_p by < 0.5%
    int n_points = 0;       // effective-support node count used
};

// Discretize the Rayleigh quotient inf int f'^2 p / int f^2 p over
// mean-zero f as a generalized symmetric tridiagonal eigenproblem on the
// effective support (nodes with p >= 1e-10 max p, which must form one
// contiguous block), symmetrize by the diagonal mass congruence, and take
// the two smallest eigenvalues by Sturm-sequence bisection. The smallest
// is the constant mode and is deflated; c_p = 1/lambda_1.
PoincareEstimate spectral_gap_1d(const GridDensity& g);

// Hardy-type two-sided bound around the median:
//   B = max( sup_{x>m} P[X>x] int_m^x 1/p,  sup_{x<m} P[X<x] int_x^m 1/p ).
double muckenhoupt_b(const GridDensity& g);

// 4B, the classical upper bound on the Poincaré constant (B is a lower
// bound, giving the sandwich B <= c_p <= 4B).
double muckenhoupt_bound(const GridDensity& g);

// Tensorization: max over coordinates of the spectral constant.
double poincare_product(const ProductMeasure& m);

}  // namespace entclt
