#pragma once

#include <vector>

#include "entclt/grid.hpp"

namespace entclt {

// A function tabulated on a uniform grid with a validity mask (used for
// conditional scores, which are undefined where the sum density vanishes).
struct GridFunction {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> values;
    std::vector<char> valid;

    int n_points() const { return static_cast<int>(values.size()); }
    double spacing() const { return (hi - lo) / (n_points() - 1); }
    double node(int i) const { return lo + spacing() * i; }
};

// E[rho_{X1}(X1) | X1 + X2 = s] on the grid of S2 = X1 + X2, by direct
// quadrature of int rho p p(s - .) / p_{S2}(s). The projection identity
// says this equals the score of S2 wherever p_{S2} > 0.
GridFunction conditional_score(const GridDensity& base);

// Exact n=2 verification of the projection decomposition, all expectations
// by 1-D / 2-D tensor trapezoid quadrature on the base grid.
struct ProjectionReport {
    int n = 2;
    double identity_residual = 0.0;    // weighted L2 gap in the projection
                                       // identity for the conditional score
    double delta2 = 0.0;               // E|f2(Z2) - f1(S1/sqrt2) - g(X2)/sqrt2|^2
    double ridge_minus_additive = 0.0; // E|V - Vhat|^2 assembled through the
                                       // independent route EV^2 - 2EVVhat + EVhat^2
    std::vector<double> g_table;       // g(u) = sqrt2 E[rho_{Z2}(Z2)|X1=u] on
                                       // the base grid
    double m_scalar = 0.0;             // E g'(X1); matches -I(Z2)
    double lower_bound_slack = 0.0;    // delta2 - E[(g - m x)^2] / (2 I(X1) R)
    double r_used = 0.0;               // spectral c_p inflated by 1%

    // Supporting quantities for the chain checks.
    double i_x1 = 0.0, j_x1 = 0.0, i_z2 = 0.0, j_z2 = 0.0;
    double e_vhat_sq = 0.0;            // E|Vhat|^2 = E[A^2] + (E A)^2, A = g + x
    double e_g_minus_mx_sq = 0.0;      // E[(g(X1) - m X1)^2]
    double pythagoras_residual = 0.0;  // (J(Z2) - E|Vhat|^2) - delta2
    double cauchy_schwarz_slack = 0.0; // E|Vhat|^2 - J(Z2)^2 / J(X1)
    double orthogonality = 0.0;        // E[(g(X1) + X1) X1]
};

// Builds p_{Z2} = clt_density(base, 2), tabulates g, and evaluates the
// decomposition. Asserts (throws) the telescoping equality
// |delta2 - ridge_minus_additive| <= 1e-3 max(delta2, 1e-7), the trace
// identity |m_scalar + I(Z2)| < 1e-3, and lower_bound_slack >= -1e-4.
ProjectionReport projection_report_n2(const GridDensity& base);

// slack of J(Z2) - J(Z2)^2/J(X1) >= E[(g - m x)^2] / (2 R I(X1)); the
// Fisher-chain inequality at n=2 requires slack >= -1e-4.
double prop_fi_chain_check_n2(const ProjectionReport& rep, double r);

}  // namespace entclt
