#pragma once

#include <vector>

#include "entclt/grid.hpp"

namespace entclt {

// Law of X(t) = e^{-t} X + sqrt(1 - e^{-2t}) Z: exact affine scaling
// followed by Gaussian-kernel convolution. The working spacing is
// re-targeted into [sigma_t/512, sigma_t/2] so the kernel stays resolved
// at small t and the grid stays affordable at large t. For t < 1e-6 the
// kernel bandwidth is below grid resolution and the input is returned
// unchanged. Throws for t < 0.
GridDensity ou_evolve(const GridDensity& g, double t);

struct FlowTrace {
    std::vector<double> t_nodes;
    std::vector<double> ent_values;          // Ent(X(t)|Z)
    std::vector<double> j_values;            // J(X(t))
    std::vector<double> debruijn_residuals;  // |Ent(X|Z)-Ent(X(t)|Z)-int_0^t J|
};

// Entropy dissipation along the flow. The time integral of J uses
// Gauss-Legendre panels with nodes_per_unit nodes per unit time.
FlowTrace flow_trace(const GridDensity& g, const std::vector<double>& t_nodes,
                     int nodes_per_unit = 16);

// slack(t) = e^{-2t} J(X) - J(X(t)); the exponential-decay inequality
// requires every slack >= -1e-5.
std::vector<std::pair<double, double>> fisher_decay_check(
    const GridDensity& g, const std::vector<double>& t_nodes);

// slack = w2_sq / (2 (e^{2t} - 1)) - Ent(X(t)|Z) for the entropy-cost
// inequality; must be >= -1e-5. Throws for t <= 0.
double entropy_cost_check(const GridDensity& g, double t, double w2_sq);

// Right-hand side of the entropy decomposition bound
//   Ent(X|Z) <= w2_sq / (2 (e^{2t} - 1)) + (1 - e^{-2t}) J(X) / 2.
double ent_w2_fi_bound(const GridDensity& g, double t, double w2_sq);

// Value of the optimized decomposition, w2 sqrt(j) - w2_sq/2, and the
// optimizing time e^{2t*} = sqrt(j) / (sqrt(j) - w2) (finite only when
// w2 < sqrt(j)).
double hwi_value(double w2, double j);
double hwi_optimal_time(double w2, double j);

}  // namespace entclt
