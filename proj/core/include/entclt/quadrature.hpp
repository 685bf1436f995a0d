#pragma once

#include <vector>

namespace entclt {

// Trapezoid rule with uniform spacing h.
double trapezoid(const std::vector<double>& y, double h);

// Trapezoid node weights (h at interior nodes, h/2 at the ends).
std::vector<double> trapezoid_weights(int n, double h);

struct GaussLegendre {
    std::vector<double> nodes;    // on (-1, 1), ascending
    std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule of order n, computed by Newton iteration on the
// Legendre recurrence and cached per n.
const GaussLegendre& gauss_legendre(int n);

}  // namespace entclt
