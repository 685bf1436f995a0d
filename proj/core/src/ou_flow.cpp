#include "entclt/ou_flow.hpp"

#include <cmath>
#include <stdexcept>

#include "entclt/fft.hpp"
#include "entclt/functionals.hpp"
#include "entclt/quadrature.hpp"
#include "entclt/special.hpp"

namespace entclt {

GridDensity ou_evolve(const GridDensity& g, double t) {
    if (t < 0.0) throw std::domain_error("ou_evolve: t must be >= 0");
    if (t < 1e-6) return g;  // kernel bandwidth below grid resolution

    const double s = std::exp(-t);
    const double sig = std::sqrt(1.0 - s * s);
    GridDensity base = scale(g, s);
    double h = base.spacing();
    if (h < sig / 512.0 || h > sig / 2.0) {
        const double h_target = (h < sig / 512.0) ? sig / 512.0 : sig / 2.0;
        const int m =
            std::max(64, int(std::ceil((base.hi - base.lo) / h_target)));
        base = resample(base, base.lo, base.hi, m + 1);
        h = base.spacing();
    }

    const int m = int(std::ceil(9.0 * sig / h));
    std::vector<double> kernel(2 * m + 1);
    for (int i = -m; i <= m; ++i)
        kernel[i + m] = normal_pdf(h * i / sig) / sig;

    const std::vector<double> raw = convolve_real(base.values, kernel);
    GridDensity out;
    out.lo = base.lo - m * h;
    out.values.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        out.values[i] = std::max(raw[i] * h, 0.0);
    out.hi = out.lo + h * (out.values.size() - 1);
    out.tail_mass = g.tail_mass;
    return normalize(std::move(out));
}

namespace {

double debruijn_integral(const GridDensity& g, double t, int nodes_per_unit) {
    const int panels = std::max(1, int(std::ceil(t)));
    const GaussLegendre& gl = gauss_legendre(nodes_per_unit);
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double a = t * k / panels, b = t * (k + 1) / panels;
        for (int q = 0; q < nodes_per_unit; ++q) {
            const double s = 0.5 * (b - a) * gl.nodes[q] + 0.5 * (a + b);
            const double w = 0.5 * (b - a) * gl.weights[q];
            total += w * relative_fisher(ou_evolve(g, s));
        }
    }
    return total;
}

}  // namespace

FlowTrace flow_trace(const GridDensity& g, const std::vector<double>& t_nodes,
                     int nodes_per_unit) {
    for (std::size_t i = 0; i < t_nodes.size(); ++i) {
        if (t_nodes[i] < 0.0)
            throw std::domain_error("flow_trace: t must be >= 0");
        if (i && t_nodes[i] <= t_nodes[i - 1])
            throw std::invalid_argument("flow_trace: t_nodes must ascend");
    }
    const double ent0 = relative_entropy_to_gaussian(g);
    FlowTrace tr;
    tr.t_nodes = t_nodes;
    for (double t : t_nodes) {
        const GridDensity gt = ou_evolve(g, t);
        const double ent_t = relative_entropy_to_gaussian(gt);
        const double j_t = relative_fisher(gt);
        const double integral = debruijn_integral(g, t, nodes_per_unit);
        tr.ent_values.push_back(ent_t);
        tr.j_values.push_back(j_t);
        tr.debruijn_residuals.push_back(std::abs(ent0 - ent_t - integral));
    }
    return tr;
}

std::vector<std::pair<double, double>> fisher_decay_check(
    const GridDensity& g, const std::vector<double>& t_nodes) {
    const double j0 = relative_fisher(g);
    std::vector<std::pair<double, double>> out;
    for (double t : t_nodes) {
        const double jt = relative_fisher(ou_evolve(g, t));
        out.emplace_back(t, std::exp(-2.0 * t) * j0 - jt);
    }
    return out;
}

double entropy_cost_check(const GridDensity& g, double t, double w2_sq) {
    if (!(t > 0.0)) throw std::domain_error("entropy_cost_check: t must be > 0");
    const double ent_t = relative_entropy_to_gaussian(ou_evolve(g, t));
    return w2_sq / (2.0 * (std::exp(2.0 * t) - 1.0)) - ent_t;
}

double ent_w2_fi_bound(const GridDensity& g, double t, double w2_sq) {
    if (!(t > 0.0)) throw std::domain_error("ent_w2_fi_bound: t must be > 0");
    const double j = relative_fisher(g);
    return w2_sq / (2.0 * (std::exp(2.0 * t) - 1.0)) +
           (1.0 - std::exp(-2.0 * t)) * j / 2.0;
}

double hwi_value(double w2, double j) {
    return w2 * std::sqrt(std::max(j, 0.0)) - 0.5 * w2 * w2;
}

double hwi_optimal_time(double w2, double j) {
    const double sj = std::sqrt(std::max(j, 0.0));
    if (!(w2 >= 0.0) || !(w2 < sj))
        throw std::domain_error(
            "hwi_optimal_time: requires 0 <= w2 < sqrt(j)");
    return 0.5 * std::log(sj / (sj - w2));
}

}  // namespace entclt
