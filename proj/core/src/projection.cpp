#include "entclt/projection.hpp"

#include <cmath>
#include <stdexcept>

#include "entclt/convolve.hpp"
#include "entclt/functionals.hpp"
#include "entclt/poincare.hpp"
#include "entclt/quadrature.hpp"

namespace entclt {

namespace {

constexpr double kFloorRel = 1e-12;

std::vector<double> density_weights(const GridDensity& g) {
    std::vector<double> w = trapezoid_weights(g.n_points(), g.spacing());
    for (int i = 0; i < g.n_points(); ++i) w[i] *= g.values[i];
    return w;
}

}  // namespace

GridFunction conditional_score(const GridDensity& base) {
    const int n = base.n_points();
    const ScoreField rho = score(base);
    const std::vector<double> w = density_weights(base);

    // cond(s_k) = sum_i w_i rho_i p(s_k - x_i) / p_{S2}(s_k) on the grid of
    // S2 = X1 + X2 (node k of the self-convolution grid).
    const int nc = 2 * n - 1;
    std::vector<double> num(nc, 0.0), den(nc, 0.0);
    for (int i = 0; i < n; ++i) {
        const double wr = w[i] * rho.scores[i];
        const double wi = w[i];
        for (int j = 0; j < n; ++j) {
            num[i + j] += wr * base.values[j];
            den[i + j] += wi * base.values[j];
        }
    }
    GridFunction out;
    out.lo = 2.0 * base.lo;
    out.hi = 2.0 * base.hi;
    out.values.assign(nc, 0.0);
    out.valid.assign(nc, 0);
    double dmax = 0.0;
    for (double v : den) dmax = std::max(dmax, v);
    const double floor = kFloorRel * dmax;
    for (int k = 0; k < nc; ++k) {
        if (den[k] >= floor) {
            out.values[k] = num[k] / den[k];
            out.valid[k] = 1;
        }
    }
    return out;
}

ProjectionReport projection_report_n2(const GridDensity& base) {
    const int n = base.n_points();
    const double h = base.spacing();
    const std::vector<double> w = density_weights(base);

    const GridDensity conv = convolve(base, base);
    const GridDensity z2 = normalize(scale(conv, 1.0 / std::sqrt(2.0)));
    const ScoreField f2s = score(z2);
    const std::vector<double>& f2 = f2s.scores;

    ProjectionReport rep;
    rep.n = 2;
    rep.i_x1 = fisher_information(base);
    rep.j_x1 = rep.i_x1 - 1.0;
    rep.i_z2 = fisher_information(z2);
    rep.j_z2 = rep.i_z2 - 1.0;

    // f1(x_i) = E[ rho_{Z2}((x_i + X2)/sqrt2) ]; node i+j of the z2 grid is
    // exactly (x_i + x_j)/sqrt2, so the expectation is an index-aligned sum.
    std::vector<double> f1(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += w[j] * f2[i + j];
        f1[i] = acc;
    }
    rep.g_table.resize(n);
    for (int i = 0; i < n; ++i) rep.g_table[i] = std::sqrt(2.0) * f1[i];
    const std::vector<double>& g = rep.g_table;

    // m = E g'(X1), with the same interior differencing as the scores.
    std::vector<double> gp(n, 0.0);
    for (int i = 3; i < n - 3; ++i)
        gp[i] = (g[i + 3] - 9.0 * g[i + 2] + 45.0 * g[i + 1] -
                 45.0 * g[i - 1] + 9.0 * g[i - 2] - g[i - 3]) /
                (60.0 * h);
    for (int i = 0; i < 3; ++i) gp[i] = gp[3];
    for (int i = n - 3; i < n; ++i) gp[i] = gp[n - 4];
    double m = 0.0;
    for (int i = 0; i < n; ++i) m += w[i] * gp[i];
    rep.m_scalar = m;

    // Delta_2 by direct 2-D tensor quadrature (g(x_j)/sqrt2 = f1[j]).
    double delta2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            const double d = f2[i + j] - f1[i] - f1[j];
            row += w[j] * d * d;
        }
        delta2 += w[i] * row;
    }
    rep.delta2 = delta2;

    // E|V - Vhat|^2 through the independent assembly EV^2 - 2 E V.Vhat
    // + E Vhat^2, with V = rho_{Z2}(Z2) + Z2 and Vhat = (A(X1)+A(X2))/sqrt2,
    // A = g + x. EV^2 is a 1-D quadrature on the z2 grid; the cross term is
    // the 2-D sum.
    double ev2 = 0.0;
    {
        std::vector<double> y(z2.n_points(), 0.0);
        for (int k = 0; k < z2.n_points(); ++k) {
            const double rel = f2[k] + z2.node(k);
            y[k] = rel * rel * z2.values[k];
        }
        ev2 = trapezoid(y, z2.spacing());
    }
    std::vector<double> a(n);
    for (int i = 0; i < n; ++i) a[i] = g[i] + base.node(i);
    double ea = 0.0, ea2 = 0.0;
    for (int i = 0; i < n; ++i) {
        ea += w[i] * a[i];
        ea2 += w[i] * a[i] * a[i];
    }
    rep.e_vhat_sq = ea2 + ea * ea;
    double cross = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            const double vrel = f2[i + j] + z2.node(i + j);
            row += w[j] * vrel * (a[i] + a[j]);
        }
        cross += w[i] * row;
    }
    cross /= std::sqrt(2.0);
    rep.ridge_minus_additive = ev2 - 2.0 * cross + rep.e_vhat_sq;

    rep.pythagoras_residual = (rep.j_z2 - rep.e_vhat_sq) - delta2;
    rep.cauchy_schwarz_slack =
        rep.e_vhat_sq -
        ((rep.j_x1 > 1e-12) ? rep.j_z2 * rep.j_z2 / rep.j_x1 : 0.0);
    double orth = 0.0;
    for (int i = 0; i < n; ++i) orth += w[i] * a[i] * base.node(i);
    rep.orthogonality = orth;

    double egm = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = g[i] - m * base.node(i);
        egm += w[i] * d * d;
    }
    rep.e_g_minus_mx_sq = egm;

    rep.r_used = spectral_gap_1d(base).c_p * 1.01;
    rep.lower_bound_slack =
        delta2 - egm / (2.0 * rep.i_x1 * rep.r_used);

    // Projection-identity residual: the conditional score against the score
    // of S2, in weighted L2 on the sum grid.
    {
        const GridFunction cond = conditional_score(base);
        const ScoreField rho_s2 = score(conv);
        const std::vector<double> wc =
            trapezoid_weights(conv.n_points(), conv.spacing());
        double acc = 0.0;
        for (int k = 0; k < conv.n_points(); ++k) {
            if (!cond.valid[k]) continue;
            const double d = cond.values[k] - rho_s2.scores[k];
            acc += wc[k] * conv.values[k] * d * d;
        }
        rep.identity_residual = std::sqrt(std::max(acc, 0.0));
    }

    // Contract assertions for the decomposition.
    if (std::abs(rep.delta2 - rep.ridge_minus_additive) >
        1e-3 * std::max(rep.delta2, 1e-7))
        throw std::domain_error(
            "projection_report_n2: telescoping equality failed");
    if (std::abs(rep.m_scalar + rep.i_z2) >= 1e-3)
        throw std::domain_error(
            "projection_report_n2: E g' does not match -I(Z2)");
    if (rep.lower_bound_slack < -1e-4)
        throw std::domain_error(
            "projection_report_n2: score-projection lower bound violated");
    return rep;
}

double prop_fi_chain_check_n2(const ProjectionReport& rep, double r) {
    const double lhs =
        rep.j_z2 -
        ((rep.j_x1 > 1e-12) ? rep.j_z2 * rep.j_z2 / rep.j_x1 : 0.0);
    const double rhs = rep.e_g_minus_mx_sq / (2.0 * r * rep.i_x1);
    return lhs - rhs;
}

}  // namespace entclt
