#include "entclt/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace entclt {

namespace {

constexpr double kSupportRel = 1e-10;

struct SupportBlock {
    int i0 = 0;
    int i1 = 0;  // inclusive
};

SupportBlock effective_support(const GridDensity& g) {
    const double thresh = kSupportRel * g.max_value();
    const int n = g.n_points();
    int i0 = 0, i1 = n - 1;
    while (i0 < n && g.values[i0] < thresh) ++i0;
    while (i1 >= 0 && g.values[i1] < thresh) --i1;
    if (i1 - i0 < 7)
        throw std::domain_error("poincare: effective support too small");
    for (int i = i0; i <= i1; ++i)
        if (g.values[i] < thresh)
            throw std::domain_error(
                "poincare: disconnected effective support (the spectral gap "
                "of a grid-disconnected weight is spurious)");
    return {i0, i1};
}

// Number of eigenvalues of the symmetric tridiagonal (d, e) strictly
// below x, by the Sturm/LDL^T sign count.
int count_below(const std::vector<double>& d, const std::vector<double>& e,
                double x) {
    int cnt = 0;
    double q = d[0] - x;
    if (q < 0.0) ++cnt;
    for (std::size_t i = 1; i < d.size(); ++i) {
        double denom = q;
        if (std::abs(denom) < 1e-300)
            denom = (denom < 0.0) ? -1e-300 : 1e-300;
        q = (d[i] - x) - e[i - 1] * e[i - 1] / denom;
        if (q < 0.0) ++cnt;
    }
    return cnt;
}

// k-th smallest eigenvalue (k is 0-based) by bisection on the sign count.
double kth_eigenvalue(const std::vector<double>& d,
                      const std::vector<double>& e, int k) {
    double lo = d[0], hi = d[0];
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double left = (i > 0) ? std::abs(e[i - 1]) : 0.0;
        const double right = (i + 1 < d.size()) ? std::abs(e[i]) : 0.0;
        lo = std::min(lo, d[i] - left - right);
        hi = std::max(hi, d[i] + left + right);
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi));
         ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(d, e, mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

struct GapPair {
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    int n_points = 0;
};

// Discretized Rayleigh quotient on the effective support: stiffness from
// midpoint weights of p on each cell, lumped trapezoid mass, symmetrized
// by the diagonal congruence.
GapPair solve_gap(const std::vector<double>& v, double h) {
    const int m = int(v.size());
    std::vector<double> pm(m - 1);
    for (int i = 0; i + 1 < m; ++i) pm[i] = 0.5 * (v[i] + v[i + 1]);
    std::vector<double> mass(m, h);
    mass.front() = mass.back() = 0.5 * h;
    for (int i = 0; i < m; ++i) mass[i] *= v[i];
    std::vector<double> diag(m, 0.0);
    for (int i = 0; i + 1 < m; ++i) {
        diag[i] += pm[i] / h;
        diag[i + 1] += pm[i] / h;
    }
    std::vector<double> d(m), e(m - 1);
    for (int i = 0; i < m; ++i) d[i] = diag[i] / mass[i];
    for (int i = 0; i + 1 < m; ++i)
        e[i] = -pm[i] / h / std::sqrt(mass[i] * mass[i + 1]);
    GapPair gp;
    gp.lambda0 = kth_eigenvalue(d, e, 0);  // constant mode, ~0, deflated
    gp.lambda1 = kth_eigenvalue(d, e, 1);
    gp.n_points = m;
    return gp;
}

GapPair gap_of(const GridDensity& g, int stride) {
    const SupportBlock blk = effective_support(g);
    std::vector<double> v;
    for (int i = blk.i0; i <= blk.i1; i += stride) v.push_back(g.values[i]);
    if (v.size() < 8)
        throw std::domain_error("poincare: too few support nodes");
    return solve_gap(v, g.spacing() * stride);
}

}  // namespace

PoincareEstimate spectral_gap_1d(const GridDensity& g) {
    const GapPair fine = gap_of(g, 1);
    const GapPair coarse = gap_of(g, 2);
    if (!(fine.lambda1 > 0.0))
        throw std::domain_error("poincare: nonpositive spectral gap");
    PoincareEstimate est;
    est.gap = fine.lambda1;
    est.c_p = 1.0 / fine.lambda1;
    est.lambda0 = fine.lambda0;
    est.method = PoincareMethod::spectral;
    est.n_points = fine.n_points;
    const double cp_coarse = 1.0 / coarse.lambda1;
    est.converged = std::abs(est.c_p - cp_coarse) < 0.005 * est.c_p;
    return est;
}

double muckenhoupt_b(const GridDensity& g) {
    const SupportBlock blk = effective_support(g);
    const double h = g.spacing();
    const int m = blk.i1 - blk.i0 + 1;
    std::vector<double> v(g.values.begin() + blk.i0,
                          g.values.begin() + blk.i1 + 1);

    std::vector<double> cdf(m, 0.0);
    for (int i = 1; i < m; ++i)
        cdf[i] = cdf[i - 1] + 0.5 * h * (v[i - 1] + v[i]);
    const double total = cdf[m - 1];
    int med = int(std::lower_bound(cdf.begin(), cdf.end(), 0.5 * total) -
                  cdf.begin());
    med = std::clamp(med, 1, m - 2);

    std::vector<double> inv(m);
    for (int i = 0; i < m; ++i) inv[i] = 1.0 / v[i];

    // Right branch: sup over x > median of P[X > x] * int_m^x 1/p.
    double bp = 0.0;
    double invint = 0.0;
    for (int i = med; i < m; ++i) {
        if (i > med) invint += 0.5 * h * (inv[i - 1] + inv[i]);
        bp = std::max(bp, (total - cdf[i]) * invint);
    }
    // Left branch: sup over x < median of P[X < x] * int_x^m 1/p.
    std::vector<double> pref(med + 1, 0.0);
    for (int i = 1; i <= med; ++i)
        pref[i] = pref[i - 1] + 0.5 * h * (inv[i - 1] + inv[i]);
    double bm = 0.0;
    for (int i = 0; i <= med; ++i)
        bm = std::max(bm, cdf[i] * (pref[med] - pref[i]));

    return std::max(bp, bm);
}

double muckenhoupt_bound(const GridDensity& g) {
    return 4.0 * muckenhoupt_b(g);
}

double poincare_product(const ProductMeasure& m) {
    if (m.coords.empty())
        throw std::invalid_argument("poincare_product: empty measure");
    double best = 0.0;
    for (const GridDensity& g : m.coords)
        best = std::max(best, spectral_gap_1d(g).c_p);
    return best;
}

}  // namespace entclt
