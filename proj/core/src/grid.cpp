#include "entclt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "entclt/quadrature.hpp"

namespace entclt {

double GridDensity::max_value() const {
    return *std::max_element(values.begin(), values.end());
}

double trapezoid_mass(const GridDensity& g) {
    return trapezoid(g.values, g.spacing());
}

GridDensity normalize(GridDensity g) {
    if (g.n_points() < 2)
        throw std::invalid_argument("normalize: need at least 2 nodes");
    const double mass = trapezoid_mass(g);
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw std::domain_error("normalize: nonpositive or nonfinite mass");
    for (double& v : g.values) v /= mass;
    return g;
}

MomentSummary moments(const GridDensity& g) {
    const double h = g.spacing();
    std::vector<double> xg(g.n_points()), x2g(g.n_points());
    for (int i = 0; i < g.n_points(); ++i) {
        const double x = g.node(i);
        xg[i] = x * g.values[i];
        x2g[i] = x * x * g.values[i];
    }
    MomentSummary m;
    m.mean = trapezoid(xg, h);
    m.variance = trapezoid(x2g, h) - m.mean * m.mean;
    return m;
}

GridDensity scale(const GridDensity& g, double a) {
    if (a == 0.0) throw std::invalid_argument("scale: factor must be nonzero");
    GridDensity out;
    const double x0 = g.lo * a, x1 = g.hi * a;
    out.lo = std::min(x0, x1);
    out.hi = std::max(x0, x1);
    out.tail_mass = g.tail_mass;
    out.values.resize(g.n_points());
    const double inv = 1.0 / std::abs(a);
    if (a > 0.0) {
        for (int i = 0; i < g.n_points(); ++i) out.values[i] = g.values[i] * inv;
    } else {
        for (int i = 0; i < g.n_points(); ++i)
            out.values[i] = g.values[g.n_points() - 1 - i] * inv;
    }
    return out;
}

GridDensity shift(const GridDensity& g, double b) {
    GridDensity out = g;
    out.lo += b;
    out.hi += b;
    return out;
}

GridDensity standardize_affine(const GridDensity& g) {
    const MomentSummary m = moments(g);
    if (!(m.variance > 0.0))
        throw std::domain_error("standardize: variance must be positive");
    const double s = std::sqrt(m.variance);
    GridDensity out;
    out.lo = (g.lo - m.mean) / s;
    out.hi = (g.hi - m.mean) / s;
    out.tail_mass = g.tail_mass;
    out.values.resize(g.n_points());
    for (int i = 0; i < g.n_points(); ++i) out.values[i] = g.values[i] * s;
    return out;
}

GridDensity resample(const GridDensity& g, double lo, double hi, int n_points) {
    if (n_points < 2) throw std::invalid_argument("resample: need >= 2 nodes");
    if (!(hi > lo)) throw std::invalid_argument("resample: empty interval");
    GridDensity out;
    out.lo = lo;
    out.hi = hi;
    out.tail_mass = g.tail_mass;
    out.values.resize(n_points);
    const double hsrc = g.spacing();
    for (int i = 0; i < n_points; ++i) {
        const double x = lo + (hi - lo) * i / (n_points - 1);
        const double s = (x - g.lo) / hsrc;
        double v = 0.0;
        if (s >= 0.0 && s <= g.n_points() - 1) {
            const int k = std::min(int(s), g.n_points() - 2);
            const double f = s - k;
            v = (1.0 - f) * g.values[k] + f * g.values[k + 1];
        }
        out.values[i] = std::max(v, 0.0);
    }
    return normalize(std::move(out));
}

GridDensity standardize(const GridDensity& g) {
    const GridDensity aff = standardize_affine(g);
    return resample(aff, aff.lo, aff.hi, aff.n_points());
}

GridDensity resample_trimmed(const GridDensity& g, int n_intervals,
                             double rel_cut) {
    const double cut = rel_cut * g.max_value();
    int i0 = 0, i1 = g.n_points() - 1;
    while (i0 < i1 && g.values[i0] < cut) ++i0;
    while (i1 > i0 && g.values[i1] < cut) --i1;
    if (i1 - i0 < 1)
        throw std::domain_error("resample_trimmed: support collapsed");
    return resample(g, g.node(i0), g.node(i1), n_intervals + 1);
}

namespace {

struct DomainChoice {
    double half_width = 0.0;
    double tail = 0.0;
};

// Double the half-width until the extrapolated tail estimate falls below
// 1e-10 of the mass, the edge density falls below 1e-14 of the peak, or
// the cap is reached.
DomainChoice choose_domain(const std::function<double(double)>& pdf,
                           double center, double scale_hint, double cap) {
    constexpr int kProbe = 8193;
    auto probe_mass = [&](double w) {
        const double h = 2.0 * w / (kProbe - 1);
        double s = 0.0, first = 0.0, last = 0.0;
        for (int i = 0; i < kProbe; ++i) {
            const double v = pdf(center - w + h * i);
            if (!std::isfinite(v))
                throw std::domain_error("build_from_pdf: pdf returned a "
                                        "nonfinite value");
            if (v < 0.0)
                throw std::domain_error("build_from_pdf: pdf returned a "
                                        "negative value");
            s += v;
            if (i == 0) first = v;
            if (i == kProbe - 1) last = v;
        }
        return h * (s - 0.5 * (first + last));
    };

    double w = std::min(scale_hint, cap);
    double mass = probe_mass(w);
    double inc_prev = -1.0;
    for (;;) {
        const double w2 = std::min(2.0 * w, cap);
        const double mass2 = probe_mass(w2);
        const double inc = mass2 - mass;
        double tail = std::abs(inc);
        if (inc_prev > 0.0 && inc < inc_prev) {
            const double r = inc / inc_prev;
            tail = (r < 0.9) ? inc * r / (1.0 - r) + inc : inc * 10.0;
        }
        const double edge =
            std::max(pdf(center - w2), pdf(center + w2));
        const double peak = pdf(center);
        if (tail < 1e-10 * std::max(mass2, 1e-300) || w2 >= cap ||
            edge < 1e-14 * peak) {
            return {w2, std::max(tail, 0.0)};
        }
        w = w2;
        mass = mass2;
        inc_prev = inc;
    }
}

}  // namespace

GridDensity build_from_pdf(const std::function<double(double)>& pdf,
                           double center_hint, double scale_hint,
                           int n_intervals, double domain_cap) {
    if (n_intervals < 63)
        throw std::invalid_argument("build_from_pdf: need >= 63 intervals");
    if (!(scale_hint > 0.0))
        throw std::invalid_argument("build_from_pdf: scale_hint must be > 0");
    const DomainChoice dom =
        choose_domain(pdf, center_hint, scale_hint, domain_cap);
    GridDensity g;
    g.lo = center_hint - dom.half_width;
    g.hi = center_hint + dom.half_width;
    g.tail_mass = dom.tail;
    g.values.resize(n_intervals + 1);
    for (int i = 0; i <= n_intervals; ++i) {
        const double v = pdf(g.node(i));
        if (!std::isfinite(v) || v < 0.0)
            throw std::domain_error("build_from_pdf: invalid pdf value");
        g.values[i] = v;
    }
    return normalize(std::move(g));
}

ProductMeasure product_of(std::vector<GridDensity> coords) {
    if (coords.empty())
        throw std::invalid_argument("product_of: need at least one coordinate");
    ProductMeasure m;
    bool iid = true;
    for (std::size_t k = 1; k < coords.size() && iid; ++k) {
        const GridDensity& a = coords[0];
        const GridDensity& b = coords[k];
        iid = a.lo == b.lo && a.hi == b.hi && a.values == b.values;
    }
    m.coords = std::move(coords);
    m.iid_flag = iid;
    return m;
}

}  // namespace entclt
