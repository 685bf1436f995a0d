#include "entclt/convolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "entclt/fft.hpp"
#include "entclt/quadrature.hpp"

namespace entclt {

GridDensity convolve(const GridDensity& a, const GridDensity& b,
                     ConvolveInfo* info) {
    if (a.n_points() < 2 || b.n_points() < 2)
        throw std::invalid_argument("convolve: empty grid");
    const double ha = a.spacing();
    GridDensity bb;
    const GridDensity* pb = &b;
    if (std::abs(b.spacing() - ha) > 1e-9 * ha) {
        // Bring b onto a's spacing so the discrete convolution is exact in
        // the node indexing; the new node count covers b's full support.
        const int m = std::max(2, int(std::ceil((b.hi - b.lo) / ha)) + 1);
        bb = resample(b, b.lo, b.lo + ha * (m - 1), m);
        pb = &bb;
    }
    const std::vector<double> raw = convolve_real(a.values, pb->values);
    GridDensity out;
    out.lo = a.lo + pb->lo;
    out.values.resize(raw.size());
    double clamped = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double v = raw[i] * ha;
        if (v < 0.0) {
            clamped -= v;
            out.values[i] = 0.0;
        } else {
            out.values[i] = v;
        }
    }
    out.hi = out.lo + ha * (out.values.size() - 1);
    out.tail_mass = a.tail_mass + pb->tail_mass;
    clamped *= ha;
    if (clamped > 1e-9)
        throw std::domain_error(
            "convolve: clamped negative mass exceeds 1e-9 (insufficient "
            "resolution)");
    if (info) {
        info->raw_mass = trapezoid_mass(out) ;
        info->clamped_mass = clamped;
    }
    return normalize(std::move(out));
}

namespace {

// Raw n-fold sum density (no 1/sqrt(n) scaling), by binary decomposition
// with a shared power-of-two cache.
GridDensity raw_sum_density(const GridDensity& base, int n,
                            std::map<int, GridDensity>& pows) {
    if (pows.find(1) == pows.end()) pows.emplace(1, base);
    int top = 1;
    while (2 * top <= n) {
        if (pows.find(2 * top) == pows.end()) {
            const GridDensity& half = pows.at(top);
            pows.emplace(2 * top, convolve(half, half));
        }
        top *= 2;
    }
    GridDensity acc;
    bool have = false;
    for (int bit = 1, rem = n; rem; bit *= 2, rem >>= 1) {
        if (!(rem & 1)) continue;
        const GridDensity& part = pows.at(bit);
        acc = have ? convolve(acc, part) : part;
        have = true;
    }
    return acc;
}

GridDensity finalize_zn(GridDensity sum, int n, int base_points) {
    GridDensity z = scale(sum, 1.0 / std::sqrt(double(n)));
    // Keep the raw grid while it is small; past 6x the base resolution the
    // shrunken support wastes nodes, so trim and resample at 2x the base
    // interval count (resampling earlier would bias the variance).
    if (z.n_points() > 6 * base_points)
        z = resample_trimmed(z, 2 * (base_points - 1));
    return normalize(std::move(z));
}

}  // namespace

GridDensity clt_density(const GridDensity& base, int n) {
    if (n < 1) throw std::invalid_argument("clt_density: n must be >= 1");
    if (n == 1) return base;
    std::map<int, GridDensity> pows;
    return finalize_zn(raw_sum_density(base, n, pows), n, base.n_points());
}

CltSweep clt_sweep(const DistributionSpec& base, std::vector<int> n_list,
                   int d, int n_intervals) {
    if (n_list.empty()) throw std::invalid_argument("clt_sweep: empty n_list");
    if (d < 1) throw std::invalid_argument("clt_sweep: d must be >= 1");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 1)
            throw std::invalid_argument("clt_sweep: n must be >= 1");
        if (i && n_list[i] <= n_list[i - 1])
            throw std::invalid_argument(
                "clt_sweep: n_list must be strictly ascending");
    }
    if (!base.has_score())
        throw std::invalid_argument(
            "clt_sweep: family without a score is not admitted");

    CltSweep sweep;
    sweep.base = base;
    sweep.n_list = std::move(n_list);
    sweep.d = d;

    const GridDensity g = make_density(base, n_intervals);
    std::map<int, GridDensity> pows;
    for (int n : sweep.n_list) {
        GridDensity z = (n == 1)
                            ? g
                            : finalize_zn(raw_sum_density(g, n, pows), n,
                                          g.n_points());
        const MomentSummary m = moments(z);
        if (std::abs(m.mean) > 2e-4 || std::abs(m.variance - 1.0) > 2e-4)
            throw std::domain_error(
                "clt_sweep: normalization drifted past 2e-4 (grid too "
                "coarse)");
        sweep.densities.emplace(n, std::move(z));
    }
    return sweep;
}

}  // namespace entclt
