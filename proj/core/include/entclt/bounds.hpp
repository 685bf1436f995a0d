#pragma once

#include <string>
#include <vector>

#include "entclt/distributions.hpp"

namespace entclt {

// min{ f Ent(X1|Z), sqrt( d(R-1)/n * f J(X1) ) } with f = 2dR/(2dR+n-1).
// Throws for R < 1 (the variational lower bound makes R >= 1 for isotropic
// laws). Negative inputs from quadrature noise are clamped at 0.
double theorem1_bound(int d, int n, double r, double ent1, double j1);

// 2dR/(2dR + n - 1) * J(X1).
double propfi_bound(int d, int n, double r, double j1);

struct Cfp19Bound {
    double value = 0.0;
    bool sentinel = false;  // R at or below 1: the formula degenerates to a
                            // 0 * log(inf) form; comparisons skip the bound
};

// d(R-1)/(2n) * log(1 + J(X1) n / ((R-1) d)); 0 when J(X1) = 0.
Cfp19Bound cfp19_bound(int d, int n, double r, double j1);

struct Verdict {
    std::string name;   // one of a..g (see run_suite)
    bool skipped = false;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
    double slack = 0.0;  // bound - measured
};

struct BoundReport {
    std::string family;
    int d = 0;
    int n = 0;
    int n_points = 0;       // grid intervals used for the base density
    double measured_ent = 0.0;
    double measured_j = 0.0;
    double measured_w2sq = 0.0;
    double r_used = 0.0;      // c_p inflated by 1% (upper-bound direction)
    double r_deflated = 0.0;  // c_p deflated by 1% (for R-1 factors)
    double ent1 = 0.0;        // per-coordinate Ent(X1|Z)
    double j1 = 0.0;          // per-coordinate J(X1)
    double bound_thm1 = 0.0;
    double bound_propfi = 0.0;
    double bound_cfp19 = 0.0;
    bool cfp19_skipped = false;
    double bound_logsobolev = 0.0;
    double bound_hwi = 0.0;
    double bound_lemma33 = 0.0;
    double tolerance = 0.0;
    std::vector<Verdict> verdicts;
    bool pass = false;  // all non-skipped verdicts pass
};

struct SuiteOptions {
    int n_intervals = 4096;
    double tolerance = 1e-4;
    bool strict = false;  // zero comparison slack
};

// For each (d, n): build the per-coordinate Z_n density, measure Ent, J,
// W2^2 (scaled by d via product additivity), and compare against each
// bound:
//   a  measured_ent  <= theorem1_bound
//   b  measured_j    <= propfi_bound
//   c  measured_ent  <= measured_j / 2          (log-Sobolev)
//   d  measured_ent  <= sqrt(w2sq * measured_j) (HWI, weak form)
//   e  measured_w2sq <= d (R - 1) / n           (deflated R)
//   f  measured_w2sq <= measured_j
//   g  measured_ent  <= cfp19_bound             (skipped unless R > 1.01)
// Rows are ordered by (d, n) with n_list and d_list in the given order.
std::vector<BoundReport> run_suite(const DistributionSpec& spec,
                                   const std::vector<int>& d_list,
                                   const std::vector<int>& n_list,
                                   const SuiteOptions& opts);

}  // namespace entclt
