// Acceptance gate for the numerical laboratory. Each criterion prints one
// [PASS]/[FAIL] line; the process exits 0 only if every criterion passes.
// Tolerances are pinned here, next to the checks they guard.
//
// Usage: acceptance <path-to-entclt-cli> <scratch-dir>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "entclt/bounds.hpp"
#include "entclt/convolve.hpp"
#include "entclt/distributions.hpp"
#include "entclt/functionals.hpp"
#include "entclt/grid.hpp"
#include "entclt/ou_flow.hpp"
#include "entclt/poincare.hpp"
#include "entclt/projection.hpp"
#include "entclt/quadrature.hpp"
#include "entclt/transport.hpp"

using namespace entclt;

namespace {

constexpr int kIntervals = 4096;

struct Failure : std::runtime_error {
    explicit Failure(const std::string& msg) : std::runtime_error(msg) {}
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Shared state: densities and sweep reports are built once and reused.
struct Context {
    std::string cli_path;
    std::string scratch;

    std::map<std::string, GridDensity> dens;
    std::map<std::string, std::vector<BoundReport>> suites;

    const GridDensity& density(const DistributionSpec& sp) {
        auto it = dens.find(sp.name());
        if (it == dens.end())
            it = dens.emplace(sp.name(), make_density(sp, kIntervals)).first;
        return it->second;
    }

    const std::vector<BoundReport>& suite(const DistributionSpec& sp) {
        auto it = suites.find(sp.name());
        if (it == suites.end()) {
            SuiteOptions opts;
            opts.n_intervals = kIntervals;
            opts.tolerance = 1e-4;
            it = suites
                     .emplace(sp.name(),
                              run_suite(sp, {1, 2, 3}, {1, 2, 4, 8, 16, 32}, opts))
                     .first;
        }
        return it->second;
    }
};

std::vector<DistributionSpec> sweep_families() {
    return {DistributionSpec::make_generalized_gaussian(3.0),
            DistributionSpec::make_generalized_gaussian(4.0),
            DistributionSpec::make_student_t(6.0)};
}

const Verdict& verdict(const BoundReport& row, const std::string& name) {
    for (const Verdict& v : row.verdicts)
        if (v.name == name) return v;
    throw Failure("missing verdict " + name);
}

// ---------------------------------------------------------------------------
// Criterion 1/2: grid information functionals against the closed forms.

std::string crit_power_family_information(Context& ctx) {
    double worst = 0.0;
    for (double beta : {1.5, 2.0, 3.0, 4.0}) {
        const double want = closed_form_j_beta(beta);
        const double got = relative_fisher(
            ctx.density(DistributionSpec::make_generalized_gaussian(beta)));
        if (beta == 2.0) {
            require(std::abs(got) < 1e-8 && std::abs(want) < 1e-12,
                    "shape 2 must carry zero relative information, got " + fmt(got));
            continue;
        }
        const double rel = std::abs(got - want) / want;
        worst = std::max(worst, rel);
        require(rel <= 1e-5, "shape " + fmt(beta) + " rel err " + fmt(rel));
    }
    // Large-shape asymptote: the closed form approaches beta / 3.
    const double j50 = closed_form_j_beta(50.0);
    require(std::abs(j50 - 50.0 / 3.0) <= 0.15 * (50.0 / 3.0),
            "shape 50 closed form " + fmt(j50) + " is far from beta/3");
    return "worst rel err " + fmt(worst);
}

std::string crit_heavy_tail_information(Context& ctx) {
    require(std::abs(closed_form_j_theta(5.0) - 0.25) < 1e-14,
            "closed form at tail index 5 must be exactly 1/4");
    double worst = 0.0;
    for (double theta : {4.0, 5.0, 10.0}) {
        const double want = closed_form_j_theta(theta);
        const double got =
            relative_fisher(ctx.density(DistributionSpec::make_student_t(theta)));
        const double rel = std::abs(got - want) / want;
        worst = std::max(worst, rel);
        require(rel <= 1e-4,
                "tail index " + fmt(theta) + " rel err " + fmt(rel));
    }
    return "worst rel err " + fmt(worst);
}

// ---------------------------------------------------------------------------
// Criterion 3/4: the two headline bounds across the full lattice.

std::string crit_sum_entropy_bound(Context& ctx) {
    int cells = 0;
    double worst = 1e300;
    for (const DistributionSpec& sp : sweep_families())
        for (const BoundReport& row : ctx.suite(sp)) {
            const Verdict& v = verdict(row, "a");
            require(!v.skipped && v.pass,
                    sp.name() + " d=" + std::to_string(row.d) + " n=" +
                        std::to_string(row.n) + " slack " + fmt(v.slack));
            worst = std::min(worst, v.slack);
            ++cells;
        }
    return std::to_string(cells) + " cells, smallest slack " + fmt(worst);
}

std::string crit_sum_information_bound(Context& ctx) {
    int cells = 0;
    double worst = 1e300;
    for (const DistributionSpec& sp : sweep_families())
        for (const BoundReport& row : ctx.suite(sp)) {
            const Verdict& v = verdict(row, "b");
            require(!v.skipped && v.pass,
                    sp.name() + " d=" + std::to_string(row.d) + " n=" +
                        std::to_string(row.n) + " slack " + fmt(v.slack));
            worst = std::min(worst, v.slack);
            ++cells;
        }
    return std::to_string(cells) + " cells, smallest slack " + fmt(worst);
}

// ---------------------------------------------------------------------------
// Criterion 5: the scaled entropy n * Ent stays controlled along the sweep.

std::string crit_entropy_rate_shape(Context& ctx) {
    const std::vector<BoundReport>& rows =
        ctx.suite(DistributionSpec::make_generalized_gaussian(4.0));
    std::vector<double> scaled;
    for (const BoundReport& row : rows)
        if (row.d == 1 && row.n >= 4) scaled.push_back(row.n * row.measured_ent);
    require(scaled.size() == 4, "expected the n = 4..32 rows at d = 1");
    for (std::size_t i = 1; i < scaled.size(); ++i)
        require(scaled[i] <= 1.2 * scaled[i - 1],
                "scaled entropy grew by more than 20% at step " +
                    std::to_string(i) + " (" + fmt(scaled[i - 1]) + " -> " +
                    fmt(scaled[i]) + ")");
    return "n*Ent: " + fmt(scaled[0]) + " -> " + fmt(scaled.back());
}

// ---------------------------------------------------------------------------
// Criterion 6/7/8: the diffusion flow identities and inequalities.

std::string crit_entropy_dissipation_balance(Context& ctx) {
    double worst = 0.0;
    for (const DistributionSpec& sp :
         {DistributionSpec::make_generalized_gaussian(4.0),
          DistributionSpec::make_student_t(10.0)}) {
        const FlowTrace tr = flow_trace(ctx.density(sp), {0.1, 0.5, 1.0});
        for (double r : tr.debruijn_residuals) {
            worst = std::max(worst, r);
            require(r < 1e-3, sp.name() + " balance residual " + fmt(r));
        }
    }
    const FlowTrace null_tr =
        flow_trace(ctx.density(DistributionSpec::make_gaussian()), {0.5, 1.0});
    for (double r : null_tr.debruijn_residuals)
        require(r < 1e-8, "stationary law residual " + fmt(r));
    return "worst residual " + fmt(worst);
}

std::string crit_information_decay(Context& ctx) {
    double worst = 1e300;
    for (const DistributionSpec& sp :
         {DistributionSpec::make_generalized_gaussian(3.0),
          DistributionSpec::make_generalized_gaussian(4.0),
          DistributionSpec::make_student_t(8.0)}) {
        for (auto [t, slack] :
             fisher_decay_check(ctx.density(sp), {0.1, 0.5, 1.0, 2.0})) {
            worst = std::min(worst, slack);
            require(slack >= -1e-5,
                    sp.name() + " t=" + fmt(t) + " slack " + fmt(slack));
        }
    }
    return "smallest slack " + fmt(worst);
}

std::string crit_entropy_cost_decomposition(Context& ctx) {
    const GridDensity& z = ctx.density(DistributionSpec::make_gaussian());
    double worst = 1e300;
    for (const DistributionSpec& sp :
         {DistributionSpec::make_generalized_gaussian(3.0),
          DistributionSpec::make_generalized_gaussian(4.0),
          DistributionSpec::make_student_t(8.0)}) {
        const GridDensity& g = ctx.density(sp);
        const double w2sq = w2_squared_1d(g, z);
        for (double t : {0.2, 0.5, 1.0}) {
            const double slack = entropy_cost_check(g, t, w2sq);
            worst = std::min(worst, slack);
            require(slack >= -1e-5,
                    sp.name() + " t=" + fmt(t) + " slack " + fmt(slack));
        }
        // The optimized decomposition must close onto its closed form and
        // still dominate the entropy.
        const double ent = relative_entropy_to_gaussian(g);
        const double j = relative_fisher(g);
        const double w2 = std::sqrt(w2sq);
        require(w2 < std::sqrt(j), sp.name() + ": transport reached the "
                                               "information radius");
        const double opt = hwi_value(w2, j);
        const double t_star = hwi_optimal_time(w2, j);
        const double at_star = ent_w2_fi_bound(g, t_star, w2sq);
        require(std::abs(at_star - opt) <= 1e-5,
                sp.name() + " decomposition gap " + fmt(at_star - opt));
        require(ent <= opt + 1e-5,
                sp.name() + " entropy exceeds the optimized bound by " +
                    fmt(ent - opt));
    }
    return "smallest slack " + fmt(worst);
}

// ---------------------------------------------------------------------------
// Criterion 9: the full comparison chain on every lattice cell.

std::string crit_comparison_chain(Context& ctx) {
    int cells = 0;
    for (const DistributionSpec& sp : sweep_families())
        for (const BoundReport& row : ctx.suite(sp)) {
            const std::string where = sp.name() + " d=" + std::to_string(row.d) +
                                      " n=" + std::to_string(row.n);
            for (const char* name : {"c", "d", "e", "f", "g"}) {
                const Verdict& v = verdict(row, name);
                require(v.skipped || v.pass,
                        where + " link " + name + " slack " + fmt(v.slack));
            }
            // Transport-entropy link, assembled from the row measurements.
            require(row.measured_w2sq <= 2.0 * row.measured_ent + 1e-4,
                    where + " transport cost exceeds twice the entropy");
            ++cells;
        }
    return std::to_string(cells) + " cells, five links plus transport";
}

// ---------------------------------------------------------------------------
// Criterion 10: spectral constants, with an independent eigen oracle.

// Inverse power iteration with a Thomas tridiagonal solve on the weighted
// Neumann pair (A, M), deflating the constant mode. Assembled directly from
// the density, independently of the library eigensolver.
double inverse_iteration_constant(const GridDensity& g) {
    const int n_all = g.n_points();
    const double cut = 1e-10 * g.max_value();
    int first = 0, last = n_all - 1;
    while (first < n_all && g.values[first] < cut) ++first;
    while (last >= 0 && g.values[last] < cut) --last;
    const int n = last - first + 1;
    require(n >= 8, "oracle: effective support too small");
    const double h = g.spacing();

    std::vector<double> p(g.values.begin() + first, g.values.begin() + last + 1);
    std::vector<double> half(n - 1);
    for (int i = 0; i + 1 < n; ++i) half[i] = 0.5 * (p[i] + p[i + 1]) / h;
    std::vector<double> mass = trapezoid_weights(n, h);
    for (int i = 0; i < n; ++i) mass[i] *= p[i];

    // A f = lambda M f with A = Neumann stiffness, M = diag(mass). The
    // shift must clear the solver's backward error at this matrix scale yet
    // stay far below the gap; the constant mode is removed after every solve.
    const double shift = 1e-2;
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) {
        diag[i] = shift * mass[i];
        if (i > 0) diag[i] += half[i - 1];
        if (i + 1 < n) diag[i] += half[i];
    }

    double mass_total = 0.0;
    for (int i = 0; i < n; ++i) mass_total += mass[i];

    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) f[i] = g.node(first + i);

    const auto deflate = [&](std::vector<double>& v) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += mass[i] * v[i];
        const double c = dot / mass_total;
        for (int i = 0; i < n; ++i) v[i] -= c;
    };
    const auto rayleigh = [&](const std::vector<double>& v) {
        double num = 0.0, den = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            const double d = v[i + 1] - v[i];
            num += half[i] * d * d;
        }
        for (int i = 0; i < n; ++i) den += mass[i] * v[i] * v[i];
        return num / den;
    };

    deflate(f);
    std::vector<double> rhs(n), cp(n), dp(n);
    double lambda = rayleigh(f);
    for (int iter = 0; iter < 400; ++iter) {
        for (int i = 0; i < n; ++i) rhs[i] = mass[i] * f[i];
        // Thomas elimination on the shifted tridiagonal system.
        cp[0] = -half[0] / diag[0];
        dp[0] = rhs[0] / diag[0];
        for (int i = 1; i < n; ++i) {
            const double sub = -half[i - 1];
            const double denom = diag[i] - sub * cp[i - 1];
            cp[i] = (i + 1 < n) ? -half[i] / denom : 0.0;
            dp[i] = (rhs[i] - sub * dp[i - 1]) / denom;
        }
        f[n - 1] = dp[n - 1];
        for (int i = n - 2; i >= 0; --i) f[i] = dp[i] - cp[i] * f[i + 1];
        deflate(f);
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += mass[i] * f[i] * f[i];
        norm = std::sqrt(norm);
        require(norm > 0.0, "oracle: iteration collapsed");
        for (int i = 0; i < n; ++i) f[i] /= norm;
        const double next = rayleigh(f);
        const bool settled = std::abs(next - lambda) <= 1e-13 * next;
        lambda = next;
        if (settled && iter > 4) break;
    }
    require(lambda > 0.0, "oracle: nonpositive spectral gap");
    return 1.0 / lambda;
}

std::string crit_spectral_constants(Context& ctx) {
    const double kUniformConstant = 1.2158542037080533;  // 12 / pi^2
    const GridDensity& gauss = ctx.density(DistributionSpec::make_gaussian());
    const GridDensity& uni = ctx.density(DistributionSpec::make_uniform_sqrt3());

    const PoincareEstimate eg = spectral_gap_1d(gauss);
    require(std::abs(eg.c_p - 1.0) <= 0.01,
            "gaussian constant " + fmt(eg.c_p) + " is off by more than 1%");
    require(eg.converged, "gaussian estimate did not converge");
    const PoincareEstimate eu = spectral_gap_1d(uni);
    require(std::abs(eu.c_p - kUniformConstant) <= 0.01 * kUniformConstant,
            "uniform constant " + fmt(eu.c_p) + " is off by more than 1%");

    // The independent solver route must land on the same constants and hit
    // the closed forms on its own.
    const double og = inverse_iteration_constant(gauss);
    require(std::abs(og - eg.c_p) <= 5e-3 * eg.c_p,
            "solver disagreement on the gaussian: " + fmt(og) + " vs " +
                fmt(eg.c_p));
    require(std::abs(og - 1.0) <= 0.01,
            "independent gaussian constant " + fmt(og) + " is off by more than 1%");
    const double ou = inverse_iteration_constant(uni);
    require(std::abs(ou - eu.c_p) <= 5e-3 * eu.c_p,
            "solver disagreement on the uniform: " + fmt(ou) + " vs " +
                fmt(eu.c_p));
    require(std::abs(ou - kUniformConstant) <= 0.01 * kUniformConstant,
            "independent uniform constant " + fmt(ou) + " is off by more than 1%");

    // Variance floor and the two-sided Hardy sandwich.
    for (const DistributionSpec& sp :
         {DistributionSpec::make_gaussian(),
          DistributionSpec::make_generalized_gaussian(3.0),
          DistributionSpec::make_generalized_gaussian(4.0),
          DistributionSpec::make_student_t(6.0)}) {
        const GridDensity& g = ctx.density(sp);
        const double cp = spectral_gap_1d(g).c_p;
        require(cp >= moments(g).variance - 1e-3,
                sp.name() + ": constant fell below the variance");
        const double b = muckenhoupt_b(g);
        require(b <= cp + 1e-3 && cp <= 4.0 * b + 1e-3,
                sp.name() + ": sandwich violated (B=" + fmt(b) +
                    ", c_p=" + fmt(cp) + ")");
    }
    const GridDensity& u = ctx.density(DistributionSpec::make_uniform_sqrt3());
    require(eu.c_p >= moments(u).variance - 1e-3,
            "uniform: constant fell below the variance");
    return "gaussian " + fmt(eg.c_p) + ", uniform " + fmt(eu.c_p) +
           ", oracle gap " + fmt(std::abs(og - eg.c_p));
}

// ---------------------------------------------------------------------------
// Criterion 11: the two-summand projection decomposition.

std::string crit_projection_decomposition(Context& ctx) {
    double worst_identity = 0.0;
    for (const DistributionSpec& sp :
         {DistributionSpec::make_gaussian(),
          DistributionSpec::make_generalized_gaussian(3.0),
          DistributionSpec::make_generalized_gaussian(4.0)}) {
        const ProjectionReport rep = projection_report_n2(ctx.density(sp));
        const std::string where = sp.name() + ": ";
        require(rep.identity_residual < 1e-4,
                where + "projection identity residual " +
                    fmt(rep.identity_residual));
        worst_identity = std::max(worst_identity, rep.identity_residual);
        require(std::abs(rep.delta2 - rep.ridge_minus_additive) <=
                    1e-3 * std::max(rep.delta2, 1e-7),
                where + "telescoping routes disagree");
        require(std::abs(rep.pythagoras_residual) <=
                    1e-3 * std::max(rep.j_z2, 1e-7),
                where + "orthogonal split residual " +
                    fmt(rep.pythagoras_residual));
        require(std::abs(rep.m_scalar + rep.i_z2) < 1e-3,
                where + "trace identity residual " +
                    fmt(rep.m_scalar + rep.i_z2));
        require(rep.cauchy_schwarz_slack >= -1e-4,
                where + "projection norm slack " + fmt(rep.cauchy_schwarz_slack));
        require(rep.lower_bound_slack >= -1e-4,
                where + "defect lower bound slack " + fmt(rep.lower_bound_slack));
        require(prop_fi_chain_check_n2(rep, rep.r_used) >= -1e-4,
                where + "information chain slack");
        if (sp.family == Family::gaussian) {
            // Linear case: the defect and the centered statistic vanish.
            require(rep.identity_residual < 1e-5,
                    where + "identity residual above the linear budget");
            require(rep.delta2 < 1e-5, where + "nonzero defect " + fmt(rep.delta2));
            require(rep.e_vhat_sq < 1e-5, where + "nonzero statistic norm");
            require(std::abs(rep.orthogonality) < 1e-5,
                    where + "orthogonality residual " + fmt(rep.orthogonality));
        }
    }
    return "worst identity residual " + fmt(worst_identity);
}

// ---------------------------------------------------------------------------
// Criterion 12: score moment identities across the corpus.

std::string crit_score_moments(Context& ctx) {
    double worst = 0.0;
    for (const DistributionSpec& sp :
         {DistributionSpec::make_gaussian(),
          DistributionSpec::make_generalized_gaussian(3.0),
          DistributionSpec::make_generalized_gaussian(4.0),
          DistributionSpec::make_student_t(6.0),
          DistributionSpec::make_student_t(8.0),
          DistributionSpec::make_gaussian_mixture({0.6, 0.4}, {-0.8, 1.2},
                                                  {0.9, 0.7})}) {
        const auto [m0, m1] = score_moments(ctx.density(sp));
        const double err = std::max(std::abs(m0), std::abs(m1 + 1.0));
        worst = std::max(worst, err);
        require(err < 1e-4, sp.name() + " moment error " + fmt(err));
    }
    return "worst moment error " + fmt(worst);
}

// ---------------------------------------------------------------------------
// Criterion 13: the command line contract.

int run_cli(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    require(rc != -1, "failed to spawn: " + cmd);
    require(WIFEXITED(rc), "abnormal exit: " + cmd);
    return WEXITSTATUS(rc);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(bool(in), "missing report file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string crit_cli_contract(Context& ctx) {
    require(!ctx.cli_path.empty() &&
                std::filesystem::exists(ctx.cli_path),
            "command line binary not found at '" + ctx.cli_path + "'");
    namespace fs = std::filesystem;
    const fs::path scratch = ctx.scratch;
    fs::remove_all(scratch);
    fs::create_directories(scratch);
    const std::string quiet = " > " + (scratch / "log.txt").string() + " 2>&1";

    // Repeated runs with different worker counts must agree byte for byte.
    const fs::path out_a = scratch / "a", out_b = scratch / "b";
    int code = run_cli(ctx.cli_path + " verify --jobs 1 --out " +
                       out_a.string() + quiet);
    require(code == 0, "first verify run exited " + std::to_string(code));
    code = run_cli(ctx.cli_path + " verify --jobs 4 --out " + out_b.string() +
                   quiet);
    require(code == 0, "second verify run exited " + std::to_string(code));
    for (const char* name : {"verify_report.csv", "verify_report.json"}) {
        const std::string a = slurp(out_a / name), b = slurp(out_b / name);
        require(!a.empty(), std::string(name) + " is empty");
        require(a == b, std::string(name) + " differs across worker counts");
    }

    // A config that does not parse is a usage error.
    const fs::path bad = scratch / "bad.json";
    std::ofstream(bad) << "{ this is not json";
    code = run_cli(ctx.cli_path + " verify --config " + bad.string() +
                   " --out " + (scratch / "bad_out").string() + quiet);
    require(code == 2, "malformed config exited " + std::to_string(code) +
                           ", want 2");

    // Strict mode removes the comparison slack; the stationary family sits
    // exactly on its bounds, so the run must report a verdict failure.
    code = run_cli(ctx.cli_path + " clt --strict --jobs 4 --out " +
                   (scratch / "strict").string() + quiet);
    require(code == 1, "strict comparison run exited " + std::to_string(code) +
                           ", want 1");
    return "determinism, usage errors, strict mode";
}

}  // namespace

int main(int argc, char** argv) {
    Context ctx;
    if (argc > 1) ctx.cli_path = argv[1];
    ctx.scratch = argc > 2 ? argv[2] : "acceptance_scratch";

    const std::vector<std::pair<std::string, std::function<std::string(Context&)>>>
        criteria = {
            {"closed-form information, power tail family",
             crit_power_family_information},
            {"closed-form information, heavy tail family",
             crit_heavy_tail_information},
            {"entropy bound for normalized sums", crit_sum_entropy_bound},
            {"information bound for normalized sums", crit_sum_information_bound},
            {"scaled entropy stays controlled", crit_entropy_rate_shape},
            {"entropy dissipation balance", crit_entropy_dissipation_balance},
            {"exponential information decay", crit_information_decay},
            {"entropy-transport-information decomposition",
             crit_entropy_cost_decomposition},
            {"comparison chain on every lattice cell", crit_comparison_chain},
            {"spectral constants and independent solver", crit_spectral_constants},
            {"projection decomposition at two summands",
             crit_projection_decomposition},
            {"score moment identities", crit_score_moments},
            {"command line contract", crit_cli_contract},
        };

    int passed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string note;
        bool ok = false;
        try {
            note = criteria[i].second(ctx);
            ok = true;
        } catch (const std::exception& e) {
            note = e.what();
        }
        std::printf("[%s] criterion %02zu: %s (%s)\n", ok ? "PASS" : "FAIL",
                    i + 1, criteria[i].first.c_str(), note.c_str());
        std::fflush(stdout);
        if (ok) ++passed;
    }
    std::printf("%d/%zu criteria passed\n", passed, criteria.size());
    return passed == int(criteria.size()) ? 0 : 1;
}
