#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "entclt: a grid laboratory for entropy, Fisher information, "
        "Poincare constants and transport distances of 1-D product laws"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir = "out";
    int jobs = 0;
    int n_points = 0;
    bool strict = false;
    app.add_option("--config", config_path, "JSON experiment config");
    app.add_option("--out", out_dir, "report output directory");
    app.add_option("--jobs", jobs, "worker threads (>= 1)");
    app.add_option("--n-points", n_points,
                   "grid intervals, a power of two >= 1024");
    app.add_flag("--strict", strict, "zero comparison slack on verdicts");

    CLI::App* sub_profile = app.add_subcommand(
        "profile", "entropy/Fisher profile of each configured family");
    CLI::App* sub_clt = app.add_subcommand(
        "clt", "normalized-sum sweep with every bound verdict");
    CLI::App* sub_flow = app.add_subcommand(
        "flow", "interpolation-flow traces with dissipation residuals");
    CLI::App* sub_verify = app.add_subcommand(
        "verify", "full invariant battery across all modules");
    CLI::App* sub_poincare = app.add_subcommand(
        "poincare", "spectral-gap constants with two-sided bounds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    using namespace entclt::cli;
    try {
        ExperimentConfig cfg = config_path.empty()
                                   ? ExperimentConfig::defaults()
                                   : load_config(config_path);
        if (jobs > 0) cfg.jobs = jobs;
        if (n_points > 0) cfg.n_points = n_points;
        if (strict) cfg.strict = true;
        validate(cfg);

        if (sub_profile->parsed()) return cmd_profile(cfg, out_dir);
        if (sub_clt->parsed()) return cmd_clt(cfg, out_dir);
        if (sub_flow->parsed()) return cmd_flow(cfg, out_dir);
        if (sub_verify->parsed()) return cmd_verify(cfg, out_dir);
        if (sub_poincare->parsed()) return cmd_poincare(cfg, out_dir);
        std::fprintf(stderr, "error: no subcommand selected\n");
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
