#include "config.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace entclt::cli {

namespace {

using nlohmann::json;

DistributionSpec parse_family(const json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw ConfigError("each families entry needs a \"family\" key");
    const std::string family = j.at("family").get<std::string>();
    std::set<std::string> allowed{"family"};
    DistributionSpec spec;
    if (family == "gaussian") {
        spec = DistributionSpec::make_gaussian();
    } else if (family == "generalized_gaussian") {
        allowed.insert("beta");
        if (!j.contains("beta"))
            throw ConfigError("generalized_gaussian needs \"beta\"");
        spec = DistributionSpec::make_generalized_gaussian(
            j.at("beta").get<double>());
    } else if (family == "student_t") {
        allowed.insert("theta");
        if (!j.contains("theta")) throw ConfigError("student_t needs \"theta\"");
        spec = DistributionSpec::make_student_t(j.at("theta").get<double>());
    } else if (family == "uniform_sqrt3") {
        spec = DistributionSpec::make_uniform_sqrt3();
    } else if (family == "gaussian_mixture") {
        allowed.insert("weights");
        allowed.insert("means");
        allowed.insert("sds");
        if (!j.contains("weights") || !j.contains("means") || !j.contains("sds"))
            throw ConfigError(
                "gaussian_mixture needs \"weights\", \"means\", \"sds\"");
        spec = DistributionSpec::make_gaussian_mixture(
            j.at("weights").get<std::vector<double>>(),
            j.at("means").get<std::vector<double>>(),
            j.at("sds").get<std::vector<double>>());
    } else {
        throw ConfigError("unknown family \"" + family + "\"");
    }
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw ConfigError("unknown key \"" + key + "\" in family \"" +
                              family + "\"");
    return spec;
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults() {
    ExperimentConfig cfg;
    cfg.families = {DistributionSpec::make_gaussian(),
                    DistributionSpec::make_generalized_gaussian(3.0),
                    DistributionSpec::make_generalized_gaussian(4.0),
                    DistributionSpec::make_student_t(6.0)};
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be an object");

    ExperimentConfig cfg = ExperimentConfig::defaults();
    const std::set<std::string> known{"families", "d_list",    "n_list",
                                      "t_nodes",  "n_points",  "tolerance",
                                      "jobs",     "seed",      "checks"};
    for (const auto& [key, value] : doc.items())
        if (!known.count(key))
            throw ConfigError("unknown config key \"" + key + "\"");

    try {
        if (doc.contains("families")) {
            cfg.families.clear();
            for (const auto& f : doc.at("families"))
                cfg.families.push_back(parse_family(f));
        }
        if (doc.contains("d_list"))
            cfg.d_list = doc.at("d_list").get<std::vector<int>>();
        if (doc.contains("n_list"))
            cfg.n_list = doc.at("n_list").get<std::vector<int>>();
        if (doc.contains("t_nodes"))
            cfg.t_nodes = doc.at("t_nodes").get<std::vector<double>>();
        if (doc.contains("n_points")) cfg.n_points = doc.at("n_points").get<int>();
        if (doc.contains("tolerance"))
            cfg.tolerance = doc.at("tolerance").get<double>();
        if (doc.contains("jobs")) cfg.jobs = doc.at("jobs").get<int>();
        if (doc.contains("seed")) cfg.seed = doc.at("seed").get<long>();
        if (doc.contains("checks"))
            cfg.checks = doc.at("checks").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field has wrong type: ") +
                          e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid family parameters: ") + e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("invalid family parameters: ") + e.what());
    }
    validate(cfg);
    return cfg;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.families.empty()) throw ConfigError("families must be nonempty");
    if (cfg.d_list.empty()) throw ConfigError("d_list must be nonempty");
    if (cfg.n_list.empty()) throw ConfigError("n_list must be nonempty");
    if (cfg.t_nodes.empty()) throw ConfigError("t_nodes must be nonempty");
    for (int d : cfg.d_list)
        if (d < 1) throw ConfigError("d_list entries must be >= 1");
    for (size_t i = 0; i < cfg.n_list.size(); ++i) {
        if (cfg.n_list[i] < 1) throw ConfigError("n_list entries must be >= 1");
        if (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1])
            throw ConfigError("n_list must be strictly increasing");
    }
    for (double t : cfg.t_nodes)
        if (!(t >= 0.0)) throw ConfigError("t_nodes entries must be >= 0");
    if (cfg.n_points < 1024 || (cfg.n_points & (cfg.n_points - 1)) != 0)
        throw ConfigError("n_points must be a power of two >= 1024");
    if (!(cfg.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
    if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
}

}  // namespace entclt::cli
