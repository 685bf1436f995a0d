#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "entclt/distributions.hpp"

namespace entclt::cli {

// Raised for malformed or out-of-contract configuration; mapped to exit
// code 2 by the driver.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::vector<DistributionSpec> families;
    std::vector<int> d_list{1, 2, 3};
    std::vector<int> n_list{1, 2, 4, 8, 16, 32};
    std::vector<double> t_nodes{0.1, 0.5, 1.0};
    int n_points = 4096;  // grid intervals; power of two >= 1024
    double tolerance = 1e-4;
    int jobs = 1;
    long seed = 0;                    // reserved; pipeline is deterministic
    std::vector<std::string> checks;  // verify-check name prefixes; empty = all
    bool strict = false;              // zero comparison slack

    static ExperimentConfig defaults();
};

// Parse and validate a JSON config document. Unknown keys are rejected so
// typos fail loudly. Throws ConfigError.
ExperimentConfig load_config(const std::string& path);

// Post-override validation (flags may change n_points/jobs after load).
void validate(const ExperimentConfig& cfg);

}  // namespace entclt::cli
