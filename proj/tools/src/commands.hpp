#pragma once

#include <string>

#include "config.hpp"

namespace entclt::cli {

// Each command writes <name>.csv and <name>.json into out_dir and returns
// the process exit code: 0 all verdicts pass, 1 at least one verdict
// failed. Configuration and runtime errors are thrown (mapped to 2 by the
// driver).
int cmd_profile(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_clt(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_flow(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_poincare(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_verify(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace entclt::cli
