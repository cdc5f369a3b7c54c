#pragma once

#include <string>

#include "mwave/config.hpp"

namespace mwave::cli {

// Batch pipelines behind the subcommands. All of them write their outputs
// under out_dir and return 0 on success; failures surface as mwave::Error.
int cmd_simulate(const RunConfig& cfg, const std::string& out_dir);
int cmd_image(const RunConfig& cfg, const std::string& out_dir);
int cmd_sweep_depth(const RunConfig& cfg, const std::string& out_dir);
int cmd_sar(const RunConfig& cfg, const std::string& out_dir);

int cmd_design_patch(double f0, double eps_r, double h, const std::string& out_dir);
int cmd_design_monopole(double f_low, double eps_r, const std::string& out_dir);
int cmd_metrics_vswr(double s11_db);
int cmd_metrics_bandwidth(const std::string& csv_path, double threshold_db);

}  // namespace mwave::cli
