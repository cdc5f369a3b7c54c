#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "commands.hpp"
#include "mwave/config.hpp"
#include "mwave/errors.hpp"

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 ok, 2 config parse error, 3 unknown config key, 4 invariant violation,\n"
    "5 unknown tissue, 6 geometry error, 7 simulation diverged, 8 focusing delay outside\n"
    "record, 9 mismatched acquisition, 10 flat image, 11 non-physical design, 12 I/O error,\n"
    "64 usage error.";

mwave::RunConfig load(const std::string& config_path, int threads_flag) {
  mwave::RunConfig cfg =
      config_path.empty() ? mwave::default_config() : mwave::load_config_file(config_path);
  if (threads_flag > 0) cfg.threads = threads_flag;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mwave - 2D microwave breast imaging toolkit"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads_flag = 0;

  auto add_batch_options = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", config_path, "Config file ([section] / key = value)");
    cmd->add_option("-o,--out", out_dir, "Output directory")->required();
    cmd->add_option("-t,--threads", threads_flag, "Worker thread cap (also MWAVE_THREADS)");
  };

  auto* simulate = app.add_subcommand("simulate", "Run one FDTD acquisition, dump probe traces");
  add_batch_options(simulate);

  auto* image = app.add_subcommand(
      "image", "Acquire with/without tumor, calibrate, equalize, focus, detect");
  add_batch_options(image);

  auto* sweep = app.add_subcommand("sweep-depth", "Tumor-response energy versus tumor depth");
  add_batch_options(sweep);

  auto* sar = app.add_subcommand("sar", "Differential-SAR frequency selection and SAR map");
  add_batch_options(sar);

  auto* design = app.add_subcommand("design", "Analytic antenna design calculators");
  design->require_subcommand(1);
  std::string f0_text, h_text = "1.6mm", fl_text;
  double eps_r = 2.2;
  std::string design_out;
  auto* patch = design->add_subcommand("patch", "Six-step rectangular patch design");
  patch->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  patch->add_option("--f0", f0_text, "Resonant frequency (e.g. 2.45GHz)")->required();
  patch->add_option("--eps-r", eps_r, "Substrate relative permittivity")->required();
  patch->add_option("--h", h_text, "Substrate thickness (e.g. 1.6mm)");
  patch->add_option("-o,--out", design_out, "Also write the report here");

  std::string mono_out;
  double mono_eps = 1.0;
  auto* monopole = design->add_subcommand("monopole", "Printed monopole length rule");
  monopole->add_option("--fl", fl_text, "Lowest operating frequency (e.g. 2.8GHz)")->required();
  monopole->add_option("--eps-r", mono_eps, "Relative permittivity of the medium")->required();
  monopole->add_option("-o,--out", mono_out, "Also write the report here");

  auto* metrics = app.add_subcommand("metrics", "Return-loss scalar metrics");
  metrics->require_subcommand(1);
  double s11_db = 0.0;
  auto* vswr = metrics->add_subcommand("vswr", "VSWR from an S11 sample");
  vswr->add_option("--s11", s11_db, "S11 in dB (<= 0)")->required();

  std::string bw_csv;
  double bw_threshold = -10.0;
  auto* bandwidth = metrics->add_subcommand("bandwidth", "Threshold bands of an S11 curve");
  bandwidth->add_option("--csv", bw_csv, "Two-column CSV (freq_hz, s11_db)")->required();
  bandwidth->add_option("--threshold", bw_threshold, "Threshold in dB (default -10)");

  CLI11_PARSE(app, argc, argv);

  try {
    using namespace mwave::cli;
    if (simulate->parsed()) return cmd_simulate(load(config_path, threads_flag), out_dir);
    if (image->parsed()) return cmd_image(load(config_path, threads_flag), out_dir);
    if (sweep->parsed()) return cmd_sweep_depth(load(config_path, threads_flag), out_dir);
    if (sar->parsed()) return cmd_sar(load(config_path, threads_flag), out_dir);
    if (patch->parsed())
      return cmd_design_patch(mwave::parse_quantity(f0_text, mwave::Unit::frequency), eps_r,
                              mwave::parse_quantity(h_text, mwave::Unit::length), design_out);
    if (monopole->parsed())
      return cmd_design_monopole(mwave::parse_quantity(fl_text, mwave::Unit::frequency),
                                 mono_eps, mono_out);
    if (vswr->parsed()) return cmd_metrics_vswr(s11_db);
    if (bandwidth->parsed()) return cmd_metrics_bandwidth(bw_csv, bw_threshold);
    std::cerr << "mwave: no subcommand\n";
    return static_cast<int>(mwave::Errc::usage);
  } catch (const mwave::Error& e) {
    std::cerr << "mwave: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "mwave: " << e.what() << "\n";
    return 1;
  }
}
