// Command-line front end: run, wave, sweep and validate scenario files.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chemowave/errors.hpp"
#include "chemowave/experiment.hpp"

namespace cw = chemowave;

namespace {

enum Exit : int { kOk = 0, kConfig = 2, kNumerical = 3, kIo = 4 };

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item.substr(first), &used));
      if (item.find_first_not_of(" \t", first + used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw cw::ConfigError("--values: not a number: '" + item + "'");
    }
  }
  return out;
}

void print_rh_warning(const cw::ScenarioConfig& cfg) {
  if (!cfg.declared_states) return;
  const cw::RHResidual r = cw::declared_rh_residual(cfg);
  if (r.max_abs() > 1e-10) {
    std::fprintf(stderr,
                 "WARNING: declared states violate the jump conditions (r1 = %.6g, r2 = %.6g); "
                 "diagnostics use the states completed from the data ends\n",
                 r.r1, r.r2);
  }
}

int cmd_run(const std::string& cfg_path, const std::string& out, double delta, bool delta_set,
            bool emit_c) {
  cw::ScenarioConfig cfg = cw::load_scenario(cfg_path);
  if (delta_set) cfg.apply_axis("mollify_delta", delta);
  print_rh_warning(cfg);
  cw::RunOptions opts;
  opts.emit_c = emit_c;
  const cw::ScenarioResult res = cw::run_scenario(cfg, out, opts);
  std::printf("%s: %zu steps, %zu snapshots, t = %.6g, min u = %.6g, %.3f s\n", cfg.name.c_str(),
              res.report.steps, res.report.snapshots, res.report.final_state.t, res.report.min_u,
              res.report.wall_seconds);
  if (res.report.boundary_warning) std::fprintf(stderr, "WARNING: %s\n", res.report.boundary_warning->c_str());
  if (res.report.positivity_violated) {
    std::fprintf(stderr, "numerical failure: u lost positivity (min u = %.6g)\n", res.report.min_u);
    return kNumerical;
  }
  return kOk;
}

int cmd_sweep(const std::string& cfg_path, const std::string& axis, const std::string& values,
              const std::string& out, unsigned threads) {
  const cw::ScenarioConfig cfg = cw::load_scenario(cfg_path);
  const auto entries = cw::sweep(cfg, axis, parse_values(values), out, threads);
  std::size_t failed = 0;
  for (const auto& e : entries) {
    if (e.result) {
      std::printf("[%zu] %s = %.6g: ok, max_dq_v = %.6g\n", e.index, axis.c_str(), e.value,
                  e.result->records.back().max_diff_quotient_v);
    } else {
      ++failed;
      std::printf("[%zu] %s = %.6g: error: %s\n", e.index, axis.c_str(), e.value, e.error.c_str());
    }
  }
  std::printf("%zu variants, %zu failed\n", entries.size(), failed);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for a parabolic-hyperbolic chemotaxis system"};
  app.require_subcommand(1);

  std::string cfg_path, out_dir, axis, values;
  double delta = 0.0;
  bool emit_c = false, strict = false;
  unsigned threads = 0;

  auto* run = app.add_subcommand("run", "Run one scenario and write snapshots, series.csv and manifest.txt");
  run->add_option("cfg", cfg_path, "Scenario file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  auto* delta_opt = run->add_option("--mollify-delta", delta, "Override mollify_delta");
  run->add_flag("--emit-c", emit_c, "Add the Cole-Hopf c column to snapshots");

  auto* wave = app.add_subcommand("wave", "Print wave quantities for a scenario");
  wave->add_option("cfg", cfg_path, "Scenario file")->required();

  auto* sw = app.add_subcommand("sweep", "Run variants of a scenario along one axis");
  sw->add_option("cfg", cfg_path, "Scenario file")->required();
  sw->add_option("--axis", axis, "mollify_delta, n_nodes, cfl or jump_height")->required();
  sw->add_option("--values", values, "Comma-separated values")->required();
  sw->add_option("--out", out_dir, "Output directory")->required();
  sw->add_option("--threads", threads, "Concurrent variants (0 = hardware)");

  auto* val = app.add_subcommand("validate", "Check a scenario file and its jump conditions");
  val->add_option("cfg", cfg_path, "Scenario file")->required();
  val->add_flag("--strict", strict, "Fail when declared states violate the jump conditions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*run) return cmd_run(cfg_path, out_dir, delta, delta_opt->count() > 0, emit_c);
    if (*wave) {
      std::cout << cw::describe_wave(cw::load_scenario(cfg_path));
      return kOk;
    }
    if (*sw) return cmd_sweep(cfg_path, axis, values, out_dir, threads);
    if (*val) {
      const cw::ScenarioConfig cfg = cw::load_scenario(cfg_path);
      std::cout << cw::describe_wave(cfg);
      print_rh_warning(cfg);
      if (strict && cfg.declared_states && cw::declared_rh_residual(cfg).max_abs() > 1e-10) return kConfig;
      std::cout << "config ok\n";
      return kOk;
    }
  } catch (const cw::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kIo;
  } catch (const cw::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumerical;
  } catch (const cw::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const cw::DomainError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfig;
  }
  return kOk;
}
