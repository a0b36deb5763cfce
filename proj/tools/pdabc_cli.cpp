#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdabc/harness.hpp"
#include "pdabc/io.hpp"
#include "pdabc/oracles.hpp"

namespace {

pdabc::StencilCoefficients stencil_from_arg(const std::string& arg) {
  if (arg == "bar")
    return pdabc::build_stencil(pdabc::gaussian_micromodulus(0.25, 0.75), 0.1);
  if (arg == "beam") return pdabc::direct_stencil({-6.0, 4.0, -1.0});
  std::ifstream in(arg);
  if (!in) throw std::runtime_error("cannot open stencil file " + arg);
  const nlohmann::json j = nlohmann::json::parse(in);
  const auto a = j.at("a").get<std::vector<double>>();
  if (j.contains("K") && j.at("K").get<size_t>() + 1 != a.size())
    throw std::runtime_error("stencil file: K does not match the coefficient count");
  return pdabc::direct_stencil(a);
}

// grid spec: "<lo>:<hi>:<count>" with a trailing "@<t>" for the bar solution
struct GridSpec {
  double lo = 0.0, hi = 0.0;
  long count = 0;
  bool has_t = false;
  double t = 0.0;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  std::string range = text;
  const auto at = text.find('@');
  if (at != std::string::npos) {
    g.has_t = true;
    g.t = std::stod(text.substr(at + 1));
    range = text.substr(0, at);
  }
  const auto c1 = range.find(':');
  const auto c2 = range.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::runtime_error("grid spec must look like lo:hi:count[@t], got \"" + text + "\"");
  g.lo = std::stod(range.substr(0, c1));
  g.hi = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
  g.count = std::stol(range.substr(c2 + 1));
  if (g.count < 1) throw std::runtime_error("grid spec: count must be >= 1");
  return g;
}

int run_kernel(const std::string& stencil_arg, double dt, double t_end,
               const std::string& out) {
  const auto s = stencil_from_arg(stencil_arg);
  std::cerr << "integrating lattice response, K=" << s.K << ", dt=" << dt << ", T=" << t_end
            << "\n";
  const pdabc::GreensTable gt = pdabc::integrate_g(s, dt, t_end);
  std::cerr << "solving boundary kernels, J=" << gt.steps << "\n";
  const pdabc::KernelTable kt = pdabc::solve_f(gt);
  pdabc::save_kernels(kt, out);
  std::cout << "wrote " << out << " (K=" << kt.K << ", J=" << kt.steps << ", dt=" << kt.dt
            << ")\n";
  return 0;
}

int run_simulate(const std::string& config_path, const std::string& kernels_path,
                 const std::string& out_dir) {
  const pdabc::ScenarioConfig cfg = pdabc::load_scenario(config_path);
  pdabc::KernelTable kt;
  const pdabc::KernelTable* ktp = nullptr;
  if (!kernels_path.empty()) {
    kt = pdabc::load_kernels(kernels_path);
    ktp = &kt;
  }
  const pdabc::RunResult run = pdabc::run_scenario(cfg, ktp);
  std::filesystem::create_directories(out_dir);
  for (const auto& snap : run.snapshots) {
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_t%g.csv", snap.t);
    const std::string path = out_dir + "/" + name;
    pdabc::write_snapshot_csv(snap, cfg, path);
    std::cout << "wrote " << path << "\n";
  }
  const std::string probes = out_dir + "/probes.csv";
  pdabc::write_probes_csv(run.probes, probes);
  std::cout << "wrote " << probes << "\n";
  return 0;
}

int run_converge(int table, const std::string& budget, const std::string& out) {
  const pdabc::Budget b = (budget == "full") ? pdabc::Budget::full : pdabc::Budget::quick;
  const pdabc::ConvergenceReport rep = pdabc::reproduce_table(table, b, nullptr, &std::cerr);
  pdabc::write_report_csv(rep, out);
  std::cout << "wrote " << out << "\n";
  for (const auto& n : rep.notes) std::cout << "  " << n << "\n";
  std::cout << "table " << table << (rep.pass ? " PASS" : " FAIL") << "\n";
  return rep.pass ? 0 : 2;
}

int run_oracle(const std::string& which, const std::string& grid, const std::string& out) {
  const GridSpec g = parse_grid(grid);
  std::ofstream os(out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + out);
  char buf[96];
  if (which == "beam-kernel") {
    os << "t,f\n";
    for (long i = 0; i < g.count; ++i) {
      const double t = (g.count == 1) ? g.lo : g.lo + (g.hi - g.lo) * i / (g.count - 1);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, pdabc::analytic_beam_kernel(t));
      os << buf;
    }
  } else {
    if (!g.has_t)
      throw std::runtime_error("bar oracle needs a time, use --grid lo:hi:count@t");
    os << "# t " << g.t << "\nx,u\n";
    for (long i = 0; i < g.count; ++i) {
      const double x = (g.count == 1) ? g.lo : g.lo + (g.hi - g.lo) * i / (g.count - 1);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, pdabc::analytic_bar(x, g.t, 0.25));
      os << buf;
    }
  }
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact history kernels and absorbing boundaries for nonlocal lattice waves"};
  app.require_subcommand(1);

  std::string stencil_arg, out_path, config_path, kernels_path, out_dir, budget = "quick",
                                                                         which, grid;
  double dt = 0.0, t_end = 0.0;
  int table = 0;

  CLI::App* kernel = app.add_subcommand("kernel", "integrate lattice response and solve kernels");
  kernel->add_option("--stencil", stencil_arg, "builtin name (bar|beam) or a JSON stencil file")
      ->required();
  kernel->add_option("--dt", dt, "time step")->required();
  kernel->add_option("--t-end", t_end, "horizon to tabulate")->required();
  kernel->add_option("--out", out_path, "output kernel table path")->required();

  CLI::App* simulate = app.add_subcommand("simulate", "run a scenario from a JSON config");
  simulate->add_option("--config", config_path, "scenario JSON file")->required();
  simulate->add_option("--kernels", kernels_path,
                       "kernel table file (optional, computed on demand otherwise)");
  simulate->add_option("--out-dir", out_dir, "directory for CSV output")->required();

  CLI::App* converge = app.add_subcommand("converge", "reproduce a published error table");
  converge->add_option("--table", table, "table id, 1..6")->required();
  converge->add_option("--budget", budget, "quick|full")
      ->check(CLI::IsMember({"quick", "full"}));
  converge->add_option("--out", out_path, "report CSV path")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "evaluate a closed-form reference solution");
  oracle->add_option("--which", which, "bar|beam-kernel")
      ->required()
      ->check(CLI::IsMember({"bar", "beam-kernel"}));
  oracle->add_option("--grid", grid, "lo:hi:count, bar form lo:hi:count@t")->required();
  oracle->add_option("--out", out_path, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (kernel->parsed()) return run_kernel(stencil_arg, dt, t_end, out_path);
    if (simulate->parsed()) return run_simulate(config_path, kernels_path, out_dir);
    if (converge->parsed()) return run_converge(table, budget, out_path);
    if (oracle->parsed()) return run_oracle(which, grid, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
