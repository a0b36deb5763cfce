#include "pdabc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>

#include "pdabc/greens.hpp"
#include "pdabc/oracles.hpp"

namespace pdabc {

double linf_error(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("linf_error: length mismatch, " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double fit_rate(const std::vector<double>& dts, const std::vector<double>& errors) {
  if (dts.size() != errors.size()) throw std::invalid_argument("fit_rate: length mismatch");
  std::vector<double> lx, ly;
  for (size_t i = 0; i < dts.size(); ++i) {
    if (!(dts[i] > 0.0) || !(errors[i] > 0.0)) {
      std::cerr << "fit_rate: dropping nonpositive sample (dt=" << dts[i]
                << ", err=" << errors[i] << ")\n";
      continue;
    }
    lx.push_back(std::log(dts[i]));
    ly.push_back(std::log(errors[i]));
  }
  const size_t n = lx.size();
  if (n < 2) throw std::invalid_argument("fit_rate: need at least two positive samples");
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  return sxy / sxx;
}

const KernelTable& KernelCache::get(const StencilCoefficients& s, double dt, double T) {
  const std::pair<int, long> key{s.K, std::lround(dt * 1e12)};
  const long need = std::lround(T / dt);
  auto it = tables_.find(key);
  if (it != tables_.end() && it->second.steps >= need) return it->second;
  GreensTable gt = integrate_g(s, dt, T);
  auto pos = tables_.insert_or_assign(key, solve_f(gt)).first;
  return pos->second;
}

namespace {

struct PublishedTable {
  std::vector<double> times;
  std::vector<double> dts;                       // column order
  std::vector<std::vector<double>> vals;         // [time][dt]
  std::vector<std::pair<double, double>> bad;    // (t, dt) cells known to be misprints

  // returns {published value or 0, excluded flag}
  std::pair<double, bool> lookup(double t, double dt) const {
    size_t si = times.size(), di = dts.size();
    for (size_t i = 0; i < times.size(); ++i)
      if (std::abs(times[i] - t) < 1e-9) si = i;
    for (size_t i = 0; i < dts.size(); ++i)
      if (std::abs(dts[i] - dt) < 1e-9) di = i;
    if (si == times.size() || di == dts.size()) return {0.0, false};
    bool exc = false;
    for (const auto& [bt, bdt] : bad)
      if (std::abs(bt - t) < 1e-9 && std::abs(bdt - dt) < 1e-9) exc = true;
    return {vals[si][di], exc};
  }
};

const PublishedTable& published_table(int id) {
  static const double PI = M_PI;
  static const PublishedTable t1{
      {3 * PI, 18 * PI, 300 * PI},
      {3 * PI / 500, 3 * PI / 400, 3 * PI / 250, 3 * PI / 200},
      {{9.26e-06, 1.63e-05, 4.79e-05, 7.88e-04},
       {9.31e-07, 1.71e-06, 5.92e-06, 1.11e-05},
       {3.80e-08, 8.71e-08, 5.15e-07, 1.24e-06}},
      {{3 * PI, 3 * PI / 200}}};
  static const PublishedTable t2{
      {5.0, 10.0, 15.0, 40.0},
      {0.001, 0.002, 0.0025, 0.004, 0.005},
      {{4.03e-07, 1.61e-06, 2.51e-06, 2.51e-06, 1.01e-05},
       {1.06e-06, 4.26e-06, 6.65e-06, 1.70e-05, 2.66e-05},
       {7.57e-07, 3.02e-06, 4.72e-06, 1.21e-05, 1.88e-05},
       {1.67e-09, 6.69e-09, 1.04e-08, 2.67e-08, 4.17e-08}},
      {{5.0, 0.004}}};
  static const PublishedTable t3{
      {5.0, 10.0, 15.0, 40.0},
      {0.001, 0.002, 0.0025, 0.004, 0.005},
      {{9.87e-07, 3.94e-06, 6.16e-06, 1.57e-05, 2.46e-05},
       {2.25e-06, 9.03e-06, 1.41e-05, 3.61e-05, 5.64e-05},
       {7.94e-07, 3.17e-06, 4.96e-06, 1.26e-05, 1.98e-05},
       {8.87e-09, 3.54e-08, 5.54e-08, 1.41e-07, 2.21e-07}},
      {}};
  static const PublishedTable t4{
      {10.0, 15.0, 40.0, 100.0},
      {0.001, 0.002, 0.0025, 0.004, 0.005},
      {{2.33e-07, 9.34e-07, 1.46e-06, 3.73e-06, 5.84e-06},
       {6.39e-07, 2.55e-06, 3.99e-06, 1.02e-05, 1.59e-05},
       {2.33e-07, 9.33e-06, 1.45e-06, 3.72e-06, 5.82e-06},
       {9.78e-11, 3.90e-10, 6.11e-10, 1.56e-09, 2.43e-09}},
      {{40.0, 0.002}}};
  static const PublishedTable t5{
      {10.0, 15.0, 40.0, 100.0},
      {0.001, 0.002, 0.0025, 0.004, 0.005},
      {{2.44e-08, 9.76e-08, 1.52e-07, 3.90e-07, 6.10e-07},
       {7.90e-08, 3.16e-07, 4.93e-07, 1.26e-06, 1.97e-06},
       {8.13e-07, 3.25e-06, 5.08e-06, 1.30e-05, 2.03e-05},
       {3.90e-07, 1.56e-06, 2.44e-06, 6.24e-06, 9.75e-06}},
      {}};
  static const PublishedTable t6{
      {10.0, 15.0, 40.0, 100.0},
      {0.001, 0.002, 0.0025, 0.004, 0.005},
      {{8.46e-07, 3.38e-06, 5.29e-06, 1.35e-05, 2.11e-05},
       {2.78e-06, 1.11e-05, 1.74e-05, 4.45e-05, 6.96e-05},
       {1.38e-06, 5.55e-06, 8.67e-06, 2.21e-05, 3.47e-05},
       {1.11e-06, 4.49e-06, 7.03e-06, 1.82e-05, 2.87e-05}},
      {}};
  switch (id) {
    case 1: return t1;
    case 2: return t2;
    case 3: return t3;
    case 4: return t4;
    case 5: return t5;
    case 6: return t6;
  }
  throw std::invalid_argument("published_table: unknown id");
}

void add_note(ConvergenceReport& rep, const char* fmt, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  rep.notes.emplace_back(buf);
}

void fill_cells_and_gates(ConvergenceReport& rep, double gate_dt_hi, double gate_dt_lo,
                          double rate_lo, double rate_hi) {
  const PublishedTable& pub = published_table(rep.table_id);
  for (size_t si = 0; si < rep.times.size(); ++si)
    for (size_t di = 0; di < rep.dts.size(); ++di) {
      ReportCell c;
      c.t = rep.times[si];
      c.dt = rep.dts[di];
      c.error = rep.errors[si][di];
      auto [pv, exc] = pub.lookup(c.t, c.dt);
      c.published = pv;
      c.excluded = exc;
      c.pass = exc || pv <= 0.0 || c.error <= 3.0 * pv;
      if (!c.pass) {
        rep.pass = false;
        add_note(rep, "cell (t=%g, dt=%g) error %.3e exceeds 3x published %.3e", c.t, c.dt,
                 c.error, pv);
      }
      rep.cells.push_back(c);
    }

  long gi_hi = -1, gi_lo = -1;
  for (size_t di = 0; di < rep.dts.size(); ++di) {
    if (std::abs(rep.dts[di] - gate_dt_hi) < 1e-9) gi_hi = static_cast<long>(di);
    if (std::abs(rep.dts[di] - gate_dt_lo) < 1e-9) gi_lo = static_cast<long>(di);
  }
  for (size_t si = 0; si < rep.times.size(); ++si) {
    const auto& row = rep.errors[si];
    rep.fitted_rate.push_back(fit_rate(rep.dts, row));
    std::vector<double> pr;
    for (size_t di = 0; di + 1 < rep.dts.size(); ++di)
      pr.push_back(std::log(row[di + 1] / row[di]) / std::log(rep.dts[di + 1] / rep.dts[di]));
    rep.pairwise_rate.push_back(pr);

    if (gi_hi >= 0 && gi_lo >= 0) {
      const double g = std::log(row[gi_hi] / row[gi_lo]) /
                       std::log(rep.dts[gi_hi] / rep.dts[gi_lo]);
      add_note(rep, "rate(dt %g -> %g) at t=%g: %.3f, window [%g, %g]", gate_dt_hi, gate_dt_lo,
               rep.times[si], g, rate_lo, rate_hi);
      if (!(g >= rate_lo && g <= rate_hi)) {
        rep.pass = false;
        add_note(rep, "rate gate failed at t=%g", rep.times[si]);
      }
    }
    for (size_t di = 0; di + 1 < rep.dts.size(); ++di)
      if (row[di + 1] < row[di] - 1e-11) {
        rep.pass = false;
        add_note(rep, "row t=%g not monotone: err(dt=%g)=%.3e > err(dt=%g)=%.3e",
                 rep.times[si], rep.dts[di], row[di], rep.dts[di + 1], row[di + 1]);
      }
  }
}

ConvergenceReport table_kernel(Budget budget, KernelCache& cache, std::ostream* log) {
  const double PI = M_PI;
  ConvergenceReport rep;
  rep.table_id = 1;
  rep.quantity = "kernel";
  rep.reference = "closed-form Bessel kernel, sup over the trailing window [t-pi, t]";
  rep.times = {3 * PI, 18 * PI};
  rep.dts = {3 * PI / 500, 3 * PI / 400, 3 * PI / 250};
  if (budget == Budget::full) {
    rep.times.push_back(300 * PI);
    rep.dts.push_back(3 * PI / 200);
  }
  const auto stencil = direct_stencil({-6.0, 4.0, -1.0});
  const double t_max = rep.times.back();

  rep.errors.assign(rep.times.size(), std::vector<double>(rep.dts.size(), 0.0));
  for (size_t di = 0; di < rep.dts.size(); ++di) {
    const double dt = rep.dts[di];
    if (log) (*log) << "[table 1] dt=" << dt << ": kernel march to t=" << t_max << std::endl;
    const KernelTable& kt = cache.get(stencil, dt, t_max);
    for (size_t si = 0; si < rep.times.size(); ++si) {
      const double t = rep.times[si];
      const long j_hi = std::min<long>(std::lround(t / dt), kt.steps);
      const long j_lo = std::max(1L, static_cast<long>(std::ceil((t - PI) / dt - 1e-9)));
      double worst = 0.0;
      for (long j = j_lo; j <= j_hi; ++j)
        worst = std::max(worst, std::abs(kt.at(1, 0, j) - analytic_beam_kernel(j * dt)));
      rep.errors[si][di] = worst;
    }
  }

  // cells plus monotonicity; the rate gate for this table is a fitted slope
  fill_cells_and_gates(rep, 0.0, 0.0, 0.0, 0.0);
  for (size_t si = 0; si < rep.times.size(); ++si) {
    const std::vector<double> fit_dts(rep.dts.begin(), rep.dts.begin() + 3);
    const std::vector<double> fit_err(rep.errors[si].begin(), rep.errors[si].begin() + 3);
    const double r = fit_rate(fit_dts, fit_err);
    add_note(rep, "fitted rate at t=%g over the three standard steps: %.3f, gate >= 2", rep.times[si], r);
    if (!(r >= 2.0)) {
      rep.pass = false;
      add_note(rep, "fitted-rate gate failed at t=%g", rep.times[si]);
    }
  }
  return rep;
}

ScenarioConfig scenario_for(int id, double dt, const std::vector<double>& times, double t_end) {
  ScenarioConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.snapshot_times = times;
  if (id == 4) cfg.interface_ = InterfaceSpec{0.5, -4.0, 4.0};
  if (id == 5) cfg.interface_ = InterfaceSpec{0.1, -4.0, 4.0};
  if (id == 6) {
    cfg.initial = InitialKind::zero;
    cfg.right = BoundaryKind::free_end;
    cfg.source = SourceSpec{0.2, 5.0, 101, 5.0};
  }
  return cfg;
}

ConvergenceReport table_scenario(int id, Budget budget, KernelCache& cache, std::ostream* log) {
  ConvergenceReport rep;
  rep.table_id = id;
  rep.quantity = (id == 3) ? "velocity" : "displacement";
  rep.reference = (id == 6)
                      ? "left-end displacement of a padded run at dt/10"
                      : "padded enlarged run at dt/10, sup over the retained domain";
  const double t_end = (id <= 3) ? 40.0 : 100.0;
  rep.times = (id <= 3) ? std::vector<double>{5.0, 10.0, 15.0, 40.0}
                        : std::vector<double>{10.0, 15.0, 40.0, 100.0};
  rep.dts = (budget == Budget::quick) ? std::vector<double>{0.0025, 0.005}
                                      : std::vector<double>{0.001, 0.002, 0.0025, 0.004, 0.005};
  const auto hard = build_stencil(gaussian_micromodulus(0.25, 0.75), 0.1);

  rep.errors.assign(rep.times.size(), std::vector<double>(rep.dts.size(), 0.0));
  for (size_t di = 0; di < rep.dts.size(); ++di) {
    const double dt = rep.dts[di];
    ScenarioConfig cfg = scenario_for(id, dt, rep.times, t_end);
    if (log) (*log) << "[table " << id << "] dt=" << dt << ": kernel tables" << std::endl;
    const KernelTable& kt = cache.get(hard, dt, t_end);
    if (log) (*log) << "[table " << id << "] dt=" << dt << ": truncated run" << std::endl;
    RunResult run = run_scenario(cfg, &kt);
    if (log) (*log) << "[table " << id << "] dt=" << dt << ": reference run" << std::endl;
    RunResult ref = enlarged_reference(cfg, t_end, 10);
    for (size_t si = 0; si < rep.times.size(); ++si) {
      if (id == 6)
        rep.errors[si][di] = std::abs(run.snapshots[si].u[0] - ref.snapshots[si].u[0]);
      else if (id == 3)
        rep.errors[si][di] = linf_error(run.snapshots[si].v, ref.snapshots[si].v);
      else
        rep.errors[si][di] = linf_error(run.snapshots[si].u, ref.snapshots[si].u);
    }
  }

  fill_cells_and_gates(rep, 0.005, 0.0025, 1.9, 2.1);
  return rep;
}

}  // namespace

ConvergenceReport reproduce_table(int table_id, Budget budget, KernelCache* cache,
                                  std::ostream* log) {
  KernelCache local;
  if (!cache) cache = &local;
  if (table_id == 1) return table_kernel(budget, *cache, log);
  if (table_id >= 2 && table_id <= 6) return table_scenario(table_id, budget, *cache, log);
  throw std::invalid_argument("reproduce_table: unknown table id " + std::to_string(table_id) +
                              ", expected 1..6");
}

double seismic_amplification(double dt, KernelCache* cache, std::ostream* log) {
  KernelCache local;
  if (!cache) cache = &local;
  const double t_end = 40.0;
  ScenarioConfig cfg = scenario_for(6, dt, {t_end}, t_end);
  const auto hard = build_stencil(gaussian_micromodulus(cfg.delta, cfg.cutoff), cfg.dx);

  if (log) (*log) << "[amplification] truncated seismic run, dt=" << dt << std::endl;
  const KernelTable& kt = cache->get(hard, dt, t_end);
  RunResult run = run_scenario(cfg, &kt);
  double amp_trunc = 0.0;
  for (double v : run.probes.u_right) amp_trunc = std::max(amp_trunc, std::abs(v));

  if (log) (*log) << "[amplification] continued-bar baseline" << std::endl;
  ScenarioConfig base = cfg;
  base.right = BoundaryKind::exact;    // padded run keeps material past the right end
  RunResult ref = enlarged_reference(base, t_end, 10);
  double amp_base = 0.0;
  for (double v : ref.probes.u_right) amp_base = std::max(amp_base, std::abs(v));

  if (amp_base <= 0.0) throw std::runtime_error("seismic_amplification: baseline peak is zero");
  return amp_trunc / amp_base;
}

void write_report_csv(const ConvergenceReport& rep, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_report_csv: cannot open " + path);
  char buf[256];
  out << "# table " << rep.table_id << ", quantity " << rep.quantity << ", reference "
      << rep.reference << "\n";
  out << "t,dt,error,published,excluded,cell_pass\n";
  for (const auto& c : rep.cells) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d,%d\n", c.t, c.dt, c.error,
                  c.published, c.excluded ? 1 : 0, c.pass ? 1 : 0);
    out << buf;
  }
  for (size_t si = 0; si < rep.times.size(); ++si) {
    std::snprintf(buf, sizeof buf, "# fitted_rate,t=%.17g,%.17g\n", rep.times[si],
                  rep.fitted_rate[si]);
    out << buf;
  }
  for (const auto& n : rep.notes) out << "# " << n << "\n";
  out << "# overall_pass," << (rep.pass ? 1 : 0) << "\n";
  if (!out) throw std::runtime_error("write_report_csv: write failed for " + path);
}

}  // namespace pdabc
