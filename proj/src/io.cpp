#include "pdabc/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace pdabc {

namespace {

constexpr uint32_t kGreensMagic = 0x54474450;   // "PDGT"
constexpr uint32_t kKernelMagic = 0x544b4450;   // "PDKT"
constexpr uint32_t kFormatVersion = 1;

void put(std::ofstream& out, const void* p, size_t bytes) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(bytes));
}

void take(std::ifstream& in, void* p, size_t bytes, const std::string& what) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(bytes));
  if (!in) throw std::runtime_error("table load: truncated file while reading " + what);
}

struct TableHeader {
  uint32_t magic = 0, version = 0;
  int32_t K = 0;
  int64_t steps = 0;
  double dt = 0.0;
};

void write_header_and_stencil(std::ofstream& out, uint32_t magic, int K, long steps, double dt,
                              const StencilCoefficients& s) {
  TableHeader h{magic, kFormatVersion, K, steps, dt};
  put(out, &h.magic, 4);
  put(out, &h.version, 4);
  put(out, &h.K, 4);
  put(out, &h.steps, 8);
  put(out, &h.dt, 8);
  put(out, s.a.data(), (static_cast<size_t>(K) + 1) * 8);
  const uint8_t flags[2] = {s.zero_row_sum ? uint8_t{1} : uint8_t{0},
                            s.identically_zero ? uint8_t{1} : uint8_t{0}};
  put(out, flags, 2);
}

TableHeader read_header(std::ifstream& in, uint32_t magic, const std::string& kind) {
  TableHeader h;
  take(in, &h.magic, 4, "magic");
  if (h.magic != magic) throw std::runtime_error("table load: not a " + kind + " table file");
  take(in, &h.version, 4, "version");
  if (h.version != kFormatVersion)
    throw std::runtime_error("table load: unsupported " + kind + " format version " +
                             std::to_string(h.version));
  take(in, &h.K, 4, "K");
  take(in, &h.steps, 8, "step count");
  take(in, &h.dt, 8, "dt");
  if (h.K < 1 || h.steps < 0 || !(h.dt > 0.0))
    throw std::runtime_error("table load: corrupt " + kind + " header");
  return h;
}

StencilCoefficients read_stencil(std::ifstream& in, int K) {
  StencilCoefficients s;
  s.K = K;
  s.a.assign(static_cast<size_t>(K) + 1, 0.0);
  take(in, s.a.data(), (static_cast<size_t>(K) + 1) * 8, "stencil coefficients");
  uint8_t flags[2];
  take(in, flags, 2, "stencil flags");
  s.zero_row_sum = flags[0] != 0;
  s.identically_zero = flags[1] != 0;
  return s;
}

}  // namespace

void save_greens(const GreensTable& gt, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_greens: cannot open " + path);
  write_header_and_stencil(out, kGreensMagic, gt.K, gt.steps, gt.dt, gt.stencil);
  put(out, gt.g.data(), gt.g.size() * 8);
  put(out, gt.gdot.data(), gt.gdot.size() * 8);
  if (!out) throw std::runtime_error("save_greens: write failed for " + path);
}

GreensTable load_greens(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_greens: cannot open " + path);
  const TableHeader h = read_header(in, kGreensMagic, "greens");
  GreensTable gt;
  gt.K = h.K;
  gt.dt = h.dt;
  gt.steps = h.steps;
  gt.stencil = read_stencil(in, h.K);
  const size_t n = static_cast<size_t>(2 * h.K) * (h.steps + 1);
  gt.g.assign(n, 0.0);
  gt.gdot.assign(n, 0.0);
  take(in, gt.g.data(), n * 8, "g payload");
  take(in, gt.gdot.data(), n * 8, "gdot payload");
  return gt;
}

void save_kernels(const KernelTable& kt, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_kernels: cannot open " + path);
  write_header_and_stencil(out, kKernelMagic, kt.K, kt.steps, kt.dt, kt.stencil);
  // disk layout is [m][n][j]; memory is column-major in j for the march
  const int K = kt.K;
  std::vector<double> row(kt.steps + 1);
  for (int mi = 0; mi < K; ++mi)
    for (int p = 0; p < K; ++p) {
      for (long j = 0; j <= kt.steps; ++j)
        row[j] = kt.f[(static_cast<size_t>(j) * K + p) * K + mi];
      put(out, row.data(), row.size() * 8);
    }
  if (!out) throw std::runtime_error("save_kernels: write failed for " + path);
}

KernelTable load_kernels(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_kernels: cannot open " + path);
  const TableHeader h = read_header(in, kKernelMagic, "kernel");
  KernelTable kt;
  kt.K = h.K;
  kt.dt = h.dt;
  kt.steps = h.steps;
  kt.stencil = read_stencil(in, h.K);
  const int K = h.K;
  kt.f.assign(static_cast<size_t>(K) * K * (h.steps + 1), 0.0);
  std::vector<double> row(h.steps + 1);
  for (int mi = 0; mi < K; ++mi)
    for (int p = 0; p < K; ++p) {
      take(in, row.data(), row.size() * 8, "kernel payload");
      for (long j = 0; j <= h.steps; ++j)
        kt.f[(static_cast<size_t>(j) * K + p) * K + mi] = row[j];
    }
  return kt;
}

namespace {

using nlohmann::json;

BoundaryKind boundary_from(const std::string& s, const char* side) {
  if (s == "exact") return BoundaryKind::exact;
  if (s == "free") return BoundaryKind::free_end;
  throw std::runtime_error(std::string("scenario config: ") + side + " boundary must be \"exact\" or \"free\", got \"" + s + "\"");
}

}  // namespace

ScenarioConfig scenario_from_json(const std::string& text) {
  const json j = json::parse(text);
  ScenarioConfig cfg;
  static const char* known[] = {"x_min",   "x_max",         "dx",     "delta",
                                "cutoff",  "dt",            "t_end",  "snapshot_times",
                                "initial", "left",          "right",  "interface",
                                "source",  "initial_support"};
  for (const auto& [key, val] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw std::runtime_error("scenario config: unknown key \"" + key + "\"");
  }
  cfg.x_min = j.value("x_min", cfg.x_min);
  cfg.x_max = j.value("x_max", cfg.x_max);
  cfg.dx = j.value("dx", cfg.dx);
  cfg.delta = j.value("delta", cfg.delta);
  cfg.cutoff = j.value("cutoff", cfg.cutoff);
  cfg.dt = j.value("dt", cfg.dt);
  cfg.t_end = j.value("t_end", cfg.t_end);
  if (j.contains("snapshot_times"))
    cfg.snapshot_times = j.at("snapshot_times").get<std::vector<double>>();
  if (j.contains("initial")) {
    const std::string s = j.at("initial").get<std::string>();
    if (s == "gaussian")
      cfg.initial = InitialKind::gaussian;
    else if (s == "zero")
      cfg.initial = InitialKind::zero;
    else
      throw std::runtime_error("scenario config: initial must be \"gaussian\" or \"zero\"");
  }
  if (j.contains("left")) cfg.left = boundary_from(j.at("left").get<std::string>(), "left");
  if (j.contains("right")) cfg.right = boundary_from(j.at("right").get<std::string>(), "right");
  if (j.contains("interface") && !j.at("interface").is_null()) {
    const json& ji = j.at("interface");
    cfg.interface_ = InterfaceSpec{ji.at("beta").get<double>(), ji.at("soft_lo").get<double>(),
                                   ji.at("soft_hi").get<double>()};
  }
  if (j.contains("source") && !j.at("source").is_null()) {
    const json& js = j.at("source");
    SourceSpec src;
    src.f_p = js.at("f_p").get<double>();
    src.t_D = js.at("t_D").get<double>();
    src.node = js.at("node").get<long>();
    src.release = js.value("release", 5.0);
    cfg.source = src;
  }
  if (j.contains("initial_support") && !j.at("initial_support").is_null()) {
    const auto v = j.at("initial_support").get<std::vector<double>>();
    if (v.size() != 2)
      throw std::runtime_error("scenario config: initial_support needs [lo, hi]");
    cfg.initial_support = std::make_pair(v[0], v[1]);
  }
  return cfg;
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
  json j;
  j["x_min"] = cfg.x_min;
  j["x_max"] = cfg.x_max;
  j["dx"] = cfg.dx;
  j["delta"] = cfg.delta;
  j["cutoff"] = cfg.cutoff;
  j["dt"] = cfg.dt;
  j["t_end"] = cfg.t_end;
  j["snapshot_times"] = cfg.snapshot_times;
  j["initial"] = (cfg.initial == InitialKind::gaussian) ? "gaussian" : "zero";
  j["left"] = (cfg.left == BoundaryKind::exact) ? "exact" : "free";
  j["right"] = (cfg.right == BoundaryKind::exact) ? "exact" : "free";
  if (cfg.interface_)
    j["interface"] = {{"beta", cfg.interface_->beta},
                      {"soft_lo", cfg.interface_->soft_lo},
                      {"soft_hi", cfg.interface_->soft_hi}};
  if (cfg.source)
    j["source"] = {{"f_p", cfg.source->f_p},
                   {"t_D", cfg.source->t_D},
                   {"node", cfg.source->node},
                   {"release", cfg.source->release}};
  if (cfg.initial_support)
    j["initial_support"] = {cfg.initial_support->first, cfg.initial_support->second};
  return j.dump(2);
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_scenario: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return scenario_from_json(text);
}

void write_snapshot_csv(const Snapshot& snap, const ScenarioConfig& cfg,
                        const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_snapshot_csv: cannot open " + path);
  out << "node,x,u,v\n";
  char buf[128];
  for (size_t i = 0; i < snap.u.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", i + 1,
                  cfg.x_of(static_cast<long>(i) + 1), snap.u[i], snap.v[i]);
    out << buf;
  }
  if (!out) throw std::runtime_error("write_snapshot_csv: write failed for " + path);
}

void write_probes_csv(const ProbeSeries& probes, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_probes_csv: cannot open " + path);
  out << "t,u_origin,u_left,u_right\n";
  char buf[160];
  for (size_t i = 0; i < probes.t.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", probes.t[i],
                  probes.u_origin[i], probes.u_left[i], probes.u_right[i]);
    out << buf;
  }
  if (!out) throw std::runtime_error("write_probes_csv: write failed for " + path);
}

}  // namespace pdabc
