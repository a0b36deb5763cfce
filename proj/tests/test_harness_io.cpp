#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdabc/harness.hpp"
#include "pdabc/io.hpp"

using namespace pdabc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::string tmp_path(const char* name) {
  return (fs::temp_directory_path() / name).string();
}

StencilCoefficients beam_stencil() { return direct_stencil({-6.0, 4.0, -1.0}); }

}  // namespace

TEST_CASE("linf error") {
  CHECK(linf_error({1.0, 2.0, 3.0}, {1.0, 2.5, 2.0}) == 1.0);
  CHECK(linf_error({}, {}) == 0.0);
  CHECK_THROWS_AS((void)linf_error({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("rate fitting") {
  const std::vector<double> dts{0.1, 0.05, 0.025, 0.0125};

  SUBCASE("recovers an exact power law") {
    std::vector<double> errs;
    for (double dt : dts) errs.push_back(3.0 * std::pow(dt, 2.5));
    CHECK(fit_rate(dts, errs) == doctest::Approx(2.5).epsilon(1e-12));
  }

  SUBCASE("nonpositive entries drop out of the fit") {
    std::vector<double> errs;
    for (double dt : dts) errs.push_back(dt * dt);
    errs[1] = 0.0;
    CHECK(fit_rate(dts, errs) == doctest::Approx(2.0).epsilon(1e-12));
  }

  SUBCASE("fewer than two usable samples is an error") {
    CHECK_THROWS_AS((void)fit_rate({0.1, 0.05}, {0.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)fit_rate({0.1}, {1e-3}), std::invalid_argument);
  }
}

TEST_CASE("table dispatch rejects unknown ids") {
  CHECK_THROWS_AS((void)reproduce_table(0, Budget::quick), std::invalid_argument);
  CHECK_THROWS_AS((void)reproduce_table(7, Budget::quick), std::invalid_argument);
}

TEST_CASE("binary table round trips") {
  const auto gt = integrate_g(beam_stencil(), 0.02, 1.0);
  const auto kt = solve_f(gt);
  const std::string gpath = tmp_path("pdabc_rt_greens.bin");
  const std::string kpath = tmp_path("pdabc_rt_kernel.bin");
  save_greens(gt, gpath);
  save_kernels(kt, kpath);

  SUBCASE("greens payload and header survive bitwise") {
    const GreensTable rt = load_greens(gpath);
    CHECK(rt.K == gt.K);
    CHECK(rt.dt == gt.dt);
    CHECK(rt.steps == gt.steps);
    CHECK(rt.g == gt.g);
    CHECK(rt.gdot == gt.gdot);
    CHECK(rt.stencil.a == gt.stencil.a);
    CHECK(rt.stencil.zero_row_sum == gt.stencil.zero_row_sum);
  }

  SUBCASE("kernel payload and header survive bitwise") {
    const KernelTable rt = load_kernels(kpath);
    CHECK(rt.K == kt.K);
    CHECK(rt.dt == kt.dt);
    CHECK(rt.steps == kt.steps);
    CHECK(rt.f == kt.f);
    CHECK(rt.stencil.a == kt.stencil.a);
  }

  SUBCASE("magic mismatch is rejected") {
    CHECK_THROWS_AS((void)load_greens(kpath), std::runtime_error);
    CHECK_THROWS_AS((void)load_kernels(gpath), std::runtime_error);
  }

  SUBCASE("truncation is reported") {
    const std::string cut = tmp_path("pdabc_rt_cut.bin");
    fs::copy_file(gpath, cut, fs::copy_options::overwrite_existing);
    fs::resize_file(cut, fs::file_size(cut) - 17);
    CHECK_THROWS_AS((void)load_greens(cut), std::runtime_error);
    fs::remove(cut);
  }

  SUBCASE("missing file is reported") {
    CHECK_THROWS_AS((void)load_greens(tmp_path("pdabc_rt_absent.bin")), std::runtime_error);
  }

  fs::remove(gpath);
  fs::remove(kpath);
}

TEST_CASE("scenario json round trip") {
  ScenarioConfig cfg;
  cfg.x_min = -7.0;
  cfg.x_max = 9.0;
  cfg.dt = 0.0025;
  cfg.t_end = 17.0;
  cfg.snapshot_times = {5.0, 10.0};
  cfg.initial = InitialKind::zero;
  cfg.right = BoundaryKind::free_end;
  cfg.interface_ = InterfaceSpec{0.5, -4.0, 4.0};
  cfg.source = SourceSpec{0.3, 4.0, 33, 6.0};
  cfg.initial_support = std::make_pair(-6.0, 6.0);

  const ScenarioConfig rt = scenario_from_json(scenario_to_json(cfg));
  CHECK(rt.x_min == cfg.x_min);
  CHECK(rt.x_max == cfg.x_max);
  CHECK(rt.dx == cfg.dx);
  CHECK(rt.delta == cfg.delta);
  CHECK(rt.cutoff == cfg.cutoff);
  CHECK(rt.dt == cfg.dt);
  CHECK(rt.t_end == cfg.t_end);
  CHECK(rt.snapshot_times == cfg.snapshot_times);
  CHECK(rt.initial == cfg.initial);
  CHECK(rt.left == cfg.left);
  CHECK(rt.right == cfg.right);
  REQUIRE(rt.interface_.has_value());
  CHECK(rt.interface_->beta == 0.5);
  CHECK(rt.interface_->soft_lo == -4.0);
  CHECK(rt.interface_->soft_hi == 4.0);
  REQUIRE(rt.source.has_value());
  CHECK(rt.source->f_p == 0.3);
  CHECK(rt.source->t_D == 4.0);
  CHECK(rt.source->node == 33);
  CHECK(rt.source->release == 6.0);
  REQUIRE(rt.initial_support.has_value());
  CHECK(rt.initial_support->first == -6.0);
  CHECK(rt.initial_support->second == 6.0);
}

TEST_CASE("scenario json validation") {
  const ScenarioConfig d = scenario_from_json("{}");
  CHECK(d.x_min == -10.0);
  CHECK(d.dt == 0.005);
  CHECK(!d.interface_);
  CHECK(!d.source);

  CHECK_THROWS_AS((void)scenario_from_json(R"({"dxx": 0.1})"), std::runtime_error);
  CHECK_THROWS_AS((void)scenario_from_json(R"({"initial": "sine"})"), std::runtime_error);
  CHECK_THROWS_AS((void)scenario_from_json(R"({"left": "periodic"})"), std::runtime_error);
  CHECK_THROWS_AS((void)scenario_from_json(R"({"initial_support": [1.0]})"), std::runtime_error);
  CHECK(!scenario_from_json(R"({"interface": null})").interface_);
}

TEST_CASE("csv writers are deterministic") {
  ScenarioConfig cfg;
  cfg.x_min = -0.2;
  cfg.x_max = 0.2;
  Snapshot snap;
  snap.t = 0.5;
  snap.u = {1.0 / 3.0, -2.0e-17, 0.125, 3.0, -0.7};
  snap.v = {0.0, 1.0, -1.0 / 7.0, 2.5e8, 1e-300};

  const std::string s1 = tmp_path("pdabc_rt_snap1.csv");
  const std::string s2 = tmp_path("pdabc_rt_snap2.csv");
  write_snapshot_csv(snap, cfg, s1);
  write_snapshot_csv(snap, cfg, s2);
  const std::string body = slurp(s1);
  CHECK(body == slurp(s2));
  CHECK(body.substr(0, 11) == "node,x,u,v\n");

  ProbeSeries probes;
  probes.t = {0.0, 0.1, 0.2};
  probes.u_origin = {1.0, 0.99, 0.961};
  probes.u_left = {0.0, 1e-13, 2e-13};
  probes.u_right = {0.0, -1e-13, 3e-13};
  const std::string p1 = tmp_path("pdabc_rt_probes1.csv");
  const std::string p2 = tmp_path("pdabc_rt_probes2.csv");
  write_probes_csv(probes, p1);
  write_probes_csv(probes, p2);
  const std::string pbody = slurp(p1);
  CHECK(pbody == slurp(p2));
  CHECK(pbody.substr(0, 26) == "t,u_origin,u_left,u_right\n");

  for (const auto& p : {s1, s2, p1, p2}) fs::remove(p);
}
