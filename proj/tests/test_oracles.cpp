#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pdabc/oracles.hpp"

using namespace pdabc;

namespace {

StencilCoefficients beam_stencil() { return direct_stencil({-6.0, 4.0, -1.0}); }

}  // namespace

TEST_CASE("bessel j1 frozen values") {
  // high precision references, both branches of the evaluator
  const struct { double z, j1; } pts[] = {
      {0.5, 0.24226845767487388638},
      {1.0, 0.44005058574493351596},
      {2.0, 0.5767248077568733872},
      {5.0, -0.32757913759146522204},
      {10.0, 0.04347274616886143667},
      {14.0, 0.13337515469879325311},
      {15.0, 0.20510403861352276115},
      {15.5, 0.16721318035174714327},
      {16.0, 0.090397175661304186239},
      {20.0, 0.066833124175850045579},
      {50.0, -0.097511828125175137661},
      {100.0, -0.077145352014112158033},
      {1000.0, 0.0047283119070895239176},
      {20000.0, -0.00092230974697645939614},
  };
  for (const auto& p : pts) CHECK(std::abs(bessel_j1(p.z) - p.j1) <= 1e-12);

  CHECK(bessel_j1(0.0) == 0.0);
  CHECK(std::abs(bessel_j1(3.8317059702075123156)) <= 1e-14);   // first zero
}

TEST_CASE("bessel j1 envelope and domain") {
  for (double z = 10.0; z <= 2e4; z *= 1.37)
    CHECK(std::abs(bessel_j1(z)) <= 1.1 * std::sqrt(2.0 / (M_PI * z)));
  CHECK_THROWS_AS(bessel_j1(-1e-9), std::domain_error);
  CHECK_THROWS_AS(bessel_j1(2.0001e4), std::domain_error);
}

TEST_CASE("beam kernel closed form") {
  CHECK(analytic_beam_kernel(0.0) == 0.0);
  CHECK(std::abs(analytic_beam_kernel(0.5) - 1.4811591990083236387) <= 5e-12);
  CHECK(std::abs(analytic_beam_kernel(1.0) - 1.0488287673597218437) <= 5e-12);
  CHECK(std::abs(analytic_beam_kernel(5.0) - (-0.0094600366656782377447)) <= 5e-12);
  CHECK(std::abs(analytic_beam_kernel(10.0) - 0.01220299666152641864) <= 5e-12);
  CHECK_THROWS_AS(analytic_beam_kernel(-1.0), std::domain_error);
}

TEST_CASE("analytic bar dispersion integral") {
  SUBCASE("reduces to the initial profile at t = 0") {
    for (double x : {0.0, 0.5, 1.0, 2.0})
      CHECK(std::abs(analytic_bar(x, 0.0, 0.25) - std::exp(-x * x)) <= 1e-10);
  }

  SUBCASE("frozen interior values") {
    CHECK(std::abs(analytic_bar(0.0, 0.0, 0.25) - 1.0) <= 1e-10);
    CHECK(std::abs(analytic_bar(2.0, 0.0, 0.25) - 0.0183156388887341803) <= 1e-10);
    CHECK(std::abs(analytic_bar(0.0, 5.0, 0.25) - 1.46025143730739361e-9) <= 1e-10);
    CHECK(std::abs(analytic_bar(5.0, 5.0, 0.25) - 0.49072559581785706) <= 2e-10);
    CHECK(std::abs(analytic_bar(10.0, 15.0, 0.25) - (-0.000249761199044717971)) <= 1e-10);
    CHECK(std::abs(analytic_bar(3.0, 40.0, 0.25)) <= 1e-9);   // true value is O(1e-19)
  }

  SUBCASE("spec validation") {
    QuadratureSpec bad;
    bad.k_max = -1.0;
    CHECK_THROWS_AS(analytic_bar(0.0, 1.0, 0.25, bad), std::invalid_argument);
    bad = QuadratureSpec{};
    bad.tolerance = 0.0;
    CHECK_THROWS_AS(analytic_bar(0.0, 1.0, 0.25, bad), std::invalid_argument);
  }

  SUBCASE("unreachable tolerance is reported, not silently returned") {
    QuadratureSpec greedy;
    greedy.panels = 100;
    greedy.tolerance = 1e-30;
    CHECK_THROWS_AS(analytic_bar(1.0, 3.0, 0.25, greedy), std::runtime_error);
  }
}

TEST_CASE("bar quadrature snaps to roundoff once the phase is resolved") {
  // the integrand is even at k = 0 and Gaussian-small at k_max, so composite
  // Simpson converges super-algebraically: no clean order ratio exists, the
  // error drops from O(1) straight to machine precision within a few doublings
  const double truth = analytic_bar_panels(1.0, 3.0, 0.25, 12.0, 51200);
  const double e16 = std::abs(analytic_bar_panels(1.0, 3.0, 0.25, 12.0, 16) - truth);
  const double e64 = std::abs(analytic_bar_panels(1.0, 3.0, 0.25, 12.0, 64) - truth);
  const double e1024 = std::abs(analytic_bar_panels(1.0, 3.0, 0.25, 12.0, 1024) - truth);
  CHECK(e16 > 1e-3);       // under-resolved, measured 0.158
  CHECK(e64 <= 1e-12);     // resolved, measured 1.5e-15
  CHECK(e1024 <= 1e-12);   // stays at roundoff, no drift with more panels
}

TEST_CASE("chain integration stays even in the bond index") {
  const auto ct = chain_greens(beam_stencil(), 0.05, 2.0, 6);
  CHECK(ct.at(0, 0) == 0.0);
  CHECK(ct.dot_at(0, 0) == 1.0);
  CHECK(ct.evenness_defect <= 1e-14);
  CHECK_THROWS_AS(chain_greens(beam_stencil(), 0.05, 1.0, 100000), std::invalid_argument);
}

TEST_CASE("enlarged reference") {
  ScenarioConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 1.0;
  cfg.snapshot_times = {0.0, 0.5, 1.0};

  SUBCASE("argument validation") {
    CHECK_THROWS_AS((void)enlarged_reference(cfg, 1.0, 0), std::invalid_argument);
    ScenarioConfig off = cfg;
    off.snapshot_times = {0.00333};
    CHECK_THROWS_AS((void)enlarged_reference(off, 1.0, 2), std::invalid_argument);
  }

  SUBCASE("restriction agrees with the truncated grid at t = 0") {
    const RunResult ref = enlarged_reference(cfg, 1.0, 2, true);   // pad doubling audited
    CHECK(ref.steps == 200);
    CHECK(ref.probes.t.size() == 201);
    REQUIRE(!ref.snapshots.empty());
    const Snapshot& s0 = ref.snapshots.front();
    REQUIRE(s0.u.size() == static_cast<size_t>(cfg.node_count()));
    double worst = 0.0;
    for (long n = 1; n <= cfg.node_count(); ++n) {
      const double x = cfg.x_of(n);
      worst = std::max(worst, std::abs(s0.u[n - 1] - std::exp(-x * x)));
    }
    CHECK(worst <= 1e-12);
    CHECK(std::abs(ref.probes.u_origin.front() - 1.0) <= 1e-12);
  }
}
