#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdabc/greens.hpp"
#include "pdabc/oracles.hpp"

using namespace pdabc;

namespace {

StencilCoefficients beam() { return direct_stencil({-6.0, 4.0, -1.0}); }

double table_vs_chain(const GreensTable& gt, const ChainTable& ct) {
  double worst = 0.0;
  for (int m = 0; m < 2 * gt.K; ++m)
    for (long j = 0; j <= gt.steps; ++j)
      worst = std::max(worst, std::abs(gt.at(m, j) - ct.at(m, j)));
  return worst;
}

}  // namespace

TEST_CASE("table shape, impulse data, evenness accessor") {
  const auto gt = integrate_g(beam(), 0.01, 1.0);
  CHECK(gt.steps == 100);
  CHECK(gt.K == 2);
  CHECK(gt.at(0, 0) == 0.0);
  CHECK(gt.dot_at(0, 0) == 1.0);
  CHECK(gt.at(1, 0) == 0.0);
  CHECK(gt.dot_at(1, 0) == 0.0);
  CHECK(gt.at(-1, 50) == gt.at(1, 50));
  CHECK(gt.dot_at(-2, 50) == gt.dot_at(2, 50));
}

TEST_CASE("stability precondition cites the top frequency") {
  try {
    (void)integrate_g(beam(), 0.71, 10.0);
    FAIL("expected the step-size rejection");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("omega_max") != std::string::npos);
    CHECK(msg.find("4.0") != std::string::npos);
  }
}

TEST_CASE("singular closure term") {
  const double gdot[4] = {0.5, 0.25, 0.125, 0.0625};
  CHECK(singular_term(2.0, 4, gdot, 2, 1e-14) == doctest::Approx(0.125 / 2.0));
  CHECK(singular_term(2.0, 5, gdot, 2, 1e-14) == doctest::Approx(0.0625 / 2.0));
  CHECK(singular_term(1e-15, 4, gdot, 2, 1e-14) == 0.0);
  CHECK_THROWS_AS((void)singular_term(1.0, 3, gdot, 2, 1e-14), std::invalid_argument);
}

TEST_CASE("integrated response matches the brute-force chain") {
  const auto s = beam();
  const auto gt = integrate_g(s, 0.02, 10.0);
  const auto ct = chain_greens(s, 0.02, 10.0, 2 * s.K, 8);
  CHECK(table_vs_chain(gt, ct) <= 1e-6);
  CHECK(ct.evenness_defect <= 1e-13);
}

TEST_CASE("fourth-order accuracy against a fine chain") {
  const auto s = beam();
  const double T = 5.0;
  const auto e_coarse = table_vs_chain(integrate_g(s, 0.04, T), chain_greens(s, 0.04, T, 4, 64));
  const auto e_fine = table_vs_chain(integrate_g(s, 0.02, T), chain_greens(s, 0.02, T, 4, 32));
  CHECK(e_coarse / e_fine >= 11.0);    // 2^3.5, the startup would cap this at 8 otherwise
}

TEST_CASE("recursive closure identity on chain data") {
  // row 2K from rows 0..2K-1: g_4 = g_0 - (a1/(2 a2))(g_3 - g_1) - (2/(a2 t)) gdot_2
  const auto s = beam();
  const auto ct = chain_greens(s, 0.02, 10.0, 2 * s.K, 8);
  const double a1 = s.a[1], a2 = s.a[2];
  double worst = 0.0;
  for (long j = std::lround(0.5 / ct.dt); j <= ct.steps; ++j) {
    const double t = j * ct.dt;
    const double rec = ct.at(0, j) - (a1 / (2.0 * a2)) * (ct.at(3, j) - ct.at(1, j)) -
                       (2.0 / (a2 * t)) * ct.dot_at(2, j);
    worst = std::max(worst, std::abs(rec - ct.at(4, j)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("long-horizon peak follows the dispersion growth law") {
  // the symbol 2(1 - cos theta) has a double zero at theta = 0, so the
  // stationary-phase envelope of the impulse response grows like sqrt(t / 2 pi)
  const double T = 1e4;
  const auto gt = integrate_g(beam(), 0.05, T);
  double peak = 0.0;
  for (double v : gt.g) peak = std::max(peak, std::abs(v));
  CHECK(peak == doctest::Approx(std::sqrt(T / (2.0 * M_PI))).epsilon(0.01));
}

TEST_CASE("time reversal recovers an earlier state") {
  // run backwards from t = T to t = 1 and compare against the forward table
  // there; continuing into t -> 0 is ill-posed, the 1/t closure term amplifies
  // any perturbation without bound
  const auto s = beam();
  const int n = 2 * s.K;
  const double dt = 0.01, T = 5.0, t_stop = 1.0;
  const double t_floor = 1e-12 * dt;
  const auto gt = integrate_g(s, dt, T);
  const long J = gt.steps;
  const long j_stop = std::lround(t_stop / dt);

  std::vector<double> w(n), wd(n);
  for (int m = 0; m < n; ++m) {
    w[m] = gt.at(m, J);
    wd[m] = -gt.dot_at(m, J);
  }
  // reversed dynamics: acc(tau, w, wdot) = rhs(T - tau, w, -wdot)
  auto acc = [&](double tau, const std::vector<double>& y, const std::vector<double>& yd,
                 std::vector<double>& out) {
    std::vector<double> neg(n);
    for (int m = 0; m < n; ++m) neg[m] = -yd[m];
    g_rhs(s, T - tau, y.data(), neg.data(), out.data(), t_floor);
  };
  std::vector<double> k1(n), k2(n), k3(n), k4(n), yg(n), yd(n);
  for (long j = 0; j < J - j_stop; ++j) {
    const double tau = j * dt;
    acc(tau, w, wd, k1);
    for (int m = 0; m < n; ++m) yg[m] = w[m] + 0.5 * dt * wd[m];
    for (int m = 0; m < n; ++m) yd[m] = wd[m] + 0.5 * dt * k1[m];
    acc(tau + 0.5 * dt, yg, yd, k2);
    for (int m = 0; m < n; ++m) yg[m] = w[m] + 0.5 * dt * (wd[m] + 0.5 * dt * k1[m]);
    for (int m = 0; m < n; ++m) yd[m] = wd[m] + 0.5 * dt * k2[m];
    acc(tau + 0.5 * dt, yg, yd, k3);
    for (int m = 0; m < n; ++m) yg[m] = w[m] + dt * (wd[m] + 0.5 * dt * k2[m]);
    for (int m = 0; m < n; ++m) yd[m] = wd[m] + dt * k3[m];
    acc(tau + dt, yg, yd, k4);
    for (int m = 0; m < n; ++m) {
      w[m] += dt * (wd[m] + (dt / 6.0) * (k1[m] + k2[m] + k3[m]));
      wd[m] += (dt / 6.0) * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
    }
  }
  double worst = 0.0;
  for (int m = 0; m < n; ++m) {
    worst = std::max(worst, std::abs(w[m] - gt.at(m, j_stop)));
    worst = std::max(worst, std::abs(-wd[m] - gt.dot_at(m, j_stop)));
  }
  CHECK(worst <= 1e-5);   // measured 7.9e-9
}
