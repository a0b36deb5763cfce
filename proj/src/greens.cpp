#include "pdabc/greens.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdabc {

double singular_term(double t, int m, const double* gdot, int K, double t_floor) {
  if (m < 2 * K) throw std::invalid_argument("singular_term: only defined in the recursion regime");
  if (t <= t_floor) return 0.0;
  return gdot[m - K] / t;
}

// Closure for indices 2K..3K-1; later rows may use earlier recursed values.
static void extend_state(const StencilCoefficients& s, double t, const double* g,
                         const double* gdot, double* ext, double t_floor) {
  const int K = s.K;
  for (int m = 0; m < 2 * K; ++m) ext[m] = g[m];
  const double denom = K * s.a[K];
  for (int m = 2 * K; m < 3 * K; ++m) {
    double val = g[m - 2 * K];
    for (int k = 1; k < K; ++k)
      val -= (k * s.a[k] / denom) * (ext[m - K + k] - g[m - K - k]);
    val -= (2.0 * (m - K) / denom) * singular_term(t, m, gdot, K, t_floor);
    ext[m] = val;
  }
}

void g_rhs(const StencilCoefficients& s, double t, const double* g, const double* gdot,
           double* out_acc, double t_floor) {
  const int K = s.K;
  std::vector<double> ext(3 * K);
  extend_state(s, t, g, gdot, ext.data(), t_floor);
  for (int m = 0; m < 2 * K; ++m) {
    double acc = s.a[0] * g[m];
    for (int k = 1; k <= K; ++k) acc += s.a[k] * (ext[m + k] + g[std::abs(m - k)]);
    out_acc[m] = acc;
  }
}

namespace {

// Powers of the lattice operator applied to the unit impulse; column j of the
// series g(t) = sum_j t^(2j+1)/(2j+1)! A^j e0. Row m of power j is valid while
// m stays K*j short of the workspace edge.
struct ImpulsePowers {
  int K;
  int jmax;
  long width;
  std::vector<std::vector<double>> v;

  ImpulsePowers(const StencilCoefficients& s, double horizon) : K(s.K) {
    jmax = 1;
    double log_h = std::log(std::max(horizon, 1e-300));
    auto log_term = [&](int j) {
      return (2 * j + 1) * log_h - std::lgamma(2.0 * j + 2.0);
    };
    while (jmax < 16 && log_term(jmax) > std::log(1e-18)) ++jmax;
    width = static_cast<long>(jmax) * K + 2 * K;
    v.assign(jmax + 1, std::vector<double>(width, 0.0));
    v[0][0] = 1.0;
    for (int j = 1; j <= jmax; ++j) {
      long valid = width - static_cast<long>(j) * K;
      for (long m = 0; m < valid; ++m) {
        double acc = s.a[0] * v[j - 1][m];
        for (int k = 1; k <= K; ++k)
          acc += s.a[k] * (v[j - 1][m + k] + v[j - 1][std::labs(m - k)]);
        v[j][m] = acc;
      }
    }
  }

  void evaluate(double t, double* g, double* gdot) const {
    for (int m = 0; m < 2 * K; ++m) {
      double sg = 0.0, sd = 0.0;
      double pow_odd = t;           // t^(2j+1)/(2j+1)!
      double pow_even = 1.0;        // t^(2j)/(2j)!
      for (int j = 0; j <= jmax; ++j) {
        sg += pow_odd * v[j][m];
        sd += pow_even * v[j][m];
        pow_even = pow_odd * t / (2 * j + 2);
        pow_odd = pow_even * t / (2 * j + 3);
      }
      g[m] = sg;
      gdot[m] = sd;
    }
  }
};

}  // namespace

GreensTable integrate_g(const StencilCoefficients& s, double dt, double T, int boot_steps) {
  if (!(dt > 0.0) || T < dt) throw std::invalid_argument("integrate_g: need 0 < dt <= T");
  const double omega_max = s.identically_zero ? 0.0 : validate_symbol(s);
  if (dt * omega_max > 2.8)
    throw std::runtime_error("integrate_g: dt*omega_max = " + std::to_string(dt * omega_max) +
                             " exceeds the RK4 stability margin 2.8 (omega_max = " +
                             std::to_string(omega_max) + ")");

  const int K = s.K;
  const int n = 2 * K;
  const long J = std::lround(T / dt);
  const double t_floor = 1e-12 * dt;

  GreensTable gt;
  gt.K = K;
  gt.dt = dt;
  gt.steps = J;
  gt.stencil = s;
  gt.g.assign(static_cast<size_t>(n) * (J + 1), 0.0);
  gt.gdot.assign(static_cast<size_t>(n) * (J + 1), 0.0);

  std::vector<double> g(n, 0.0), gd(n, 0.0);
  gd[0] = 1.0;
  auto store = [&](long j) {
    for (int m = 0; m < n; ++m) {
      gt.g[static_cast<size_t>(m) * (J + 1) + j] = g[m];
      gt.gdot[static_cast<size_t>(m) * (J + 1) + j] = gd[m];
    }
  };
  store(0);

  const long nb = std::min<long>(boot_steps, J);
  if (nb > 0) {
    ImpulsePowers series(s, omega_max * nb * dt);
    for (long j = 1; j <= nb; ++j) {
      series.evaluate(j * dt, g.data(), gd.data());
      store(j);
    }
  }

  std::vector<double> k1(n), k2(n), k3(n), k4(n), yg(n), yd(n);
  for (long j = nb; j < J; ++j) {
    const double t = j * dt;
    g_rhs(s, t, g.data(), gd.data(), k1.data(), t_floor);
    for (int m = 0; m < n; ++m) {
      yg[m] = g[m] + 0.5 * dt * gd[m];
      yd[m] = gd[m] + 0.5 * dt * k1[m];
    }
    g_rhs(s, t + 0.5 * dt, yg.data(), yd.data(), k2.data(), t_floor);
    std::vector<double> yg2(n), yd2(n);
    for (int m = 0; m < n; ++m) {
      yg2[m] = g[m] + 0.5 * dt * (gd[m] + 0.5 * dt * k1[m]);
      yd2[m] = gd[m] + 0.5 * dt * k2[m];
    }
    g_rhs(s, t + 0.5 * dt, yg2.data(), yd2.data(), k3.data(), t_floor);
    std::vector<double> yg3(n), yd3(n);
    for (int m = 0; m < n; ++m) {
      yg3[m] = g[m] + dt * (gd[m] + 0.5 * dt * k2[m]);
      yd3[m] = gd[m] + dt * k3[m];
    }
    g_rhs(s, t + dt, yg3.data(), yd3.data(), k4.data(), t_floor);
    for (int m = 0; m < n; ++m) {
      double sg = gd[m] + (dt / 6.0) * (k1[m] + k2[m] + k3[m]);
      g[m] += dt * sg;
      gd[m] += (dt / 6.0) * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
    }
    store(j + 1);
  }
  return gt;
}

}  // namespace pdabc
