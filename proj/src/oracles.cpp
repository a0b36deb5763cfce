#include "pdabc/oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pdabc {

namespace {

long double j1_series(long double z) {
  // J1(z) = sum_s (-1)^s (z/2)^(2s+1) / (s! (s+1)!)
  const long double q = z * z / 4.0L;
  long double term = z / 2.0L;
  long double sum = term;
  for (int s = 1; s <= 200; ++s) {
    term *= -q / (static_cast<long double>(s) * (s + 1));
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return sum;
}

long double j1_asymptotic(long double z) {
  // Hankel expansion: J1(z) ~ sqrt(2/(pi z)) (P cos(chi) - Q sin(chi)),
  // chi = z - 3pi/4, with the mu = 4 coefficient ladder.
  const long double mu = 4.0L;
  long double P = 1.0L, Q = 0.0L;
  long double beta = 1.0L;                 // a_k / z^k
  long double prev = 1.0L;
  for (int k = 1; k <= 40; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    beta *= (mu - odd * odd) / (8.0L * k * z);
    if (std::abs(beta) > prev) break;      // divergent tail reached
    prev = std::abs(beta);
    const int phase = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 1)
      Q += phase * beta;
    else
      P += phase * beta;
    if (std::abs(beta) < 1e-20L) break;
  }
  const long double chi = z - 3.0L * M_PIl / 4.0L;
  return std::sqrt(2.0L / (M_PIl * z)) * (P * std::cos(chi) - Q * std::sin(chi));
}

constexpr double kJ1Crossover = 15.0;

}  // namespace

double bessel_j1(double z) {
  if (z < 0.0 || z > 2e4)
    throw std::domain_error("bessel_j1: argument outside [0, 2e4]");
  if (z <= kJ1Crossover) return static_cast<double>(j1_series(z));
  return static_cast<double>(j1_asymptotic(z));
}

double analytic_beam_kernel(double t) {
  if (t < 0.0) throw std::domain_error("analytic_beam_kernel: t must be nonnegative");
  if (t == 0.0) return 0.0;
  return 2.0 * bessel_j1(2.0 * t) * std::sin(2.0 * t) / t;
}

namespace {

double dispersion_omega(double k, double delta) {
  const double e = std::exp(-k * k * delta * delta / 4.0);
  return (2.0 / delta) * std::sqrt(std::max(0.0, 1.0 - e));
}

double dispersion_vg_max(double delta, double k_max) {
  double vg = 0.0;
  const int n = 400;
  const double h = k_max / n;
  double prev = dispersion_omega(0.0, delta);
  for (int i = 1; i <= n; ++i) {
    const double cur = dispersion_omega(i * h, delta);
    vg = std::max(vg, std::abs(cur - prev) / h);
    prev = cur;
  }
  return vg;
}

}  // namespace

double analytic_bar_panels(double x, double t, double delta, double k_max, long panels) {
  if (panels % 2 == 1) ++panels;
  const double h = k_max / panels;
  auto f = [&](double k) {
    return std::cos(k * x) * std::exp(-k * k / 4.0) * std::cos(t * dispersion_omega(k, delta));
  };
  double sum = f(0.0) + f(k_max);
  for (long i = 1; i < panels; i += 2) sum += 4.0 * f(i * h);
  for (long i = 2; i < panels; i += 2) sum += 2.0 * f(i * h);
  return sum * h / 3.0 / std::sqrt(M_PI);
}

double analytic_bar(double x, double t, double delta, const QuadratureSpec& spec) {
  if (!(spec.k_max > 0.0) || !(spec.tolerance > 0.0))
    throw std::invalid_argument("analytic_bar: invalid quadrature spec");
  const double vg = dispersion_vg_max(delta, spec.k_max);
  const double cycles = spec.k_max * (std::abs(x) + t * vg) / (2.0 * M_PI);
  long panels = std::max<long>(spec.panels, static_cast<long>(std::ceil(20.0 * cycles)));
  if (panels % 2 == 1) ++panels;

  double prev = analytic_bar_panels(x, t, delta, spec.k_max, panels);
  for (int pass = 0; pass < 12; ++pass) {
    panels *= 2;
    const double cur = analytic_bar_panels(x, t, delta, spec.k_max, panels);
    if (std::abs(cur - prev) <= spec.tolerance) return cur;
    prev = cur;
  }
  throw std::runtime_error("analytic_bar: tolerance " + std::to_string(spec.tolerance) +
                           " unachievable within the panel budget");
}

ChainTable chain_greens(const StencilCoefficients& s, double dt, double T, int m_keep,
                        int substeps) {
  const int K = s.K;
  const double omega_max = s.identically_zero ? 0.0 : validate_symbol(s);
  const long N = 4 * static_cast<long>(std::ceil(omega_max * T)) + 200;
  if (m_keep > N - K) throw std::invalid_argument("chain_greens: m_keep too large for the chain");
  const long total = 2 * N + 1 + 2 * K;
  const long base = N + K;                  // slot of node 0
  const long J = std::lround(T / dt);
  const double h = dt / substeps;
  const auto& a = s.a;

  std::vector<double> u(total, 0.0), v(total, 0.0);
  std::vector<double> k1(total, 0.0), k2(total, 0.0), k3(total, 0.0), k4(total, 0.0),
      yu(total, 0.0);
  v[base] = 1.0;

  ChainTable ct;
  ct.m_keep = m_keep;
  ct.dt = dt;
  ct.steps = J;
  ct.g.assign(static_cast<size_t>(m_keep + 1) * (J + 1), 0.0);
  ct.gdot.assign(static_cast<size_t>(m_keep + 1) * (J + 1), 0.0);

  auto accel = [&](const std::vector<double>& arr, std::vector<double>& out) {
    for (long i = K; i < total - K; ++i) {
      double acc = a[0] * arr[i];
      for (int k = 1; k <= K; ++k) acc += a[k] * (arr[i + k] + arr[i - k]);
      out[i] = acc;
    }
  };
  auto record = [&](long j) {
    for (int m = 0; m <= m_keep; ++m) {
      ct.g[static_cast<size_t>(m) * (J + 1) + j] = u[base + m];
      ct.gdot[static_cast<size_t>(m) * (J + 1) + j] = v[base + m];
      ct.evenness_defect =
          std::max(ct.evenness_defect, std::abs(u[base + m] - u[base - m]));
    }
  };

  record(0);
  for (long j = 0; j < J; ++j) {
    for (int sub = 0; sub < substeps; ++sub) {
      accel(u, k1);
      for (long i = K; i < total - K; ++i) yu[i] = u[i] + 0.5 * h * v[i];
      accel(yu, k2);
      for (long i = K; i < total - K; ++i) yu[i] = u[i] + 0.5 * h * (v[i] + 0.5 * h * k1[i]);
      accel(yu, k3);
      for (long i = K; i < total - K; ++i) yu[i] = u[i] + h * (v[i] + 0.5 * h * k2[i]);
      accel(yu, k4);
      for (long i = K; i < total - K; ++i) {
        u[i] += h * (v[i] + (h / 6.0) * (k1[i] + k2[i] + k3[i]));
        v[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
    }
    record(j + 1);
  }
  return ct;
}

RunResult enlarged_reference(const ScenarioConfig& cfg, double T, int refine, bool verify_pad) {
  if (refine < 1) throw std::invalid_argument("enlarged_reference: refine must be >= 1");
  const auto hard = build_stencil(gaussian_micromodulus(cfg.delta, cfg.cutoff), cfg.dx);
  const double vg = group_velocity_max(hard);

  auto run_padded = [&](long pad_scale) -> RunResult {
    const long pad_nodes = static_cast<long>(std::ceil(1.1 * vg * T)) + hard.K;
    const long padL = (cfg.left == BoundaryKind::exact) ? pad_scale * pad_nodes : 0;
    const long padR = (cfg.right == BoundaryKind::exact) ? pad_scale * pad_nodes : 0;

    ScenarioConfig big = cfg;
    big.x_min = cfg.x_min - padL * cfg.dx;
    big.x_max = cfg.x_max + padR * cfg.dx;
    big.left = BoundaryKind::free_end;
    big.right = BoundaryKind::free_end;
    big.dt = cfg.dt / refine;
    big.t_end = T;
    big.initial_support = std::make_pair(cfg.x_min, cfg.x_max);
    if (big.source) big.source->node += padL;

    Simulation sim(big, nullptr);
    const long L = cfg.node_count();
    const long J = std::lround(T / big.dt);
    std::vector<long> snap_step;
    for (double ts : cfg.snapshot_times) {
      if (ts > T + 1e-9) continue;
      const long js = std::lround(ts / big.dt);
      if (std::abs(js * big.dt - ts) > 1e-9 * std::max(1.0, std::abs(ts)))
        throw std::invalid_argument("enlarged_reference: snapshot times must align with dt");
      snap_step.push_back(js);
    }
    const long n_origin =
        std::clamp(std::lround((0.0 - cfg.x_min) / cfg.dx) + 1, 1L, L) + padL;

    RunResult out;
    out.K = hard.K;
    out.steps = J;
    auto record = [&](long j) {
      out.probes.t.push_back(j * big.dt);
      out.probes.u_origin.push_back(sim.u_interior(n_origin));
      out.probes.u_left.push_back(sim.u_interior(1 + padL));
      out.probes.u_right.push_back(sim.u_interior(padL + L));
      for (size_t si = 0; si < snap_step.size(); ++si) {
        if (snap_step[si] == j) {
          Snapshot snap;
          snap.t = snap_step[si] * big.dt;
          snap.u.resize(L);
          snap.v.resize(L);
          for (long n = 1; n <= L; ++n) {
            snap.u[n - 1] = sim.u_interior(padL + n);
            snap.v[n - 1] = sim.velocity()[padL + n - 1];
          }
          out.snapshots.push_back(std::move(snap));
        }
      }
    };
    record(0);
    for (long j = 1; j <= J; ++j) {
      sim.step();
      record(j);
    }
    return out;
  };

  RunResult ref = run_padded(1);
  if (verify_pad) {
    const RunResult wide = run_padded(2);
    double worst = 0.0;
    for (size_t s = 0; s < ref.snapshots.size(); ++s)
      for (size_t i = 0; i < ref.snapshots[s].u.size(); ++i) {
        worst = std::max(worst, std::abs(ref.snapshots[s].u[i] - wide.snapshots[s].u[i]));
        worst = std::max(worst, std::abs(ref.snapshots[s].v[i] - wide.snapshots[s].v[i]));
      }
    for (size_t i = 0; i < ref.probes.t.size(); ++i) {
      worst = std::max(worst, std::abs(ref.probes.u_left[i] - wide.probes.u_left[i]));
      worst = std::max(worst, std::abs(ref.probes.u_right[i] - wide.probes.u_right[i]));
    }
    if (worst > 1e-12)
      throw std::runtime_error("enlarged_reference: pad-doubling check failed, drift " +
                               std::to_string(worst));
  }
  return ref;
}

}  // namespace pdabc
