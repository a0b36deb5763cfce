#include "pdabc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pdabc {

long ScenarioConfig::node_count() const {
  return std::lround((x_max - x_min) / dx) + 1;
}

double ricker(double t, double f_p, double t_D) {
  const double arg = M_PI * M_PI * f_p * f_p * (t - t_D) * (t - t_D);
  return (1.0 - 2.0 * arg) * std::exp(-arg);
}

std::pair<double, double> gaussian_initial(double x) {
  return {std::exp(-x * x), 0.0};
}

NodeOperator build_operator(const ScenarioConfig& cfg, const StencilCoefficients& hard) {
  const int K = hard.K;
  const long L = cfg.node_count();
  const long n_ext = L + 2 * K;
  const double x_first = cfg.x_min - K * cfg.dx;

  BondGrid grid;
  if (cfg.interface_) {
    const auto& ifc = *cfg.interface_;
    if (ifc.soft_lo - cfg.x_min < K * cfg.dx - 1e-12 ||
        cfg.x_max - ifc.soft_hi < K * cfg.dx - 1e-12)
      throw std::invalid_argument("scenario: soft region too close to the domain ends");
    MaterialLayout layout{ifc.soft_lo, ifc.soft_hi, ifc.beta};
    grid = heterogeneous_stencil(gaussian_micromodulus(cfg.delta, cfg.cutoff), layout, cfg.dx,
                                 x_first, n_ext);
  } else {
    grid = homogeneous_bonds(hard, n_ext);
  }
  if (grid.K != K) throw std::runtime_error("build_operator: bond reach mismatch");

  NodeOperator op;
  op.K = K;
  op.L = L;
  op.wR.assign(static_cast<size_t>(L) * K, 0.0);
  op.wL.assign(static_cast<size_t>(L) * K, 0.0);
  op.diag.assign(L, 0.0);
  const long last_interior = K + L - 1;
  for (long i = 0; i < L; ++i) {
    const long e = K + i;
    double row = 0.0;
    for (int k = 1; k <= K; ++k) {
      double wr = grid.bond(e, k);
      if (cfg.right == BoundaryKind::free_end && e + k > last_interior) wr = 0.0;
      double wl = grid.bond(e - k, k);
      if (cfg.left == BoundaryKind::free_end && e - k < K) wl = 0.0;
      op.wR[i * K + (k - 1)] = wr;
      op.wL[i * K + (k - 1)] = wl;
      row += wr + wl;
    }
    op.diag[i] = -row;
  }
  return op;
}

void acceleration(const NodeOperator& op, const double* u_ext, double* acc) {
  const int K = op.K;
  for (long i = 0; i < op.L; ++i) {
    const long e = K + i;
    const double* wr = op.wR.data() + i * K;
    const double* wl = op.wL.data() + i * K;
    double a = op.diag[i] * u_ext[e];
    for (int k = 1; k <= K; ++k) a += wr[k - 1] * u_ext[e + k] + wl[k - 1] * u_ext[e - k];
    acc[i] = a;
  }
}

double total_energy(const NodeOperator& op, const double* u_ext, const double* v) {
  const int K = op.K;
  double kin = 0.0, pot = 0.0;
  for (long i = 0; i < op.L; ++i) {
    kin += v[i] * v[i];
    const long e = K + i;
    const double* wr = op.wR.data() + i * K;
    for (int k = 1; k <= K; ++k) {
      const double d = u_ext[e + k] - u_ext[e];
      pot += wr[k - 1] * d * d;
    }
  }
  return 0.5 * kin + 0.5 * pot;
}

Simulation::Simulation(const ScenarioConfig& cfg, const KernelTable* kernels) : cfg_(cfg) {
  const auto spec = gaussian_micromodulus(cfg.delta, cfg.cutoff);
  const auto hard = build_stencil(spec, cfg.dx);
  K_ = hard.K;
  L_ = cfg.node_count();
  if (L_ < 2 * K_) throw std::invalid_argument("scenario: domain shorter than two bond reaches");

  const double omega_max = validate_symbol(hard);
  if (cfg.dt * omega_max > 2.0)
    throw std::invalid_argument("scenario: dt*omega_max = " + std::to_string(cfg.dt * omega_max) +
                                " violates the Verlet stability bound 2");
  for (double ts : cfg.snapshot_times)
    if (ts > cfg.t_end + 1e-9) throw std::invalid_argument("scenario: snapshot time beyond t_end");
  if (cfg.source) {
    if (cfg.source->node < 1 || cfg.source->node > L_)
      throw std::invalid_argument("scenario: source node outside the domain");
    if (!(cfg.source->f_p > 0.0)) throw std::invalid_argument("scenario: source needs f_p > 0");
  }

  op_ = build_operator(cfg, hard);

  const bool needs_kernels =
      cfg.left == BoundaryKind::exact || cfg.right == BoundaryKind::exact;
  const long J = std::lround(cfg.t_end / cfg.dt);
  if (needs_kernels) {
    if (kernels == nullptr) {
      owned_kt_ = solve_f(integrate_g(hard, cfg.dt, cfg.t_end));
      kt_ = &owned_kt_;
    } else {
      kt_ = kernels;
    }
    if (std::abs(kt_->dt - cfg.dt) > 1e-12 * cfg.dt)
      throw std::invalid_argument("scenario: kernel table dt does not match simulation dt");
    if (kt_->K != K_) throw std::invalid_argument("scenario: kernel table bond reach mismatch");
    if (kt_->steps < J) throw std::invalid_argument("scenario: kernel table horizon too short");
  }

  ue_.assign(L_ + 2 * K_, 0.0);
  v_.assign(L_, 0.0);
  acc_.assign(L_, 0.0);
  acc_next_.assign(L_, 0.0);
  ghost_l_.assign(K_, 0.0);
  ghost_r_.assign(K_, 0.0);
  if (cfg.initial == InitialKind::gaussian) {
    for (long n = 1; n <= L_; ++n) {
      const double x = cfg.x_of(n);
      if (cfg.initial_support &&
          (x < cfg.initial_support->first - 1e-12 || x > cfg.initial_support->second + 1e-12))
        continue;
      auto [u0, v0] = gaussian_initial(x);
      ue_[K_ + n - 1] = u0;
      v_[n - 1] = v0;
    }
  }
  if (cfg.source) apply_source_u(0.0);

  std::vector<double> layer(K_);
  if (cfg.left == BoundaryKind::exact) {
    for (int m = 0; m < K_; ++m) layer[m] = ue_[K_ + m];
    hl_ = make_history(Side::left, K_, layer.data());
  }
  if (cfg.right == BoundaryKind::exact) {
    for (int m = 0; m < K_; ++m) layer[m] = ue_[K_ + L_ - 1 - m];
    hr_ = make_history(Side::right, K_, layer.data());
  }
  refresh_ghosts();
  acceleration(op_, ue_.data(), acc_.data());
  if (cfg.source) apply_source_v(0.0);
}

const BoundaryHistory* Simulation::history(Side s) const {
  if (s == Side::left) return hl_ ? &*hl_ : nullptr;
  return hr_ ? &*hr_ : nullptr;
}

void Simulation::apply_source_u(double t) {
  const auto& src = *cfg_.source;
  if (t <= src.release + 1e-12) ue_[K_ + src.node - 1] = ricker(t, src.f_p, src.t_D);
}

void Simulation::apply_source_v(double t) {
  const auto& src = *cfg_.source;
  if (t <= src.release + 1e-12)
    v_[src.node - 1] =
        (ricker(t + cfg_.dt, src.f_p, src.t_D) - ricker(t - cfg_.dt, src.f_p, src.t_D)) /
        (2.0 * cfg_.dt);
}

void Simulation::refresh_ghosts() {
  if (hl_ && hr_) {
    ghost_values_pair(*kt_, *hl_, *hr_, ghost_l_.data(), ghost_r_.data());
  } else if (hl_) {
    ghost_l_ = ghost_values(*kt_, *hl_);
  } else if (hr_) {
    ghost_r_ = ghost_values(*kt_, *hr_);
  }
  if (hl_)
    for (int p = 0; p < K_; ++p) ue_[K_ - 1 - p] = ghost_l_[p];
  if (hr_)
    for (int p = 0; p < K_; ++p) ue_[K_ + L_ + p] = ghost_r_[p];
}

void Simulation::step() {
  const double dt = cfg_.dt;
  const double t1 = static_cast<double>(j_ + 1) * dt;
  for (long i = 0; i < L_; ++i)
    ue_[K_ + i] += dt * v_[i] + 0.5 * dt * dt * acc_[i];
  if (cfg_.source) apply_source_u(t1);

  std::vector<double> layer(K_);
  if (hl_) {
    for (int m = 0; m < K_; ++m) layer[m] = ue_[K_ + m];
    push_history(*hl_, layer.data(), j_ + 1);
  }
  if (hr_) {
    for (int m = 0; m < K_; ++m) layer[m] = ue_[K_ + L_ - 1 - m];
    push_history(*hr_, layer.data(), j_ + 1);
  }
  refresh_ghosts();

  acceleration(op_, ue_.data(), acc_next_.data());
  for (long i = 0; i < L_; ++i) v_[i] += 0.5 * dt * (acc_[i] + acc_next_[i]);
  if (cfg_.source) apply_source_v(t1);
  acc_.swap(acc_next_);
  ++j_;

  if ((j_ & 0xff) == 0) {
    double peak = 0.0;
    for (long i = 0; i < L_; ++i) peak = std::max(peak, std::abs(ue_[K_ + i]));
    if (peak > 1e6)
      throw std::runtime_error("run aborted: amplitude " + std::to_string(peak) +
                               " exceeds 1e6 at t = " + std::to_string(time()));
  }
}

void verlet_step(Simulation& sim) { sim.step(); }

RunResult run_scenario(const ScenarioConfig& cfg, const KernelTable* kernels) {
  Simulation sim(cfg, kernels);
  const long L = sim.interior_count();
  const long J = std::lround(cfg.t_end / cfg.dt);

  std::vector<long> snap_step(cfg.snapshot_times.size());
  for (size_t s = 0; s < cfg.snapshot_times.size(); ++s) {
    const double ts = cfg.snapshot_times[s];
    const long js = std::lround(ts / cfg.dt);
    if (std::abs(js * cfg.dt - ts) > 1e-9 * std::max(1.0, std::abs(ts)))
      throw std::invalid_argument("scenario: snapshot times must be multiples of dt");
    snap_step[s] = js;
  }

  const long n_origin = std::clamp(std::lround((0.0 - cfg.x_min) / cfg.dx) + 1, 1L, L);
  RunResult out;
  out.K = sim.ghost_width();
  out.steps = J;

  auto record = [&](long j) {
    out.probes.t.push_back(j * cfg.dt);
    out.probes.u_origin.push_back(sim.u_interior(n_origin));
    out.probes.u_left.push_back(sim.u_interior(1));
    out.probes.u_right.push_back(sim.u_interior(L));
    for (size_t s = 0; s < snap_step.size(); ++s) {
      if (snap_step[s] == j) {
        Snapshot snap;
        snap.t = cfg.snapshot_times[s];
        snap.u.resize(L);
        snap.v = sim.velocity();
        for (long n = 1; n <= L; ++n) snap.u[n - 1] = sim.u_interior(n);
        out.snapshots.push_back(std::move(snap));
      }
    }
  };

  record(0);
  for (long j = 1; j <= J; ++j) {
    sim.step();
    record(j);
  }
  if (const auto* h = sim.history(Side::left)) out.hist_left = h->h;
  if (const auto* h = sim.history(Side::right)) out.hist_right = h->h;
  return out;
}

}  // namespace pdabc
