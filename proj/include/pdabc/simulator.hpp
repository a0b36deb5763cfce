#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdabc/abc.hpp"
#include "pdabc/stencil.hpp"

namespace pdabc {

enum class BoundaryKind { exact, free_end };
enum class InitialKind { gaussian, zero };

struct InterfaceSpec {
  double beta = 1.0;
  double soft_lo = 0.0;
  double soft_hi = 0.0;
};

struct SourceSpec {
  double f_p = 0.2;
  double t_D = 5.0;
  long node = 0;                  // interior node index, 1-based
  double release = 5.0;
};

struct ScenarioConfig {
  double x_min = -10.0, x_max = 10.0, dx = 0.1;
  double delta = 0.25, cutoff = 0.75;
  double dt = 0.005, t_end = 40.0;
  std::vector<double> snapshot_times;
  InitialKind initial = InitialKind::gaussian;
  BoundaryKind left = BoundaryKind::exact;
  BoundaryKind right = BoundaryKind::exact;
  std::optional<InterfaceSpec> interface_;
  std::optional<SourceSpec> source;
  // When set, the initial profile is zeroed outside [first, second]. Padded
  // reference runs use this to keep their extra nodes quiescent at t = 0.
  std::optional<std::pair<double, double>> initial_support;

  long node_count() const;        // L = round((x_max - x_min)/dx) + 1
  double x_of(long n) const { return x_min + (n - 1) * dx; }
};

double ricker(double t, double f_p, double t_D);
std::pair<double, double> gaussian_initial(double x);

// Per-interior-node gather weights over the extended array (interior plus K
// ghost slots per side). Bonds cut by a free side carry zero weight and drop
// out of that node's row sum, so constants stay force-free.
struct NodeOperator {
  int K = 0;
  long L = 0;
  std::vector<double> wR, wL;     // [i*K + (k-1)], i = 0..L-1 interior
  std::vector<double> diag;       // -(sum of surviving bond weights) per node
};

NodeOperator build_operator(const ScenarioConfig& cfg, const StencilCoefficients& hard);

// acc_i = diag_i u_i + sum_k (wR_ik u_{i+k} + wL_ik u_{i-k}) on the extended array.
void acceleration(const NodeOperator& op, const double* u_ext, double* acc);

// Kinetic plus bond energy of the interior state (exterior assumed detached).
double total_energy(const NodeOperator& op, const double* u_ext, const double* v);

struct Snapshot {
  double t = 0.0;
  std::vector<double> u, v;
};

struct ProbeSeries {
  std::vector<double> t, u_origin, u_left, u_right;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  ProbeSeries probes;
  std::vector<double> hist_left, hist_right;   // layer histories, row j: [K]
  long steps = 0;
  int K = 0;
};

// Velocity Verlet with exact-ABC ghosts, free truncation, optional material
// interface and optional prescribed Ricker node. Owns all run state.
class Simulation {
 public:
  Simulation(const ScenarioConfig& cfg, const KernelTable* kernels);

  void step();
  long current_step() const { return j_; }
  double time() const { return static_cast<double>(j_) * cfg_.dt; }
  const std::vector<double>& u_ext() const { return ue_; }
  const std::vector<double>& velocity() const { return v_; }
  double u_interior(long n) const { return ue_[K_ + n - 1]; }   // n = 1..L
  long interior_count() const { return L_; }
  int ghost_width() const { return K_; }
  const NodeOperator& node_operator() const { return op_; }
  const BoundaryHistory* history(Side s) const;
  // test hook: overwrite one interior displacement before a step
  void poke(long n, double value) { ue_[K_ + n - 1] = value; }

 private:
  void apply_source_u(double t);
  void apply_source_v(double t);
  void refresh_ghosts();

  ScenarioConfig cfg_;
  const KernelTable* kt_ = nullptr;
  KernelTable owned_kt_;
  int K_ = 0;
  long L_ = 0, j_ = 0;
  NodeOperator op_;
  std::vector<double> ue_, v_, acc_, acc_next_;
  std::optional<BoundaryHistory> hl_, hr_;
  std::vector<double> ghost_l_, ghost_r_;
};

void verlet_step(Simulation& sim);

RunResult run_scenario(const ScenarioConfig& cfg, const KernelTable* kernels = nullptr);

}  // namespace pdabc
