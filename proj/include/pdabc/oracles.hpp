#pragma once

#include <vector>

#include "pdabc/greens.hpp"
#include "pdabc/simulator.hpp"

namespace pdabc {

// Dispersion-integral quadrature controls. `panels` is the starting panel
// count; the rule refines until successive results differ by <= tolerance.
struct QuadratureSpec {
  double k_max = 12.0;
  long panels = 2000;
  double tolerance = 1e-10;
};

// (1/sqrt(pi)) * int_0^kmax cos(kx) exp(-k^2/4) cos(t*Omega(k)) dk with
// Omega(k) = sqrt((1 - exp(-k^2 delta^2/4)) / (delta^2/4)).
double analytic_bar(double x, double t, double delta, const QuadratureSpec& spec = {});

// Single composite-Simpson pass at a fixed panel count (no refinement).
double analytic_bar_panels(double x, double t, double delta, double k_max, long panels);

// Closed form of the beam boundary kernel: 2 J_1(2t) sin(2t) / t, value 0 at t = 0.
double analytic_beam_kernel(double t);

// Absolute error <= 1e-12 on [0, 2e4]; power series below the crossover,
// Hankel asymptotic expansion above.
double bessel_j1(double z);

// Brute-force lattice integration of the unit-velocity-impulse problem on a
// chain wide enough that nothing reaches the ends. Records rows m = 0..m_keep.
struct ChainTable {
  int m_keep = 0;
  double dt = 0.0;
  long steps = 0;
  double evenness_defect = 0.0;   // max |u_m - u_{-m}| seen while recording
  std::vector<double> g, gdot;    // row-major [m][j]

  double at(int m, long j) const { return g[static_cast<long>(m) * (steps + 1) + j]; }
  double dot_at(int m, long j) const { return gdot[static_cast<long>(m) * (steps + 1) + j]; }
};

ChainTable chain_greens(const StencilCoefficients& s, double dt, double T, int m_keep,
                        int substeps = 4);

// Ground-truth run on a domain padded so no wave reaches the far ends, free
// far boundaries, zero exterior data, restricted back to the original nodes.
// Runs at cfg.dt/refine so the reference is effectively exact in time.
// verify_pad reruns with doubled padding and demands <= 1e-12 agreement.
RunResult enlarged_reference(const ScenarioConfig& cfg, double T, int refine = 10,
                             bool verify_pad = false);

}  // namespace pdabc
