#pragma once

#include <vector>
#include <utility>

namespace pdabc {

// Truncated Gaussian micromodulus C(r) = amplitude * exp(-r^2/delta^2) for |r| <= cutoff.
struct MicromodulusSpec {
  double delta;
  double amplitude;
  double cutoff;

  double evaluate(double r) const;
};

MicromodulusSpec gaussian_micromodulus(double delta, double cutoff);

// Coefficients of the semi-discrete nonlocal operator:
//   acc_n = a[0]*u_n + sum_{k=1..K} a[k]*(u_{n+k} + u_{n-k})
struct StencilCoefficients {
  int K = 0;
  std::vector<double> a;          // a[0..K]
  bool zero_row_sum = false;      // |a0 + 2*sum a_k| at machine level
  bool identically_zero = false;

  double row_sum() const;
};

StencilCoefficients build_stencil(const MicromodulusSpec& spec, double dx);
StencilCoefficients direct_stencil(const std::vector<double>& a);

// Largest lattice frequency sqrt(-symbol) over theta in [0, pi]; throws if the
// symbol a0 + 2*sum a_k cos(k theta) is positive anywhere (complex frequencies).
double validate_symbol(const StencilCoefficients& s, int grid_points = 10001);

// Max group speed in nodes per unit time, max_theta |d omega / d theta|,
// finite-differenced on the symbol grid. Used to size enlarged reference domains.
double group_velocity_max(const StencilCoefficients& s, int grid_points = 20001);

// Soft inclusion [soft_lo, soft_hi] with bond stiffness ratio beta in (0, 1].
// A bond is soft when either endpoint lies inside the closed soft interval.
struct MaterialLayout {
  double soft_lo;
  double soft_hi;
  double beta;
};

// Per-node bond weights on a uniform grid of n_nodes starting at x_first.
// w(i, i+k) is stored once per bond at its left endpoint, so the coefficient
// matrix is symmetric by construction. Per-node diagonals are row sums taken
// at the point of use (they depend on which bonds a boundary keeps).
struct BondGrid {
  int K = 0;
  long n_nodes = 0;
  std::vector<double> w;          // w[i*K + (k-1)], zero when i+k >= n_nodes

  double bond(long i, int k) const { return w[i * K + (k - 1)]; }
};

BondGrid heterogeneous_stencil(const MicromodulusSpec& spec, const MaterialLayout& layout,
                               double dx, double x_first, long n_nodes);

// Homogeneous variant used by the same acceleration path.
BondGrid homogeneous_bonds(const StencilCoefficients& s, long n_nodes);

}  // namespace pdabc
