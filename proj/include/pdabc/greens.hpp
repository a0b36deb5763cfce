#pragma once

#include <vector>

#include "pdabc/stencil.hpp"

namespace pdabc {

// Lattice Green's functions g_m(t), response to a unit initial velocity at
// node 0. Rows m = 0..2K-1; evenness g_{-m} = g_m handled by the accessor.
struct GreensTable {
  int K = 0;
  double dt = 0.0;
  long steps = 0;                 // columns j = 0..steps
  std::vector<double> g;          // row-major [m][j]
  std::vector<double> gdot;
  StencilCoefficients stencil;

  double at(int m, long j) const {
    if (m < 0) m = -m;
    return g[static_cast<long>(m) * (steps + 1) + j];
  }
  double dot_at(int m, long j) const {
    if (m < 0) m = -m;
    return gdot[static_cast<long>(m) * (steps + 1) + j];
  }
};

// 1/t factor of the recursive closure: gdot_{m-K}(t)/t for t above t_floor,
// 0 otherwise (the state is identically zero at t = 0, so the limit is 0).
double singular_term(double t, int m, const double* gdot, int K, double t_floor);

// Second derivatives of g_0..g_{2K-1}: the interior rows of the lattice ODE,
// closed by the recursion for indices 2K..3K-1 and by evenness below 0.
void g_rhs(const StencilCoefficients& s, double t, const double* g, const double* gdot,
           double* out_acc, double t_floor);

// Classical RK4 on (g, gdot) with J = round(T/dt) steps. The first boot_steps
// columns come from the symmetric Taylor series of the lattice exponential;
// the 1/t closure term makes plain RK4 startup lose an order otherwise.
GreensTable integrate_g(const StencilCoefficients& s, double dt, double T, int boot_steps = 4);

}  // namespace pdabc
