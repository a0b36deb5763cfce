#pragma once

#include <functional>
#include <vector>

#include "pdabc/greens.hpp"

namespace pdabc {

// Boundary kernels f_n^m(t): response at exterior node n, -(K-1) <= n <= 0,
// to a unit impulse at boundary-layer node m, 1 <= m <= K. Stored column-major
// in time for the marching solver and the per-step convolutions:
//   f[(j*K + p)*K + (m-1)] with p = -n.
struct KernelTable {
  int K = 0;
  double dt = 0.0;
  long steps = 0;
  std::vector<double> f;
  StencilCoefficients stencil;

  double at(int m, int n, long j) const {
    return f[(static_cast<long>(j) * K + (-n)) * K + (m - 1)];
  }
  const double* column(long j) const { return f.data() + static_cast<long>(j) * K * K; }
};

// Explicit trapezoidal march of the Volterra system for all K impulse families.
KernelTable solve_f(const GreensTable& gt);

// Independent check of the whole kernel pipeline: drive a brute-force
// semi-infinite chain with prescribed layer data u_m(t) = F_m(t), F(0) = 0,
// and compare the exterior nodes against the kernel convolutions.
// Returns the max discrepancy over n in [-(K-1), 0] and t <= T.
double kernel_convolution_check(const KernelTable& kt,
                                const std::vector<std::function<double(double)>>& F,
                                double T);

}  // namespace pdabc
