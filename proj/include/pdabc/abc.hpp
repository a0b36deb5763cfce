#pragma once

#include <vector>

#include "pdabc/kernel.hpp"

namespace pdabc {

enum class Side { left, right };

// Append-only record of the K boundary-layer displacements, one row per step.
// Layer index m runs 1..K counted inward from the boundary on either side.
struct BoundaryHistory {
  Side side = Side::left;
  int K = 0;
  long j_now = -1;
  std::vector<double> h;          // row j: h[j*K + (m-1)]

  const double* row(long j) const { return h.data() + j * K; }
};

BoundaryHistory make_history(Side side, int K, const double* layer0);

// Appends the layer values for step j. Throws on out-of-order pushes.
void push_history(BoundaryHistory& h, const double* layer, long j);

// Ghost displacements u_n at the history's current step, n = 0..-(K-1)
// (out[p] holds n = -p), by trapezoidal convolution of kernels with layer
// history. f^{m,0} = 0, so only strictly past rows and the initial row enter.
std::vector<double> ghost_values(const KernelTable& kt, const BoundaryHistory& h);

// Both sides in one sweep over the kernel columns (the memory-bound path).
void ghost_values_pair(const KernelTable& kt, const BoundaryHistory& left,
                       const BoundaryHistory& right, double* out_left, double* out_right);

}  // namespace pdabc
