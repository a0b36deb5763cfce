#include "pdabc/abc.hpp"

#include <stdexcept>
#include <string>

namespace pdabc {

BoundaryHistory make_history(Side side, int K, const double* layer0) {
  BoundaryHistory h;
  h.side = side;
  h.K = K;
  h.j_now = 0;
  h.h.assign(layer0, layer0 + K);
  return h;
}

void push_history(BoundaryHistory& h, const double* layer, long j) {
  if (j != h.j_now + 1)
    throw std::logic_error("push_history: expected step " + std::to_string(h.j_now + 1) +
                             ", got " + std::to_string(j));
  h.h.insert(h.h.end(), layer, layer + h.K);
  h.j_now = j;
}

std::vector<double> ghost_values(const KernelTable& kt, const BoundaryHistory& h) {
  if (h.K != kt.K) throw std::invalid_argument("ghost_values: layer width does not match kernels");
  const long j = h.j_now;
  if (j < 0 || j > kt.steps)
    throw std::invalid_argument("ghost_values: step outside kernel table horizon");
  const int K = kt.K;
  const double dt = kt.dt;
  std::vector<double> out(K, 0.0);
  for (long alpha = 1; alpha < j; ++alpha) {
    const double* col = kt.column(alpha);
    const double* row = h.row(j - alpha);
    for (int p = 0; p < K; ++p) {
      double acc = 0.0;
      for (int m = 0; m < K; ++m) acc += col[p * K + m] * row[m];
      out[p] += acc;
    }
  }
  for (int p = 0; p < K; ++p) out[p] *= dt;
  if (j >= 1) {
    const double* col = kt.column(j);
    const double* row0 = h.row(0);
    for (int p = 0; p < K; ++p) {
      double acc = 0.0;
      for (int m = 0; m < K; ++m) acc += col[p * K + m] * row0[m];
      out[p] += 0.5 * dt * acc;
    }
  }
  return out;
}

void ghost_values_pair(const KernelTable& kt, const BoundaryHistory& left,
                       const BoundaryHistory& right, double* out_left, double* out_right) {
  const int K = kt.K;
  const double dt = kt.dt;
  const long j = left.j_now;
  if (right.j_now != j) throw std::logic_error("ghost_values_pair: histories out of sync");
  for (int p = 0; p < K; ++p) out_left[p] = out_right[p] = 0.0;
  for (long alpha = 1; alpha < j; ++alpha) {
    const double* col = kt.column(alpha);
    const double* rl = left.row(j - alpha);
    const double* rr = right.row(j - alpha);
    for (int p = 0; p < K; ++p) {
      double al = 0.0, ar = 0.0;
      const double* cp = col + p * K;
      for (int m = 0; m < K; ++m) {
        al += cp[m] * rl[m];
        ar += cp[m] * rr[m];
      }
      out_left[p] += al;
      out_right[p] += ar;
    }
  }
  for (int p = 0; p < K; ++p) {
    out_left[p] *= dt;
    out_right[p] *= dt;
  }
  if (j >= 1) {
    const double* col = kt.column(j);
    const double* rl = left.row(0);
    const double* rr = right.row(0);
    for (int p = 0; p < K; ++p) {
      double al = 0.0, ar = 0.0;
      const double* cp = col + p * K;
      for (int m = 0; m < K; ++m) {
        al += cp[m] * rl[m];
        ar += cp[m] * rr[m];
      }
      out_left[p] += 0.5 * dt * al;
      out_right[p] += 0.5 * dt * ar;
    }
  }
}

}  // namespace pdabc
