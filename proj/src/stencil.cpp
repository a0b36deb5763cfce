#include "pdabc/stencil.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pdabc {

double MicromodulusSpec::evaluate(double r) const {
  if (std::abs(r) > cutoff) return 0.0;
  return amplitude * std::exp(-(r * r) / (delta * delta));
}

MicromodulusSpec gaussian_micromodulus(double delta, double cutoff) {
  if (!(delta > 0.0)) throw std::invalid_argument("micromodulus: delta must be positive");
  if (!(cutoff > 0.0)) throw std::invalid_argument("micromodulus: cutoff must be positive");
  MicromodulusSpec spec;
  spec.delta = delta;
  spec.cutoff = cutoff;
  spec.amplitude = 4.0 / (delta * delta * delta * std::sqrt(M_PI));
  return spec;
}

double StencilCoefficients::row_sum() const {
  double s = a[0];
  for (int k = 1; k <= K; ++k) s += 2.0 * a[k];
  return s;
}

StencilCoefficients build_stencil(const MicromodulusSpec& spec, double dx) {
  if (!(dx > 0.0)) throw std::invalid_argument("build_stencil: dx must be positive");
  if (dx > spec.cutoff)
    throw std::invalid_argument("build_stencil: dx exceeds cutoff, stencil degenerates to K=0");
  StencilCoefficients s;
  s.K = static_cast<int>(std::floor(spec.cutoff / dx + 1e-9));
  s.a.assign(s.K + 1, 0.0);
  double off_sum = 0.0;
  for (int k = 1; k <= s.K; ++k) {
    s.a[k] = dx * spec.evaluate(k * dx);
    off_sum += s.a[k];
  }
  s.a[0] = -2.0 * off_sum;
  s.zero_row_sum = true;
  return s;
}

StencilCoefficients direct_stencil(const std::vector<double>& a) {
  if (a.size() < 2) throw std::invalid_argument("direct_stencil: need a_0 and at least a_1");
  StencilCoefficients s;
  s.K = static_cast<int>(a.size()) - 1;
  s.a = a;
  double mag = 0.0;
  for (double v : a) mag = std::max(mag, std::abs(v));
  s.identically_zero = (mag == 0.0);
  s.zero_row_sum = std::abs(s.row_sum()) <= 1e-12 * std::max(mag, 1.0);
  return s;
}

namespace {

double symbol_value(const StencilCoefficients& s, double theta) {
  double v = s.a[0];
  for (int k = 1; k <= s.K; ++k) v += 2.0 * s.a[k] * std::cos(k * theta);
  return v;
}

}  // namespace

double validate_symbol(const StencilCoefficients& s, int grid_points) {
  if (s.K < 1 || s.a.empty()) throw std::invalid_argument("validate_symbol: empty stencil");
  double scale = 0.0;
  for (double v : s.a) scale = std::max(scale, std::abs(v));
  double w2_max = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    double theta = M_PI * static_cast<double>(i) / (grid_points - 1);
    double sym = symbol_value(s, theta);
    if (sym > 1e-12 * std::max(scale, 1.0))
      throw std::runtime_error("validate_symbol: symbol positive at theta=" + std::to_string(theta) +
                               " (complex frequency, unstable operator)");
    w2_max = std::max(w2_max, -sym);
  }
  return std::sqrt(w2_max);
}

double group_velocity_max(const StencilCoefficients& s, int grid_points) {
  double vmax = 0.0;
  double h = M_PI / (grid_points - 1);
  double prev = std::sqrt(std::max(0.0, -symbol_value(s, 0.0)));
  for (int i = 1; i < grid_points; ++i) {
    double cur = std::sqrt(std::max(0.0, -symbol_value(s, i * h)));
    vmax = std::max(vmax, std::abs(cur - prev) / h);
    prev = cur;
  }
  return vmax;
}

BondGrid heterogeneous_stencil(const MicromodulusSpec& spec, const MaterialLayout& layout,
                               double dx, double x_first, long n_nodes) {
  if (!(layout.beta > 0.0) || layout.beta > 1.0)
    throw std::invalid_argument("heterogeneous_stencil: beta must lie in (0, 1]");
  if (layout.soft_lo > layout.soft_hi)
    throw std::invalid_argument("heterogeneous_stencil: empty soft interval");
  int K = static_cast<int>(std::floor(spec.cutoff / dx + 1e-9));
  double x_last = x_first + (n_nodes - 1) * dx;
  double margin = K * dx;
  if (layout.soft_lo - x_first < margin - 1e-12 || x_last - layout.soft_hi < margin - 1e-12)
    throw std::invalid_argument(
        "heterogeneous_stencil: soft region needs K*dx of hard material on each side");

  BondGrid grid;
  grid.K = K;
  grid.n_nodes = n_nodes;
  grid.w.assign(static_cast<size_t>(n_nodes) * K, 0.0);
  // closed interval with slack for accumulated coordinate roundoff, so runs
  // with shifted grid origins classify the same physical node identically
  const double tol = 1e-9;
  auto soft = [&](double x) { return x >= layout.soft_lo - tol && x <= layout.soft_hi + tol; };
  for (long i = 0; i < n_nodes; ++i) {
    double xi = x_first + i * dx;
    for (int k = 1; k <= K; ++k) {
      if (i + k >= n_nodes) break;
      double base = dx * spec.evaluate(k * dx);
      bool hard_bond = !soft(xi) && !soft(xi + k * dx);
      grid.w[i * K + (k - 1)] = hard_bond ? base : layout.beta * base;
    }
  }
  return grid;
}

BondGrid homogeneous_bonds(const StencilCoefficients& s, long n_nodes) {
  BondGrid grid;
  grid.K = s.K;
  grid.n_nodes = n_nodes;
  grid.w.assign(static_cast<size_t>(n_nodes) * s.K, 0.0);
  for (long i = 0; i < n_nodes; ++i)
    for (int k = 1; k <= s.K; ++k)
      if (i + k < n_nodes) grid.w[i * s.K + (k - 1)] = s.a[k];
  return grid;
}

}  // namespace pdabc
