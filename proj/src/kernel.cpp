#include "pdabc/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pdabc {

// Volterra system for the K impulse families, all sharing the same kernel
// matrix G. With p = -n and l = -lambda in [0, K-1]:
//   F[j](p, m) = S[j](p, m) - dt * sum_{alpha=1}^{j-1} G[alpha](p, l) F[j-alpha](l, m)
//   G[j](p, l) = sum_{k=l+1}^{K} a_k g_{k+p-l}(t_j)
//   S[j](p, m) = sum_{k=0}^{K-m} a_{k+m} g_{|k-p|}(t_j)
// The trapezoid endpoints vanish: G[0] = 0 because g(0) = 0, and F[0] = 0.
KernelTable solve_f(const GreensTable& gt) {
  const int K = gt.K;
  const long J = gt.steps;
  const double dt = gt.dt;
  const auto& a = gt.stencil.a;
  const long KK = static_cast<long>(K) * K;

  KernelTable kt;
  kt.K = K;
  kt.dt = dt;
  kt.steps = J;
  kt.stencil = gt.stencil;
  kt.f.assign(static_cast<size_t>(J + 1) * KK, 0.0);

  std::vector<double> G(static_cast<size_t>(J + 1) * KK, 0.0);
  for (long j = 1; j <= J; ++j) {
    double* Gj = G.data() + j * KK;
    double* Fj = kt.f.data() + j * KK;
    for (int p = 0; p < K; ++p) {
      for (int l = 0; l < K; ++l) {
        double acc = 0.0;
        for (int k = l + 1; k <= K; ++k) acc += a[k] * gt.at(k + p - l, j);
        Gj[p * K + l] = acc;
      }
      for (int m = 1; m <= K; ++m) {
        double acc = 0.0;
        for (int k = 0; k <= K - m; ++k) acc += a[k + m] * gt.at(std::abs(k - p), j);
        Fj[p * K + (m - 1)] = acc;
      }
    }
  }

  for (long j = 2; j <= J; ++j) {
    double* Fj = kt.f.data() + j * KK;
    for (long alpha = 1; alpha < j; ++alpha) {
      const double* Ga = G.data() + alpha * KK;
      const double* Fb = kt.f.data() + (j - alpha) * KK;
      for (int p = 0; p < K; ++p) {
        double* Fw = Fj + p * K;
        for (int l = 0; l < K; ++l) {
          const double c = dt * Ga[p * K + l];
          const double* Fr = Fb + l * K;
          for (int m = 0; m < K; ++m) Fw[m] -= c * Fr[m];
        }
      }
    }
  }
  return kt;
}

double kernel_convolution_check(const KernelTable& kt,
                                const std::vector<std::function<double(double)>>& F,
                                double T) {
  const int K = kt.K;
  if (static_cast<int>(F.size()) != K)
    throw std::invalid_argument("kernel_convolution_check: need one source per layer node");
  for (const auto& fm : F)
    if (std::abs(fm(0.0)) > 1e-12)
      throw std::invalid_argument("kernel_convolution_check: sources must vanish at t=0");

  const double dt = kt.dt;
  const long J = std::lround(T / dt);
  if (J > kt.steps) throw std::invalid_argument("kernel_convolution_check: T beyond kernel table");

  // Brute-force semi-infinite chain: nodes n in [-N, 0] evolve, layer nodes
  // 1..K carry the prescribed data, everything below -N stays zero.
  const double omega_max = validate_symbol(kt.stencil);
  const long N = 4 * static_cast<long>(std::ceil(omega_max * T)) + 200;
  const long total = N + 1 + 2 * K;          // zero pad | evolved | layer
  const long base = K + N;                   // slot of n = 0
  const auto& a = kt.stencil.a;

  const int sub = 4;
  const double h = dt / sub;
  std::vector<double> u(total, 0.0), v(total, 0.0);
  std::vector<double> k1(total), k2(total), k3(total), k4(total), yu(total), tmp(total);

  auto fill_layer = [&](std::vector<double>& arr, double t) {
    for (int m = 1; m <= K; ++m) arr[base + m] = F[m - 1](t);
  };
  auto accel = [&](const std::vector<double>& arr, std::vector<double>& out) {
    for (long i = K; i <= base; ++i) {
      double acc = a[0] * arr[i];
      for (int k = 1; k <= K; ++k) acc += a[k] * (arr[i + k] + arr[i - k]);
      out[i] = acc;
    }
  };

  // Source tables for the kernel-side trapezoid convolution.
  std::vector<double> src(static_cast<size_t>(J + 1) * K);
  for (long j = 0; j <= J; ++j)
    for (int m = 0; m < K; ++m) src[j * K + m] = F[m](j * dt);

  double worst = 0.0;
  std::vector<double> conv(K);
  for (long j = 0; j < J; ++j) {
    for (int step = 0; step < sub; ++step) {
      const double t = j * dt + step * h;
      fill_layer(u, t);
      accel(u, k1);
      yu = u;
      for (long i = K; i <= base; ++i) yu[i] = u[i] + 0.5 * h * v[i];
      fill_layer(yu, t + 0.5 * h);
      accel(yu, k2);
      for (long i = K; i <= base; ++i) yu[i] = u[i] + 0.5 * h * (v[i] + 0.5 * h * k1[i]);
      fill_layer(yu, t + 0.5 * h);
      accel(yu, k3);
      for (long i = K; i <= base; ++i) yu[i] = u[i] + h * (v[i] + 0.5 * h * k2[i]);
      fill_layer(yu, t + h);
      accel(yu, k4);
      for (long i = K; i <= base; ++i) {
        u[i] += h * (v[i] + (h / 6.0) * (k1[i] + k2[i] + k3[i]));
        v[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
    }
    const long jn = j + 1;
    // conv[p] = dt * sum_{alpha=1}^{jn-1} F_kernel[alpha](p,:) . src(t_{jn-alpha});
    // both trapezoid endpoint terms vanish (f^{m,0} = 0, src(0) = 0).
    for (int p = 0; p < K; ++p) conv[p] = 0.0;
    for (long alpha = 1; alpha < jn; ++alpha) {
      const double* col = kt.column(alpha);
      const double* sj = src.data() + (jn - alpha) * K;
      for (int p = 0; p < K; ++p) {
        double acc = 0.0;
        for (int m = 0; m < K; ++m) acc += col[p * K + m] * sj[m];
        conv[p] += acc;
      }
    }
    for (int p = 0; p < K; ++p) {
      const double diff = std::abs(u[base - p] - dt * conv[p]);
      worst = std::max(worst, diff);
    }
  }
  return worst;
}

}  // namespace pdabc
