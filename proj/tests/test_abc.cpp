#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pdabc/abc.hpp"

using namespace pdabc;

namespace {

KernelTable small_kernels() { return solve_f(integrate_g(direct_stencil({-6.0, 4.0, -1.0}), 0.02, 2.0)); }

BoundaryHistory filled_history(Side side, int K, long j_top) {
  std::vector<double> layer(K);
  for (int m = 1; m <= K; ++m) layer[m - 1] = std::sin(0.7 * m);
  BoundaryHistory h = make_history(side, K, layer.data());
  for (long j = 1; j <= j_top; ++j) {
    for (int m = 1; m <= K; ++m) layer[m - 1] = std::sin(0.3 * j + m);
    push_history(h, layer.data(), j);
  }
  return h;
}

}  // namespace

TEST_CASE("history sequencing") {
  const double layer0[2] = {0.25, -0.5};
  BoundaryHistory h = make_history(Side::left, 2, layer0);
  CHECK(h.j_now == 0);
  CHECK(h.row(0)[0] == 0.25);

  const double layer1[2] = {0.5, 0.125};
  push_history(h, layer1, 1);
  CHECK(h.j_now == 1);
  CHECK_THROWS_AS(push_history(h, layer1, 1), std::logic_error);
  CHECK_THROWS_AS(push_history(h, layer1, 3), std::logic_error);
}

TEST_CASE("trapezoid convolution matches a direct evaluation") {
  const auto kt = small_kernels();
  const int K = kt.K;
  const long j_top = 41;
  const auto h = filled_history(Side::left, K, j_top);
  const auto ghosts = ghost_values(kt, h);
  REQUIRE(ghosts.size() == static_cast<size_t>(K));

  for (int p = 0; p < K; ++p) {
    double acc = 0.0;
    for (long alpha = 1; alpha < j_top; ++alpha)
      for (int m = 1; m <= K; ++m)
        acc += kt.at(m, -p, alpha) * h.row(j_top - alpha)[m - 1];
    acc *= kt.dt;
    for (int m = 1; m <= K; ++m) acc += 0.5 * kt.dt * kt.at(m, -p, j_top) * h.row(0)[m - 1];
    CHECK(ghosts[p] == doctest::Approx(acc).epsilon(1e-13));
  }
}

TEST_CASE("ghosts never read the current step") {
  const auto kt = small_kernels();
  auto h = filled_history(Side::left, kt.K, 30);
  const auto base = ghost_values(kt, h);
  for (int m = 0; m < kt.K; ++m) h.h[30 * kt.K + m] += 17.0;   // corrupt the newest row
  const auto bumped = ghost_values(kt, h);
  for (int p = 0; p < kt.K; ++p) CHECK(bumped[p] == base[p]);
}

TEST_CASE("zero history gives zero ghosts, scaling is exact") {
  const auto kt = small_kernels();
  const std::vector<double> z(kt.K, 0.0);
  BoundaryHistory h = make_history(Side::left, kt.K, z.data());
  for (long j = 1; j <= 25; ++j) push_history(h, z.data(), j);
  for (double g : ghost_values(kt, h)) CHECK(g == 0.0);

  auto a = filled_history(Side::left, kt.K, 25);
  auto b = a;
  for (double& v : b.h) v *= 2.0;   // power-of-two scaling commutes exactly
  const auto ga = ghost_values(kt, a);
  const auto gb = ghost_values(kt, b);
  for (int p = 0; p < kt.K; ++p) CHECK(gb[p] == 2.0 * ga[p]);
}

TEST_CASE("sides with identical histories produce identical ghosts") {
  const auto kt = small_kernels();
  const auto hl = filled_history(Side::left, kt.K, 33);
  const auto hr = filled_history(Side::right, kt.K, 33);
  const auto gl = ghost_values(kt, hl);
  const auto gr = ghost_values(kt, hr);
  for (int p = 0; p < kt.K; ++p) CHECK(gl[p] == gr[p]);

  std::vector<double> pl(kt.K), pr(kt.K);
  ghost_values_pair(kt, hl, hr, pl.data(), pr.data());
  for (int p = 0; p < kt.K; ++p) {
    CHECK(pl[p] == gl[p]);
    CHECK(pr[p] == gr[p]);
  }
}

TEST_CASE("configuration mismatches are rejected") {
  const auto kt = small_kernels();
  const std::vector<double> z(5, 0.0);
  BoundaryHistory wrongK = make_history(Side::left, 5, z.data());
  CHECK_THROWS_AS((void)ghost_values(kt, wrongK), std::invalid_argument);

  auto past_end = filled_history(Side::left, kt.K, kt.steps);
  const std::vector<double> layer(kt.K, 0.0);
  push_history(past_end, layer.data(), kt.steps + 1);
  CHECK_THROWS_AS((void)ghost_values(kt, past_end), std::invalid_argument);
}
