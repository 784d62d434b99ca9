#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "residua/cone/bdensity.hpp"

using residua::cplx;
using residua::pi;
namespace circ = residua::circle;
namespace cone = residua::cone;

namespace {

circ::TrigPolynomial random_trig(int degree, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  circ::TrigPolynomial p(degree);
  for (int n = -degree; n <= degree; ++n) p.set_coeff(n, scale * cplx(u(rng), u(rng)));
  return p;
}

// a smooth x-modulated remainder vanishing to the declared order at r = 0
cone::RemainderGrid smooth_remainder(int vanishing_order, int nodes, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double amp = u(rng);
  cone::RemainderGrid grid;
  grid.x_points = 32;
  grid.vanishing_order = vanishing_order;
  grid.r_nodes.resize(static_cast<std::size_t>(nodes));
  grid.values.resize(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    const double r = static_cast<double>(i + 1) / nodes;
    grid.r_nodes[static_cast<std::size_t>(i)] = r;
    grid.values[static_cast<std::size_t>(i)].resize(32);
    for (int j = 0; j < 32; ++j) {
      const double x = 2.0 * pi * j / 32;
      grid.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          amp * std::pow(r, vanishing_order) * (1.0 + 0.5 * std::cos(x));
    }
  }
  return grid;
}

cone::BDensity worked_example() {
  // r^{-2} (1 + r + r^2 (3 + cos x)) (dr/r) dx
  auto cosx = circ::TrigPolynomial::mode(1, 0.5) + circ::TrigPolynomial::mode(-1, 0.5);
  std::vector<circ::TrigPolynomial> w = {circ::TrigPolynomial::constant(1.0),
                                         circ::TrigPolynomial::constant(1.0),
                                         circ::TrigPolynomial::constant(3.0) + cosx};
  return cone::BDensity(2, std::move(w));
}

}  // namespace

TEST_CASE("worked residue value six pi") {
  auto u = worked_example();
  auto res_b = cone::b_regularize(u, cone::BRegularizeMode::residue_only);
  CHECK(std::abs(res_b.coeff(-1) - cplx(6.0 * pi)) < 1e-10);
  auto res_a = cone::b_regularize(u, cone::BRegularizeMode::laurent_window);
  CHECK(std::abs(res_a.coeff(-1) - cplx(6.0 * pi)) < 1e-10);
  // simple poles only
  CHECK(res_a.pole_order(1e-9) <= 1);
}

TEST_CASE("smooth density and vanishing density") {
  cone::BDensity smooth(0, {circ::TrigPolynomial::constant(1.0)});
  CHECK(std::abs(cone::b_regularize(smooth, cone::BRegularizeMode::residue_only).coeff(-1) -
                 cplx(2.0 * pi)) < 1e-12);

  std::mt19937_64 rng(81);
  cone::BDensity flat(0, {circ::TrigPolynomial()}, smooth_remainder(3, 257, rng));
  auto w = cone::b_regularize(flat, cone::BRegularizeMode::laurent_window);
  CHECK(std::abs(w.coeff(-1)) < 1e-9);
  CHECK(w.pole_order(1e-8) == 0);
}

TEST_CASE("two-path residue agreement on random densities") {
  std::mt19937_64 rng(82);
  std::uniform_int_distribution<int> pd(0, 4), extra(0, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const int p = pd(rng);
    const int K = p + extra(rng);
    std::vector<circ::TrigPolynomial> w;
    for (int k = 0; k <= K; ++k) w.push_back(random_trig(3, rng));
    std::optional<cone::RemainderGrid> rem;
    if (trial % 2 == 0) rem = smooth_remainder(K + 1, 257, rng);
    cone::BDensity u(p, std::move(w), std::move(rem));
    const cplx path_a =
        cone::b_regularize(u, cone::BRegularizeMode::laurent_window).coeff(-1);
    const cplx path_b =
        cone::b_regularize(u, cone::BRegularizeMode::residue_only).coeff(-1);
    CHECK(std::abs(path_a - path_b) <= 1e-8);
  }
}

TEST_CASE("depth below the leading order is rejected") {
  cone::BDensity shallow(2, {circ::TrigPolynomial::constant(1.0)});
  CHECK_THROWS_AS(cone::b_regularize(shallow, cone::BRegularizeMode::residue_only),
                  residua::invalid_input);
}

TEST_CASE("boundary residue trace functional") {
  auto cosx = circ::TrigPolynomial::mode(1, 0.5) + circ::TrigPolynomial::mode(-1, 0.5);
  // w_p = 3 + cos x at p = 2
  cone::WodzickiDensitySpec omega{worked_example()};
  CHECK(std::abs(cone::tr_partial_sigma(omega) - cplx(6.0 * pi)) < 1e-12);

  // mean-zero w_p
  cone::WodzickiDensitySpec zero_mean{
      cone::BDensity(1, {circ::TrigPolynomial::constant(2.0), cosx})};
  CHECK(std::abs(cone::tr_partial_sigma(zero_mean)) < 1e-13);

  // p-shifted copy: only w_{p+1} nonzero
  cone::WodzickiDensitySpec shifted{
      cone::BDensity(1, {circ::TrigPolynomial(), circ::TrigPolynomial(),
                         circ::TrigPolynomial::constant(5.0)})};
  CHECK(std::abs(cone::tr_partial_sigma(shifted)) < 1e-13);
}

TEST_CASE("finite part trace functional") {
  // p = 1, w_0 = 1, w_1 = 0: the k = 0 term is 2 pi/(z-1), so Pf = -2 pi
  cone::WodzickiDensitySpec omega{
      cone::BDensity(1, {circ::TrigPolynomial::constant(1.0), circ::TrigPolynomial()})};
  CHECK(std::abs(cone::tr_sigma(omega) - cplx(-2.0 * pi)) < 1e-9);

  // a pure pole term has no constant part
  cone::WodzickiDensitySpec pure{
      cone::BDensity(1, {circ::TrigPolynomial(), circ::TrigPolynomial::constant(3.0)})};
  CHECK(std::abs(cone::tr_sigma(pure)) < 1e-9);

  // linearity
  std::mt19937_64 rng(83);
  std::vector<circ::TrigPolynomial> w1, w2;
  for (int k = 0; k <= 2; ++k) {
    w1.push_back(random_trig(2, rng));
    w2.push_back(random_trig(2, rng));
  }
  cone::BDensity d1(1, w1), d2(1, w2);
  const cplx lhs = cone::tr_sigma({d1 + d2});
  const cplx rhs = cone::tr_sigma({d1}) + cone::tr_sigma({d2});
  CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("boundary trace on the finite-part layer") {
  cone::BDensity pf_layer(1, {circ::TrigPolynomial(), circ::TrigPolynomial::constant(1.0)});
  CHECK(cone::tr_partial(pf_layer, 1.5) == cplx(0.0));  // non-integer weight
  CHECK(std::abs(cone::tr_partial(pf_layer, 1.0) - cplx(2.0 * pi)) < 1e-13);
  cone::BDensity zero_layer(1, {circ::TrigPolynomial(), circ::TrigPolynomial()});
  CHECK(cone::tr_partial(zero_layer, 1.0) == cplx(0.0));
}

TEST_CASE("the trace defect of tr_sigma is measured by tr_partial_sigma") {
  // rescaling the boundary defining function r -> c r multiplies the
  // regularized integral by c^z; the finite part shifts by log(c) times the
  // residue while the residue itself is invariant
  std::mt19937_64 rng(84);
  for (double c : {0.5, 2.0, 3.7}) {
    std::vector<circ::TrigPolynomial> w;
    for (int k = 0; k <= 3; ++k) w.push_back(random_trig(2, rng));
    cone::BDensity u(2, w);
    const auto window = cone::b_regularize(u, cone::BRegularizeMode::laurent_window);
    // Pf of c^z F(z) assembled from the window
    cplx shifted_pf = 0.0;
    double fact = 1.0;
    for (int m = 0; m <= 3; ++m) {
      if (m > 0) fact *= m;
      shifted_pf += std::pow(std::log(c), m) / fact * window.coeff(-m);
    }
    const cplx expected =
        cone::tr_sigma({u}) + std::log(c) * cone::tr_partial_sigma({u});
    CHECK(std::abs(shifted_pf - expected) < 1e-8);
  }
}
